#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "fqx/linalg.hpp"
#include "fqx/poly.hpp"

namespace fqx {

// Coordinates in the ambient basis a_1..a_m.
using AlgElem = std::vector<RatFunc>;

// An m-dimensional algebra over F_q(x) given by a_i a_j = sum_k gamma_ijk a_k.
// m must be a perfect square n^2. Immutable after construction.
class StructureAlgebra {
 public:
  // gamma is indexed (i * m + j) * m + k. Throws ValidationError when m is
  // not a positive perfect square or the array has the wrong size.
  static StructureAlgebra make(ff::Field f, std::size_t m, std::vector<RatFunc> gamma);

  const RatField& field() const { return k_; }
  std::size_t dim() const { return m_; }
  std::size_t n() const { return n_; }
  // n = p^r * k with p not dividing k.
  unsigned p_exponent() const { return r_; }
  std::uint64_t p_cofactor() const { return cof_; }

  const RatFunc& gamma(std::size_t i, std::size_t j, std::size_t k) const { return gamma_[(i * m_ + j) * m_ + k]; }
  const std::vector<RatFunc>& gamma() const { return gamma_; }

  AlgElem zero() const { return AlgElem(m_, k_.zero()); }
  AlgElem basis(std::size_t i) const;
  AlgElem add(const AlgElem& a, const AlgElem& b) const;
  AlgElem sub(const AlgElem& a, const AlgElem& b) const;
  AlgElem scale(const AlgElem& a, const RatFunc& s) const;
  AlgElem mul(const AlgElem& a, const AlgElem& b) const;
  bool is_zero(const AlgElem& a) const;
  bool equal(const AlgElem& a, const AlgElem& b) const;

  // (a_i a_j) a_l == a_i (a_j a_l) for every basis triple.
  bool is_associative() const;

 private:
  StructureAlgebra(RatField k, std::size_t m, std::vector<RatFunc> gamma);

  RatField k_;
  std::size_t m_, n_;
  unsigned r_ = 0;
  std::uint64_t cof_ = 1;
  std::vector<RatFunc> gamma_;
  // nonzero (k, gamma_ijk) per pair (i, j)
  std::vector<std::vector<std::pair<std::size_t, RatFunc>>> sparse_;
};

// Throws NotUnital.
AlgElem find_identity(const StructureAlgebra& a);

// Matrix of b -> x b.
linalg::MatrixOf<RatField> regular_representation(const StructureAlgebra& a, const AlgElem& x);

// Throws RootFailure when the p | n route meets a non-p^r-th power.
RatFunc reduced_trace(const StructureAlgebra& a, const AlgElem& x);

// Reduced traces of the basis elements; tr is linear, so tr(x) = sum x_i t_i.
std::vector<RatFunc> trace_functional(const StructureAlgebra& a);

// det(tr b_i b_j), scaled so that its numerator is monic. Throws
// DegenerateBasis.
RatFunc discriminant(const StructureAlgebra& a, const std::vector<AlgElem>& basis);

// dim(x A) / n. Throws PromiseViolation when n does not divide dim(x A).
std::size_t rank(const StructureAlgebra& a, const AlgElem& x);

// Monic minimal polynomial of the left multiplication by x, ascending.
std::vector<RatFunc> min_poly(const StructureAlgebra& a, const AlgElem& x);

// The same algebra with every structure constant rewritten in y = 1/x.
StructureAlgebra flip(const StructureAlgebra& a);

}  // namespace fqx
