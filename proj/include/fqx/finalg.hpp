#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "fqx/linalg.hpp"
#include "fqx/poly.hpp"

namespace fqx::finalg {

// The field F_q[x]/(g) for a monic irreducible g over F_q. Elements are
// residues of degree < deg g. The default constructor argument g = x gives
// F_q itself, with elements stored as constant polynomials.
class ResidueField {
 public:
  using Elem = Poly;

  explicit ResidueField(ff::Field f);
  // g is trusted to be monic irreducible (it comes from factoring).
  ResidueField(ff::Field f, Poly g);

  const ff::Field& base() const { return ring_.field(); }
  const PolyRing& ring() const { return ring_; }
  const Poly& modulus() const { return g_; }
  unsigned degree() const { return static_cast<unsigned>(g_.degree()); }
  // log_p of the field size
  unsigned absolute_degree() const { return degree() * base().degree(); }
  std::uint32_t characteristic() const { return base().characteristic(); }

  Poly zero() const { return {}; }
  Poly one() const { return Poly{{1}}; }
  bool is_zero(const Poly& a) const { return a.is_zero(); }
  bool equal(const Poly& a, const Poly& b) const { return a == b; }
  Poly add(const Poly& a, const Poly& b) const { return ring_.add(a, b); }
  Poly sub(const Poly& a, const Poly& b) const { return ring_.sub(a, b); }
  Poly neg(const Poly& a) const { return ring_.neg(a); }
  Poly mul(const Poly& a, const Poly& b) const;
  Poly inv(const Poly& a) const;
  Poly pow(Poly a, std::uint64_t k) const;
  int cost(const Poly&) const { return 0; }

  Poly from_base(ff::Elem c) const { return ring_.constant(c); }
  Poly frobenius(const Poly& a) const { return pow(a, characteristic()); }
  Poly pth_root(Poly a) const;
  Poly random(std::mt19937_64& rng) const;

 private:
  PolyRing ring_;
  Poly g_;
};

using FElem = std::vector<Poly>;
using KMatrix = linalg::MatrixOf<ResidueField>;

// dim-dimensional associative algebra over k with b_i b_j = sum_t gamma_ijt b_t.
struct FiniteAlgebra {
  ResidueField k;
  std::size_t dim = 0;
  std::vector<Poly> gamma;  // (i * dim + j) * dim + t

  const Poly& g(std::size_t i, std::size_t j, std::size_t t) const { return gamma[(i * dim + j) * dim + t]; }

  FElem zero() const { return FElem(dim); }
  FElem basis(std::size_t i) const;
  FElem add(const FElem& a, const FElem& b) const;
  FElem sub(const FElem& a, const FElem& b) const;
  FElem scale(const FElem& a, const Poly& s) const;
  FElem mul(const FElem& a, const FElem& b) const;
  FElem pow(FElem a, std::uint64_t e, const FElem& one) const;
  bool is_zero(const FElem& a) const;
};

std::optional<FElem> identity(const FiniteAlgebra& b);
// Matrix of y -> x y.
KMatrix left_matrix(const FiniteAlgebra& b, const FElem& x);
bool is_commutative(const FiniteAlgebra& b);
bool is_associative(const FiniteAlgebra& b);

// Basis of the largest nilpotent two-sided ideal. Computed with the chain of
// p-power trace conditions on the regular representation (of the unitization
// when b has no identity), the traces being evaluated in a Galois ring lift
// of k.
std::vector<FElem> radical(const FiniteAlgebra& b);

struct Quotient {
  FiniteAlgebra alg;
  std::vector<FElem> lift;  // preimage in b of each quotient basis vector
  KMatrix proj;             // quotient coordinates of b coordinates
};
// b / span(ideal); the span must be a two-sided ideal.
Quotient quotient(const FiniteAlgebra& b, const std::vector<FElem>& ideal);
FElem project(const Quotient& q, const FElem& a);
FElem lift(const Quotient& q, const FElem& a);

struct Subalgebra {
  FiniteAlgebra alg;
  std::vector<FElem> embed;  // images of the subalgebra basis in b
};
// The subalgebra with basis `basis` (must be closed under multiplication).
Subalgebra subalgebra(const FiniteAlgebra& b, const std::vector<FElem>& basis);
// Basis of the subalgebra generated by gens (no identity added).
std::vector<FElem> generated(const FiniteAlgebra& b, const std::vector<FElem>& gens);

std::vector<FElem> center(const FiniteAlgebra& b);

// The same algebra over F_q; coordinate i * deg(g) + j of the result is the
// coefficient of x^j in coordinate i.
FiniteAlgebra restrict_scalars(const FiniteAlgebra& b);
FElem to_base_coords(const FiniteAlgebra& b, const FElem& a);
FElem from_base_coords(const FiniteAlgebra& b, const FElem& a_base);

// Primitive idempotents of a commutative subalgebra of b (basis s, identity
// eps) when b is over F_q.
std::vector<FElem> commutative_idempotents(const FiniteAlgebra& b, const std::vector<FElem>& s, const FElem& eps,
                                           std::mt19937_64& rng);

// Primitive central idempotents of a semisimple unital algebra.
std::vector<FElem> central_idempotents(const FiniteAlgebra& b, std::uint64_t seed);

// Complete orthogonal system of primitive idempotents of a semisimple unital
// algebra, grouped by simple component.
std::vector<std::vector<FElem>> primitive_idempotents_by_component(const FiniteAlgebra& b, std::uint64_t seed);
std::vector<FElem> primitive_idempotent_system(const FiniteAlgebra& b, std::uint64_t seed);

// An idempotent e with e = target mod span(rad). Throws
// NotIdempotentModRadical when target^2 - target is not in the span.
FElem lift_idempotent(const FiniteAlgebra& c, const std::vector<FElem>& rad, const FElem& target);

// Basis of a subalgebra B with C = B + Rad(C) direct.
std::vector<FElem> wm_complement(const FiniteAlgebra& c, std::uint64_t seed);

}  // namespace fqx::finalg
