#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fqx/algebra.hpp"
#include "fqx/finalg.hpp"
#include "fqx/linalg.hpp"
#include "fqx/poly.hpp"

namespace fqx::order {

enum class Ring { FqX, FqInvX };

// An F_q[x]-order (or almost order) given by a basis b_1..b_m together with
// its own multiplication table b_i b_j = sum_k c_ijk b_k and the reduced
// traces of the b_i, both polynomial. Every computation after the initial
// almost order works in these coordinates.
//
// For ring FqInvX the table, traces and discriminant are polynomials in
// y = 1/x while `basis` holds coordinates in the input algebra over x.
struct OrderRep {
  Ring ring = Ring::FqX;
  std::vector<AlgElem> basis;
  Poly disc;  // monic
  Poly d0;    // discriminant of the almost order of the run
  std::vector<Poly> table;   // (i * m + j) * m + k
  std::vector<Poly> traces;  // tr(b_i)
  // Columns: the b_i in coordinates of the almost order basis.
  linalg::Matrix<RatFunc> l0_coords;
  // deg disc after the unital closure and after each enlargement
  std::vector<int> disc_degrees;
  int steps = 0;

  std::size_t dim() const { return traces.size(); }
  const Poly& c(std::size_t i, std::size_t j, std::size_t k) const { return table[(i * dim() + j) * dim() + k]; }
};

// A left Λ-module I with hΛ ⊆ I ⊆ Λ for some nonzero h, given by generators
// in Λ-coordinates.
struct IdealRep {
  std::vector<std::vector<Poly>> generators;
};

// δ a_i with δ the lcm of all structure-constant denominators. Throws
// PromiseViolation when the trace form is degenerate.
OrderRep almost_order(const StructureAlgebra& a);

// The order with the given basis (coordinates in a over x). For FqInvX the
// table is computed in y = 1/x. Throws ValidationError when the span is not
// closed under multiplication or traces are not integral.
OrderRep from_basis(const StructureAlgebra& a, const std::vector<AlgElem>& basis, Ring ring);

// The lattice generated by Λ and 1. Throws NotUnital.
OrderRep unital_closure(const RatField& k, const OrderRep& l);

// The order generated by Λ and the given elements (Λ-coordinates), on a
// reduced basis. The elements must generate a ring together with Λ.
OrderRep extend(const RatField& k, const OrderRep& l, const std::vector<std::vector<RatFunc>>& extra);

// O_l(I) = {a : aI ⊆ I}. With h minimal such that hΛ ⊆ I this is
// Λ + (1/h){λ ∈ Λ : λI ⊆ hI}, found as an F_q-kernel on Λ/hΛ.
OrderRep left_order(const RatField& k, const OrderRep& l, const IdealRep& i);

// Λ/gΛ over F_q[x]/(g).
finalg::FiniteAlgebra reduce_mod(const OrderRep& l, const finalg::ResidueField& k);

struct EnlargeResult {
  bool enlarged = false;
  OrderRep order;
};

// Radical test, then the minimal-ideal test at the prime g.
EnlargeResult enlarge_at_prime(const RatField& k, const OrderRep& l, const Poly& g, std::uint64_t seed);

OrderRep maximal_order_fqx(const StructureAlgebra& a, std::uint64_t seed);

// Maximal at the prime 1/x; only that prime is processed.
OrderRep maximal_order_infinity(const StructureAlgebra& a, std::uint64_t seed);

// Degree data of the input: max numerator degree, max denominator degree,
// and d_C = max of both, at least 1.
struct InputDegrees {
  int d_n = 0, d_d = 0, d_c = 1;
};
InputDegrees input_degrees(const StructureAlgebra& a);

// max over basis coordinates of max(deg num, deg den).
int basis_coefficient_degree(const OrderRep& l);

}  // namespace fqx::order
