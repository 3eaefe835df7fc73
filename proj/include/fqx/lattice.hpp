#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fqx/linalg.hpp"
#include "fqx/poly.hpp"

namespace fqx::lattice {

using Vec = std::vector<RatFunc>;

// Column vectors in F_q(x)^m. A basis has exactly m independent vectors; a
// generating set may have more.
struct LatticeBasis {
  std::size_t m = 0;
  std::vector<Vec> vectors;
};

struct ReductionCertificate {
  int od_before = 0;
  int od_after = 0;
  // new basis = old basis * transform; entries in F_q[x], det in F_q^*.
  linalg::Matrix<Poly> transform;
};

// max of the coordinate valuations; kNegInf for the zero vector.
int vector_valuation(const Vec& v);

// sum |b_i| - |det B|. Throws Dependent.
int orthogonality_defect(const RatField& k, const LatticeBasis& b);

// Reduced basis (OD 0) of the same lattice. Denominators are cleared by
// their lcm, the polynomial lattice is reduced by leading-coefficient
// elimination, and the result is scaled back. Throws Dependent.
std::pair<LatticeBasis, ReductionCertificate> reduce_basis(const RatField& k, const LatticeBasis& b);

// Reduced basis of the F_q[x]-module spanned by a generating set; zero
// vectors are dropped and no valuation ever increases. Throws NotFullRank.
// When transform is given it receives the gens.size() x m polynomial matrix
// U with new_j = sum_i U(i, j) gens_i.
LatticeBasis reduce_generators(const RatField& k, const LatticeBasis& gens,
                               linalg::Matrix<Poly>* transform = nullptr);

// F_q-basis { x^j c_i : j >= 0, j + |c_i| <= bound } of the lattice elements
// of valuation <= bound. Throws NotReduced when OD > 0.
std::vector<Vec> bounded_elements(const RatField& k, const LatticeBasis& reduced, int bound);

// Coordinates of v in the basis (over F_q(x)), or empty when v is outside the
// span.
std::optional<Vec> coordinates(const RatField& k, const LatticeBasis& b, const Vec& v);
bool contains(const RatField& k, const LatticeBasis& b, const Vec& v);

}  // namespace fqx::lattice
