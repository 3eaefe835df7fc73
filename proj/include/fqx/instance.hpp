#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fqx/algebra.hpp"

namespace fqx::instance {

using RatMatrix = linalg::MatrixOf<RatField>;

// M_n(F_q(x)) on the matrix units E_{rc}, basis index r * n + c.
StructureAlgebra matrix_units(const ff::Field& f, std::size_t n);

// The algebra M_n(F_q(x)) on the basis f_k = sum_l q(l, k) E_l. q must be
// invertible over F_q(x).
StructureAlgebra change_of_basis(const ff::Field& f, std::size_t n, const RatMatrix& q);

// m x m matrix over F_q[x] with entry degrees <= max_deg, invertible over
// F_q(x). Deterministic in seed; throws DegenerateSeed after 100 singular
// draws.
RatMatrix random_invertible(const ff::Field& f, std::size_t m, unsigned max_deg, std::uint64_t seed);

// n x n image of each f_k under the isomorphism defined by q.
std::vector<RatMatrix> images(const RatField& k, std::size_t n, const RatMatrix& q);

// Image of an element given in f-coordinates.
RatMatrix image_of(const RatField& k, const std::vector<RatMatrix>& imgs, const AlgElem& a);

}  // namespace fqx::instance
