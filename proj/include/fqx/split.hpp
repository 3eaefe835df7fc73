#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fqx/algebra.hpp"
#include "fqx/finalg.hpp"
#include "fqx/instance.hpp"
#include "fqx/order.hpp"

namespace fqx::split {

struct IntersectionReport {
  // F_q-basis of C = Λ ∩ Δ, as algebra elements and in Λ-coordinates.
  std::vector<AlgElem> c_basis;
  std::vector<std::vector<Poly>> c_lambda_coords;
  // d_j = min d with x^{-d} b_j in Δ, for the Λ-basis b_j
  std::vector<int> d_values;
  int d_min = 0, d_max = 0;
  // reduced basis of Λ in Δ-coordinates
  std::vector<std::vector<RatFunc>> reduced_c;
  // C with its structure constants over F_q
  finalg::FiniteAlgebra c;
};

IntersectionReport intersect_orders(const StructureAlgebra& a, const order::OrderRep& lambda,
                                    const order::OrderRep& delta);

// An idempotent of rank 1 taken from a primitive idempotent system of a
// Wedderburn-Malcev complement of C. Throws NotSplit.
AlgElem select_rank_one(const StructureAlgebra& a, const IntersectionReport& c, std::uint64_t seed);

struct Isomorphism {
  std::size_t n = 0;
  std::vector<instance::RatMatrix> images;  // of the ambient basis
  std::vector<AlgElem> left_ideal_basis;
  bool verified = false;
};

// Empty when images (of the ambient basis, n x n each) define an injective
// unital homomorphism A -> M_n(F_q(x)); otherwise the first failed check.
std::string isomorphism_defect(const StructureAlgebra& a, const std::vector<instance::RatMatrix>& images);

// Left multiplication on Ae. Throws BadIdempotent when dim Ae != n and
// VerificationFailure when any of the m^2 product checks, phi(1) = I or the
// independence check fails.
Isomorphism explicit_isomorphism(const StructureAlgebra& a, const AlgElem& e);

struct SplitResult {
  AlgElem idempotent;
  Isomorphism iso;
  IntersectionReport report;
  order::OrderRep lambda, delta;
};

SplitResult split_pipeline(const StructureAlgebra& a, std::uint64_t seed);

}  // namespace fqx::split
