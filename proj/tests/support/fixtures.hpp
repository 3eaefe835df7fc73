#pragma once

// Hand-built algebras and orders with known answers.

#include <vector>

#include "fqx/algebra.hpp"
#include "fqx/instance.hpp"
#include "fqx/order.hpp"

namespace fqx::testing {

struct SkewedFixture {
  StructureAlgebra a;
  order::OrderRep lambda, delta;
};

// In M_2 on matrix units: Λ = span{e11, x^2 e12, x^-2 e21, e22} over F_q[x]
// (a conjugate of M_2(F_q[x]) by diag(1/x, x)) and Δ = M_2(R).
inline SkewedFixture skewed_fixture(const ff::Field& F) {
  auto a = instance::matrix_units(F, 2);
  const auto& K = a.field();
  std::vector<AlgElem> lam{a.basis(0), a.scale(a.basis(1), K.pow(K.x(), 2)), a.scale(a.basis(2), K.pow(K.x(), -2)),
                           a.basis(3)};
  std::vector<AlgElem> del{a.basis(0), a.basis(1), a.basis(2), a.basis(3)};
  auto l = order::from_basis(a, lam, order::Ring::FqX);
  auto d = order::from_basis(a, del, order::Ring::FqInvX);
  return {a, l, d};
}

// 1, i, j, k with i^2 = u, j^2 = v, ij = -ji = k.
inline StructureAlgebra quaternions(const ff::Field& F, const RatFunc& u, const RatFunc& v) {
  RatField K(F);
  std::vector<RatFunc> g(64, K.zero());
  auto set = [&](int a, int b, int t, RatFunc val) { g[(a * 4 + b) * 4 + t] = std::move(val); };
  for (int a = 0; a < 4; ++a) {
    set(0, a, a, K.one());
    set(a, 0, a, K.one());
  }
  set(1, 1, 0, u);
  set(2, 2, 0, v);
  set(3, 3, 0, K.neg(K.mul(u, v)));
  set(1, 2, 3, K.one());
  set(2, 1, 3, K.neg(K.one()));
  set(1, 3, 2, u);
  set(3, 1, 2, K.neg(u));
  set(3, 2, 1, v);
  set(2, 3, 1, K.neg(v));
  return StructureAlgebra::make(F, 4, g);
}

// i^2 = x, j^2 = 2 over F_3(x): ramified at x since 2 is not a square mod 3.
inline StructureAlgebra nonsplit_quaternions() {
  auto F = ff::Field::make(3);
  RatField K(F);
  return quaternions(F, K.x(), K.constant(2));
}

}  // namespace fqx::testing
