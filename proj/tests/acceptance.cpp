// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
//
//   acceptance            all criteria
//   acceptance 1 5 8      a subset
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fqx/errors.hpp"
#include "fqx/lattice.hpp"
#include "fqx/order.hpp"
#include "fqx/split.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace fqx;
using namespace fqx::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects the first few failure messages of one criterion.
struct Verdict {
  int failures = 0;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    if (failures++ < 5) notes.push_back(why);
  }
  void require(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

std::string tag(std::uint32_t p, unsigned e, std::size_t n, std::uint64_t seed) {
  std::ostringstream s;
  s << "q=" << p << "^" << e << " n=" << n << " seed=" << seed;
  return s.str();
}

// Criterion 4 on one run.
void check_degree_bounds(Verdict& v, const std::string& where, const StructureAlgebra& a,
                         const order::OrderRep& lambda, const order::OrderRep& delta,
                         const split::IntersectionReport& rep) {
  const long n = static_cast<long>(a.n());
  const long n2 = n * n, n6 = n2 * n2 * n2, n8 = n6 * n2;
  const auto deg = order::input_degrees(a);
  const long d0 = order::almost_order(a).disc.degree();
  v.require(d0 <= 2 * n8 * deg.d_d + 2 * n2 * deg.d_n, where + ": deg D0 = " + std::to_string(d0));
  const long basis_bound = (2 * n8 + n6 + 2 * n2) * deg.d_c;
  v.require(order::basis_coefficient_degree(lambda) <= basis_bound, where + ": Λ basis degree");
  v.require(order::basis_coefficient_degree(delta) <= basis_bound, where + ": Δ basis degree");
  v.require(rep.d_max <= (2 * n8 + 2 * n6 + 2 * n2) * deg.d_c, where + ": d_max");
  v.require(rep.d_min >= -2 * basis_bound, where + ": d_min");
  const long c_bound = n2 * rep.d_max - rep.d_min;
  for (const auto& coords : rep.c_lambda_coords)
    for (const auto& c : coords)
      v.require(c.degree() <= c_bound, where + ": C coefficient degree " + std::to_string(c.degree()));
}

std::vector<Verdict> degree_runs;  // criterion 4, filled by 1 and 2

Verdict criterion1() {
  Verdict v;
  Verdict deg;
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto t0 = Clock::now();
    const std::string where = "q=" + std::to_string(p);
    auto F = ff::Field::make(p);
    auto fx = skewed_fixture(F);
    const auto& K = fx.a.field();
    auto rep = split::intersect_orders(fx.a, fx.lambda, fx.delta);
    v.require(rep.c.dim == 5, where + ": dim C = " + std::to_string(rep.c.dim));
    auto rad = finalg::radical(rep.c);
    v.require(rad.size() == 3, where + ": dim Rad = " + std::to_string(rad.size()));
    // Rad is the zero-diagonal part of C: embed both in A and compare spans
    // over F_q through their coefficients in 1, 1/x, 1/x^2, ...
    linalg::EchelonSpan<ff::Field> got(F, 4 * 8), want(F, 4 * 8);
    auto encode = [&](const AlgElem& x) {
      std::vector<ff::Elem> out(4 * 8, 0);
      for (std::size_t t = 0; t < 4; ++t) {
        auto y = flip_variable(K, x[t]);
        if (!y.den.is_one() || y.num.degree() >= 8) return std::vector<ff::Elem>{};
        std::copy(y.num.c.begin(), y.num.c.end(), out.begin() + t * 8);
      }
      return out;
    };
    bool encodable = true;
    for (const auto& r : rad) {
      AlgElem e = fx.a.zero();
      for (std::size_t i = 0; i < r.size(); ++i)
        if (!r[i].is_zero()) e = fx.a.add(e, fx.a.scale(rep.c_basis[i], K.from_poly(r[i])));
      auto c = encode(e);
      if (c.empty()) encodable = false;
      else got.insert(c);
    }
    for (const auto& c : rep.c_basis) {
      AlgElem off = fx.a.zero();
      off[1] = c[1];
      off[2] = c[2];
      auto enc = encode(off);
      if (enc.empty()) encodable = false;
      else want.insert(enc);
    }
    v.require(encodable, where + ": C is not inside M_2(F_q[1/x])");
    bool same = got.dim() == want.dim();
    for (const auto& r : want.rows()) same = same && got.contains(r);
    v.require(same, where + ": Rad differs from the zero-diagonal span");
    auto q = finalg::quotient(rep.c, rad);
    v.require(q.alg.dim == 2 && finalg::is_commutative(q.alg) && finalg::radical(q.alg).empty() &&
                  finalg::primitive_idempotent_system(q.alg, 1).size() == 2,
              where + ": C/Rad is not F_q + F_q");
    auto e = split::select_rank_one(fx.a, rep, 1);
    v.require(split::explicit_isomorphism(fx.a, e).verified, where + ": isomorphism");
    const double s = seconds_since(t0);
    v.require(s < 5.0, where + ": " + std::to_string(s) + " s");
    check_degree_bounds(deg, "skewed " + where, fx.a, fx.lambda, fx.delta, rep);
  }
  degree_runs.push_back(deg);
  return v;
}

// Criteria 2 and 3 share runs.
Verdict crit3;
double worst_n2 = 0, worst_n3 = 0;

Verdict criterion2() {
  Verdict v;
  Verdict deg;
  for (std::size_t n : {2u, 3u})
    for (auto [p, e] : {std::pair{2u, 1u}, std::pair{3u, 1u}, std::pair{2u, 2u}, std::pair{5u, 1u}}) {
      auto F = ff::Field::make(p, e);
      for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto where = tag(p, e, n, seed);
        auto A = instance::change_of_basis(F, n, instance::random_invertible(F, n * n, 2, seed));
        const auto t0 = Clock::now();
        try {
          auto r = split::split_pipeline(A, seed);
          const double s = seconds_since(t0);
          (n == 2 ? worst_n2 : worst_n3) = std::max(n == 2 ? worst_n2 : worst_n3, s);
          v.require(s <= (n == 2 ? 60.0 : 900.0), where + ": " + std::to_string(s) + " s");
          v.require(split::isomorphism_defect(A, r.iso.images).empty() && r.iso.verified, where + ": not verified");
          v.require(A.equal(A.mul(r.idempotent, r.idempotent), r.idempotent), where + ": e^2 != e");
          std::vector<AlgElem> ea;
          for (std::size_t i = 0; i < A.dim(); ++i) ea.push_back(A.mul(r.idempotent, A.basis(i)));
          v.require(linalg::greedy_independent(A.field(), ea, A.dim()).size() == n, where + ": dim eA != n");

          const auto& l = r.lambda;
          crit3.require(l.disc.degree() == 0, where + ": final disc degree " + std::to_string(l.disc.degree()));
          crit3.require(l.steps <= l.d0.degree(), where + ": " + std::to_string(l.steps) + " steps > deg d0 " +
                                                      std::to_string(l.d0.degree()));
          crit3.require(!l.disc_degrees.empty() && l.disc_degrees.front() <= l.d0.degree(), where + ": closure degree");
          for (std::size_t i = 1; i < l.disc_degrees.size(); ++i)
            crit3.require(l.disc_degrees[i] < l.disc_degrees[i - 1], where + ": disc degree did not decrease");
          crit3.require(static_cast<int>(l.disc_degrees.size()) == l.steps + 1, where + ": step count mismatch");
          check_degree_bounds(deg, where, A, r.lambda, r.delta, r.report);
        } catch (const std::exception& ex) {
          v.fail(where + ": " + ex.what());
          crit3.fail(where + ": no run");
        }
      }
    }
  degree_runs.push_back(deg);
  return v;
}

Verdict criterion4() {
  Verdict v;
  if (degree_runs.size() < 2) v.fail("criteria 1 and 2 must run first");
  for (const auto& d : degree_runs) {
    v.failures += d.failures;
    v.notes.insert(v.notes.end(), d.notes.begin(), d.notes.end());
  }
  return v;
}

Poly random_poly(const PolyRing& R, std::mt19937_64& rng, int deg) {
  std::uniform_int_distribution<std::uint64_t> d(0, R.field().order() - 1);
  std::vector<ff::Elem> c(deg + 1);
  for (auto& x : c) x = static_cast<ff::Elem>(d(rng));
  return R.from_coeffs(c);
}

// Entries of degree <= 5 in numerator and denominator; denominators only when
// rational is set.
lattice::LatticeBasis random_lattice(const RatField& K, std::mt19937_64& rng, std::size_t m, bool rational) {
  const auto& R = K.ring();
  for (;;) {
    lattice::LatticeBasis b{m, {}};
    for (std::size_t i = 0; i < m; ++i) {
      lattice::Vec v(m);
      for (auto& e : v) {
        auto num = random_poly(R, rng, static_cast<int>(rng() % 6));
        auto den = rational ? R.monic(random_poly(R, rng, static_cast<int>(rng() % 3))) : R.one();
        e = K.make(num, den.is_zero() ? R.one() : den);
      }
      b.vectors.push_back(std::move(v));
    }
    if (!K.is_zero(linalg::determinant(K, linalg::from_columns(K, b.vectors, m)))) return b;
  }
}

int max_valuation(const std::vector<lattice::Vec>& vs) {
  int out = kNegInf;
  for (const auto& v : vs) out = std::max(out, lattice::vector_valuation(v));
  return out;
}

Verdict criterion5() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(5005);
  const std::uint32_t primes[] = {2, 3, 5};
  for (int trial = 0; trial < 1000; ++trial) {
    RatField K(ff::Field::make(primes[trial % 3]));
    const std::size_t m = 1 + trial % 6;
    const std::string where = "instance " + std::to_string(trial);
    auto b = random_lattice(K, rng, m, trial % 2);
    auto [r, cert] = lattice::reduce_basis(K, b);
    v.require(cert.od_after == 0 && lattice::orthogonality_defect(K, r) == 0, where + ": OD > 0");
    auto T = linalg::zeros(K, m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) T(i, j) = K.from_poly(cert.transform(i, j));
    auto dT = linalg::determinant(K, T);
    v.require(!K.is_zero(dT) && valuation(dT) == 0, where + ": transform not unimodular");
    v.require(linalg::equal(K, linalg::from_columns(K, r.vectors, m),
                            linalg::multiply(K, linalg::from_columns(K, b.vectors, m), T)),
              where + ": reduced basis is not B T");
    v.require(max_valuation(r.vectors) <= max_valuation(b.vectors), where + ": reduce_basis raised the valuation");

    // generators: the basis, two more random vectors, a combination and zero
    auto g = b;
    for (int extra = 0; extra < 2; ++extra) g.vectors.push_back(random_lattice(K, rng, m, true).vectors[0]);
    lattice::Vec comb(m, K.zero());
    for (const auto& u : b.vectors) {
      auto c = K.from_poly(random_poly(K.ring(), rng, 2));
      for (std::size_t t = 0; t < m; ++t) comb[t] = K.add(comb[t], K.mul(c, u[t]));
    }
    g.vectors.push_back(comb);
    g.vectors.push_back(lattice::Vec(m, K.zero()));
    linalg::Matrix<Poly> U;
    auto rg = lattice::reduce_generators(K, g, &U);
    bool ok = rg.vectors.size() == m && U.rows == g.vectors.size() && U.cols == m;
    for (std::size_t j = 0; ok && j < m; ++j) {
      lattice::Vec w(m, K.zero());
      for (std::size_t i = 0; i < U.rows; ++i)
        for (std::size_t t = 0; t < m; ++t) w[t] = K.add(w[t], K.mul(K.from_poly(U(i, j)), g.vectors[i][t]));
      ok = w == rg.vectors[j];
    }
    v.require(ok, where + ": reduced generators are not in the module");
    for (const auto& u : g.vectors) v.require(lattice::contains(K, rg, u), where + ": a generator left the module");
    v.require(max_valuation(rg.vectors) <= max_valuation(g.vectors), where + ": reduce_generators raised the valuation");

    // |alpha_i| <= |a| + OD - |b_i| on a random element of the lattice
    const int od = lattice::orthogonality_defect(K, b);
    std::vector<RatFunc> alpha(m);
    lattice::Vec a(m, K.zero());
    for (std::size_t i = 0; i < m; ++i) {
      alpha[i] = K.from_poly(random_poly(K.ring(), rng, static_cast<int>(rng() % 6)));
      for (std::size_t t = 0; t < m; ++t) a[t] = K.add(a[t], K.mul(alpha[i], b.vectors[i][t]));
    }
    const int va = lattice::vector_valuation(a);
    for (std::size_t i = 0; i < m; ++i)
      if (!K.is_zero(alpha[i]))
        v.require(valuation(alpha[i]) <= va + od - lattice::vector_valuation(b.vectors[i]),
                  where + ": coefficient bound");
  }
  const double s = seconds_since(t0);
  v.require(s < 60.0, "total " + std::to_string(s) + " s");
  return v;
}

Verdict criterion6() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(6006);
  for (int trial = 0; trial < 200; ++trial) {
    finalg::ResidueField k(ff::Field::make(trial % 2 ? 3 : 2));
    const std::string where = "algebra " + std::to_string(trial);
    auto a = random_unital_algebra(k, 5, rng);
    auto rad = finalg::radical(a);
    v.require(same_span(k, a.dim, rad, brute_radical(a)), where + ": radical differs from the oracle");
    auto q = finalg::quotient(a, rad);
    auto sys = finalg::primitive_idempotent_system(q.alg, trial);
    auto one = finalg::identity(q.alg);
    if (!one) {
      v.fail(where + ": quotient has no identity");
      continue;
    }
    auto sum = q.alg.zero();
    for (std::size_t i = 0; i < sys.size(); ++i) {
      for (std::size_t j = 0; j < sys.size(); ++j)
        v.require(q.alg.mul(sys[i], sys[j]) == (i == j ? sys[i] : q.alg.zero()), where + ": e_i e_j != δ_ij e_i");
      sum = q.alg.add(sum, sys[i]);
      v.require(is_primitive(q.alg, sys[i]), where + ": non-primitive idempotent");
    }
    v.require(sum == *one, where + ": idempotents do not sum to 1");
    linalg::EchelonSpan<finalg::ResidueField> rspan(k, a.dim);
    for (const auto& r : rad) rspan.insert(r);
    for (const auto& eb : sys) {
      auto x = finalg::lift(q, eb);
      auto e = finalg::lift_idempotent(a, rad, x);
      v.require(a.mul(e, e) == e, where + ": lift is not idempotent");
      v.require(rspan.contains(a.sub(e, x)), where + ": lift is not congruent to its target");
    }
  }
  const double s = seconds_since(t0);
  v.require(s < 120.0, "total " + std::to_string(s) + " s");
  return v;
}

Verdict criterion7() {
  Verdict v;
  std::mt19937_64 rng(7007);
  for (auto [n, p, e] : {std::tuple{2u, 2u, 1u}, std::tuple{2u, 2u, 2u}, std::tuple{3u, 3u, 1u}, std::tuple{2u, 3u, 1u}}) {
    auto F = ff::Field::make(p, e);
    RatField K(F);
    auto q = instance::random_invertible(F, n * n, 2, 70 + n + p + e);
    auto A = instance::change_of_basis(F, n, q);
    auto imgs = instance::images(K, n, q);
    for (int trial = 0; trial < 50; ++trial) {
      AlgElem x(A.dim());
      for (auto& c : x) {
        auto num = random_poly(K.ring(), rng, static_cast<int>(rng() % 4));
        auto den = K.ring().monic(random_poly(K.ring(), rng, static_cast<int>(rng() % 2)));
        c = K.make(num, den.is_zero() ? K.ring().one() : den);
      }
      auto M = instance::image_of(K, imgs, x);
      RatFunc tr = K.zero();
      for (std::size_t i = 0; i < n; ++i) tr = K.add(tr, M(i, i));
      v.require(reduced_trace(A, x) == tr, tag(p, e, n, trial) + ": reduced trace differs");
    }
  }
  return v;
}

Verdict criterion8() {
  Verdict v;
  // n = 1
  for (std::uint32_t p : {2u, 5u}) {
    auto F = ff::Field::make(p);
    RatField K(F);
    for (const auto& g : {K.inv(K.x()), K.one(), K.make(Poly{{1, 1}}, Poly{{0, 0, 1}})}) {
      auto A = StructureAlgebra::make(F, 1, {g});
      auto r = split::split_pipeline(A, 1);
      v.require(r.idempotent == find_identity(A), "n=1: e != 1");
      v.require(r.iso.images.size() == 1 && r.iso.images[0].rows == 1 && r.iso.images[0](0, 0) == g,
                "n=1: wrong 1x1 isomorphism");
    }
  }
  // non-unital
  auto expect_throw = [&](const std::string& what, auto&& run, auto tag_type) {
    try {
      run();
      v.fail(what + ": no error");
    } catch (const decltype(tag_type)&) {
    } catch (const std::exception& ex) {
      v.fail(what + ": wrong error " + ex.what());
    }
  };
  auto F3 = ff::Field::make(3);
  RatField K3(F3);
  expect_throw("zero algebra", [&] { split::split_pipeline(StructureAlgebra::make(F3, 4, std::vector<RatFunc>(64, K3.zero())), 1); },
               NotUnital(""));
  {
    // a_i a_j = a_j: every basis vector is a left identity, none is two-sided
    std::vector<RatFunc> g(64, K3.zero());
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) g[(i * 4 + j) * 4 + j] = K3.one();
    expect_throw("left identities only", [&] { split::split_pipeline(StructureAlgebra::make(F3, 4, g), 1); },
                 NotUnital(""));
  }
  expect_throw("dim 2", [&] { StructureAlgebra::make(F3, 2, std::vector<RatFunc>(8, K3.zero())); },
               ValidationError(""));
  expect_throw("dim 5", [&] { StructureAlgebra::make(F3, 5, std::vector<RatFunc>(125, K3.zero())); },
               ValidationError(""));
  // the non-split quaternion algebra
  auto Q = nonsplit_quaternions();
  expect_throw("quaternions", [&] { split::split_pipeline(Q, 1); }, NotSplit(""));
  auto rep = split::intersect_orders(Q, order::maximal_order_fqx(Q, 1), order::maximal_order_infinity(Q, 1));
  std::vector<finalg::FElem> all;
  for (std::size_t i = 0; i < rep.c.dim; ++i) all.push_back(rep.c.basis(i));
  auto one = *finalg::identity(rep.c);
  for (const auto& y : enumerate_span(rep.c, all))
    if (rep.c.mul(y, y) == y) v.require(rep.c.is_zero(y) || y == one, "quaternions: C has a nontrivial idempotent");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"skewed fixture: dim C = 5, Rad = zero-diagonal span (dim 3), C/Rad = F_q + F_q, q in {2,3,5}, < 5 s each",
       criterion1},
      {"end-to-end: n in {2,3}, q in {2,3,4,5}, max_deg 2, 20 seeds: verified isomorphism, e^2 = e, dim eA = n",
       criterion2},
      {"maximality certificate: final disc degree 0, steps <= deg d(L0), disc degree strictly decreasing", [] {
         return crit3;
       }},
      {"degree bounds on all runs of criteria 1-2", criterion4},
      {"lattice suite: 1000 instances, OD 0, unimodular, valuations, coefficient bound, < 60 s", criterion5},
      {"finite algebras: 200 instances, radical = oracle, idempotent systems, lifting, < 120 s", criterion6},
      {"reduced trace = ground-truth trace, (n,q) in {(2,2),(2,4),(3,3),(2,3)}, 50 elements each", criterion7},
      {"degenerate inputs: n = 1, NotUnital, non-square dim, non-split quaternions", criterion8},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  // 3 and 4 read the runs of 1 and 2
  if (wanted.count(3) || wanted.count(4)) wanted.insert({1, 2});

  int failed = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const int id = static_cast<int>(c + 1);
    if (!wanted.empty() && !wanted.count(id)) continue;
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[c].second();
    } catch (const std::exception& ex) {
      v.fail(std::string("uncaught: ") + ex.what());
    }
    const bool ok = v.failures == 0;
    failed += !ok;
    std::printf("criterion %d: %s  %s  [%.1f s", id, ok ? "PASS" : "FAIL", criteria[c].first.c_str(),
                seconds_since(t0));
    if (id == 2) std::printf("; slowest n=2 %.1f s, n=3 %.1f s", worst_n2, worst_n3);
    std::printf("]\n");
    for (const auto& note : v.notes) std::printf("    %s\n", note.c_str());
    if (v.failures > static_cast<int>(v.notes.size()))
      std::printf("    ... %d failures in total\n", v.failures);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
