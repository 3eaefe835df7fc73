#include "fqx/order.hpp"

#include <algorithm>

#include "fqx/errors.hpp"
#include "fqx/lattice.hpp"

namespace fqx::order {

namespace {

using PolyVec = std::vector<Poly>;
using RatMatrix = linalg::MatrixOf<RatField>;

Poly exact_quo(const PolyRing& R, const Poly& a, const Poly& b, const char* what) {
  auto [q, r] = R.divmod(a, b);
  if (!r.is_zero()) throw VerificationFailure(what);
  return q;
}

Poly as_poly(const RatFunc& r, const char* what) {
  if (!r.den.is_one()) throw VerificationFailure(what);
  return r.num;
}

Poly gram_determinant(const RatField& k, const OrderRep& l) {
  const std::size_t m = l.dim();
  const auto& R = k.ring();
  auto G = linalg::zeros(k, m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      Poly s;
      for (std::size_t t = 0; t < m; ++t)
        if (!l.c(i, j, t).is_zero() && !l.traces[t].is_zero()) s = R.add(s, R.mul(l.c(i, j, t), l.traces[t]));
      G(i, j) = G(j, i) = k.from_poly(s);
    }
  auto d = linalg::determinant(k, G);
  if (k.is_zero(d)) throw PromiseViolation("the trace form is degenerate");
  return R.monic(as_poly(d, "Gram determinant of an almost order is not a polynomial"));
}

}  // namespace

OrderRep almost_order(const StructureAlgebra& a) {
  const auto& k = a.field();
  const auto& R = k.ring();
  const std::size_t m = a.dim();
  Poly delta = R.one();
  for (const auto& g : a.gamma())
    if (!g.den.is_one()) delta = R.lcm(delta, g.den);
  const auto d = k.from_poly(delta);

  OrderRep l;
  l.table.resize(m * m * m);
  for (std::size_t i = 0; i < l.table.size(); ++i) l.table[i] = as_poly(k.mul(d, a.gamma()[i]), "lcm failed");
  std::vector<RatFunc> t;
  try {
    t = trace_functional(a);
  } catch (const RootFailure& e) {
    throw PromiseViolation(e.what());
  }
  for (const auto& ti : t) {
    auto s = k.mul(d, ti);
    if (!s.den.is_one()) throw PromiseViolation("reduced trace of an almost order element is not integral");
    l.traces.push_back(s.num);
  }
  for (std::size_t i = 0; i < m; ++i) l.basis.push_back(a.scale(a.basis(i), d));
  l.l0_coords = linalg::identity(k, m);
  l.disc = gram_determinant(k, l);
  l.d0 = l.disc;
  return l;
}

OrderRep from_basis(const StructureAlgebra& a, const std::vector<AlgElem>& basis, Ring ring) {
  const bool inv = ring == Ring::FqInvX;
  const auto b = inv ? flip(a) : a;
  const auto& k = b.field();
  const std::size_t m = b.dim();
  std::vector<AlgElem> work = basis;
  if (inv)
    for (auto& v : work)
      for (auto& e : v) e = flip_variable(k, e);
  auto B = linalg::from_columns(k, work, m);
  auto rhs = linalg::zeros(k, m, m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto p = b.mul(work[i], work[j]);
      for (std::size_t t = 0; t < m; ++t) rhs(t, i * m + j) = p[t];
    }
  auto sol = linalg::solve_many(k, B, rhs);
  if (!sol) throw ValidationError("basis is singular");
  OrderRep l;
  l.ring = ring;
  l.basis = basis;
  l.table.resize(m * m * m);
  for (std::size_t i = 0; i < m * m; ++i)
    for (std::size_t t = 0; t < m; ++t) {
      const auto& e = (*sol)(t, i);
      if (!e.den.is_one()) throw ValidationError("span is not closed under multiplication");
      l.table[i * m + t] = e.num;
    }
  auto tf = trace_functional(b);
  for (const auto& v : work) {
    RatFunc s = k.zero();
    for (std::size_t t = 0; t < m; ++t) s = k.add(s, k.mul(v[t], tf[t]));
    if (!s.den.is_one()) throw ValidationError("trace is not integral");
    l.traces.push_back(s.num);
  }
  l.l0_coords = linalg::identity(k, m);
  l.disc = gram_determinant(k, l);
  l.d0 = l.disc;
  l.disc_degrees.push_back(l.disc.degree());
  return l;
}

OrderRep extend(const RatField& k, const OrderRep& l, const std::vector<std::vector<RatFunc>>& extra) {
  const auto& R = k.ring();
  const std::size_t m = l.dim();

  lattice::LatticeBasis gens{m, l.basis};
  for (const auto& e : extra) {
    AlgElem v(m, k.zero());
    for (std::size_t a = 0; a < m; ++a)
      if (!k.is_zero(e[a]))
        for (std::size_t t = 0; t < m; ++t) v[t] = k.add(v[t], k.mul(e[a], l.basis[a][t]));
    gens.vectors.push_back(std::move(v));
  }
  linalg::Matrix<Poly> U;
  auto reduced = lattice::reduce_generators(k, gens, &U);

  // T: new basis in old coordinates.
  auto T = linalg::zeros(k, m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t a = 0; a < m; ++a) {
      RatFunc s = k.from_poly(U(a, j));
      for (std::size_t e = 0; e < extra.size(); ++e)
        if (!U(m + e, j).is_zero() && !k.is_zero(extra[e][a])) s = k.add(s, k.mul(k.from_poly(U(m + e, j)), extra[e][a]));
      T(a, j) = s;
    }
  Poly h = R.one();
  for (const auto& e : T.data)
    if (!e.den.is_one()) h = R.lcm(h, e.den);
  linalg::Matrix<Poly> Tp(m, m);
  for (std::size_t i = 0; i < T.data.size(); ++i) Tp.data[i] = as_poly(k.mul(T.data[i], k.from_poly(h)), "lcm failed");
  auto Tinv_r = linalg::inverse(k, T);
  if (!Tinv_r) throw VerificationFailure("extension transform is singular");
  linalg::Matrix<Poly> Tinv(m, m);
  for (std::size_t i = 0; i < Tinv.data.size(); ++i)
    Tinv.data[i] = as_poly(Tinv_r->data[i], "extension does not contain the old order");

  OrderRep out;
  out.ring = l.ring;
  out.d0 = l.d0;
  out.disc_degrees = l.disc_degrees;
  out.steps = l.steps;
  out.basis = reduced.vectors;
  out.l0_coords = linalg::multiply(k, l.l0_coords, T);

  const Poly h2 = R.mul(h, h);
  out.table.assign(m * m * m, Poly{});
  for (std::size_t i = 0; i < m; ++i) {
    // P(c, b) = sum_a Tp(a, i) c_abc: left multiplication by h b'_i
    linalg::Matrix<Poly> P(m, m);
    for (std::size_t a = 0; a < m; ++a) {
      if (Tp(a, i).is_zero()) continue;
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t c = 0; c < m; ++c)
          if (!l.c(a, b, c).is_zero()) P(c, b) = R.add(P(c, b), R.mul(Tp(a, i), l.c(a, b, c)));
    }
    for (std::size_t j = 0; j < m; ++j) {
      PolyVec w(m);
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t b = 0; b < m; ++b)
          if (!P(c, b).is_zero() && !Tp(b, j).is_zero()) w[c] = R.add(w[c], R.mul(P(c, b), Tp(b, j)));
      for (std::size_t r = 0; r < m; ++r) {
        Poly z;
        for (std::size_t c = 0; c < m; ++c)
          if (!Tinv(r, c).is_zero() && !w[c].is_zero()) z = R.add(z, R.mul(Tinv(r, c), w[c]));
        out.table[(i * m + j) * m + r] = exact_quo(R, z, h2, "extension is not closed under multiplication");
      }
    }
  }
  out.traces.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    Poly s;
    for (std::size_t a = 0; a < m; ++a)
      if (!Tp(a, j).is_zero() && !l.traces[a].is_zero()) s = R.add(s, R.mul(Tp(a, j), l.traces[a]));
    out.traces[j] = exact_quo(R, s, h, "trace of an order element is not integral");
  }
  // d(new) = d(old) / det(T^-1)^2
  RatMatrix Ti = linalg::zeros(k, m, m);
  for (std::size_t i = 0; i < Ti.data.size(); ++i) Ti.data[i] = k.from_poly(Tinv.data[i]);
  auto det = as_poly(linalg::determinant(k, Ti), "index is not a polynomial");
  out.disc = R.monic(exact_quo(R, l.disc, R.mul(det, det), "discriminant index mismatch"));
  return out;
}

OrderRep unital_closure(const RatField& k, const OrderRep& l) {
  const std::size_t m = l.dim();
  // sum_i e_i c_ijt = [j == t]
  auto M = linalg::zeros(k, m * m, m);
  std::vector<RatFunc> rhs(m * m, k.zero());
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t t = 0; t < m; ++t) {
      for (std::size_t i = 0; i < m; ++i) M(j * m + t, i) = k.from_poly(l.c(i, j, t));
      if (j == t) rhs[j * m + t] = k.one();
    }
  auto e = linalg::solve(k, M, rhs);
  if (!e) throw NotUnital("the algebra has no identity");
  bool integral = std::all_of(e->begin(), e->end(), [](const RatFunc& r) { return r.den.is_one(); });
  OrderRep out = integral ? l : extend(k, l, {*e});
  out.disc_degrees.push_back(out.disc.degree());
  return out;
}

OrderRep left_order(const RatField& k, const OrderRep& l, const IdealRep& ideal) {
  const auto& R = k.ring();
  const auto& F = k.field();
  const std::size_t m = l.dim();
  lattice::LatticeBasis gens{m, {}};
  for (const auto& g : ideal.generators) {
    std::vector<RatFunc> v(m);
    for (std::size_t i = 0; i < m; ++i) v[i] = k.from_poly(g[i]);
    gens.vectors.push_back(std::move(v));
  }
  auto W = lattice::reduce_generators(k, gens);
  auto Winv = linalg::inverse(k, linalg::from_columns(k, W.vectors, m));
  Poly h = R.one();
  for (const auto& e : Winv->data)
    if (!e.den.is_one()) h = R.lcm(h, e.den);
  if (h.is_one()) return l;  // I = Λ
  const std::size_t dh = static_cast<std::size_t>(h.degree());

  auto ideal_coords = [&](const std::vector<RatFunc>& v) { return linalg::apply(k, *Winv, v); };
  auto mul = [&](const std::vector<RatFunc>& u, const std::vector<RatFunc>& v) {
    std::vector<RatFunc> out(m, k.zero());
    for (std::size_t i = 0; i < m; ++i) {
      if (k.is_zero(u[i])) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (k.is_zero(v[j])) continue;
        auto uv = k.mul(u[i], v[j]);
        for (std::size_t t = 0; t < m; ++t)
          if (!l.c(i, j, t).is_zero()) out[t] = k.add(out[t], k.mul(uv, k.from_poly(l.c(i, j, t))));
      }
    }
    return out;
  };

  // Column (i, s) is x^s b_i; rows are the coefficients of the I-coordinates
  // of x^s b_i w_t modulo h.
  linalg::Matrix<ff::Elem> M(m * m * dh, m * dh, 0);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<RatFunc> bi(m, k.zero());
    bi[i] = k.one();
    for (std::size_t t = 0; t < m; ++t) {
      auto y = ideal_coords(mul(bi, W.vectors[t]));
      for (std::size_t r = 0; r < m; ++r) {
        Poly v = R.rem(as_poly(y[r], "I is not a left module"), h);
        for (std::size_t s = 0; s < dh; ++s) {
          for (std::size_t c = 0; c < v.c.size(); ++c) M((t * m + r) * dh + c, i * dh + s) = v.c[c];
          v = R.rem(R.shift(v, 1), h);
        }
      }
    }
  }
  auto ker = linalg::kernel(F, M);
  if (ker.empty()) return l;
  std::vector<std::vector<RatFunc>> extra;
  const auto hinv = k.inv(k.from_poly(h));
  for (const auto& c : ker) {
    std::vector<RatFunc> e(m);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<ff::Elem> co(c.begin() + i * dh, c.begin() + (i + 1) * dh);
      e[i] = k.mul(k.from_poly(R.from_coeffs(std::move(co))), hinv);
    }
    for (const auto& w : W.vectors)
      for (const auto& y : ideal_coords(mul(e, w)))
        if (!y.den.is_one()) throw VerificationFailure("left order element does not stabilize I");
    extra.push_back(std::move(e));
  }
  return extend(k, l, extra);
}

finalg::FiniteAlgebra reduce_mod(const OrderRep& l, const finalg::ResidueField& K) {
  finalg::FiniteAlgebra b{K, l.dim(), {}};
  b.gamma.reserve(l.table.size());
  for (const auto& c : l.table) b.gamma.push_back(K.ring().rem(c, K.modulus()));
  return b;
}

EnlargeResult enlarge_at_prime(const RatField& k, const OrderRep& l, const Poly& g, std::uint64_t seed) {
  const auto& R = k.ring();
  const std::size_t m = l.dim();
  finalg::ResidueField K(k.field(), g);
  auto b = reduce_mod(l, K);
  auto rad = finalg::radical(b);

  IdealRep base;
  for (std::size_t i = 0; i < m; ++i) {
    PolyVec v(m);
    v[i] = g;
    base.generators.push_back(std::move(v));
  }
  for (const auto& r : rad) base.generators.push_back(r);

  auto try_ideal = [&](const IdealRep& ideal) -> std::optional<OrderRep> {
    auto o = left_order(k, l, ideal);
    if (o.disc.degree() < l.disc.degree()) return o;
    return std::nullopt;
  };
  auto finish = [&](OrderRep o) {
    if (!R.divides(o.disc, l.disc)) throw VerificationFailure("new discriminant does not divide the old one");
    o.steps = l.steps + 1;
    o.disc_degrees.push_back(o.disc.degree());
    return EnlargeResult{true, std::move(o)};
  };

  if (!rad.empty())
    if (auto o = try_ideal(base)) return finish(std::move(*o));

  auto q = finalg::quotient(b, rad);
  auto cs = finalg::central_idempotents(q.alg, seed);
  if (cs.size() > 1) {
    for (const auto& c : cs) {
      std::vector<finalg::FElem> comp;
      for (std::size_t j = 0; j < q.alg.dim; ++j) comp.push_back(q.alg.mul(q.alg.basis(j), c));
      IdealRep ideal = base;
      for (auto idx : linalg::greedy_independent(K, comp, q.alg.dim))
        ideal.generators.push_back(finalg::lift(q, comp[idx]));
      if (auto o = try_ideal(ideal)) return finish(std::move(*o));
    }
  }
  return {false, l};
}

namespace {

void check_containment(const RatField& k, const OrderRep& l) {
  const auto d0 = k.from_poly(l.d0);
  for (const auto& e : l.l0_coords.data)
    if (!k.mul(e, d0).den.is_one()) throw VerificationFailure("order escapes (1/D0) Λ0");
}

OrderRep enlarge_fully(const RatField& k, OrderRep l, const Poly& g, std::uint64_t seed) {
  const auto& R = k.ring();
  while (l.disc.degree() > 0 && R.divides(g, l.disc)) {
    auto r = enlarge_at_prime(k, l, g, seed + static_cast<std::uint64_t>(l.steps));
    if (!r.enlarged) break;
    l = std::move(r.order);
    check_containment(k, l);
  }
  return l;
}

OrderRep rereduce(const RatField& k, const OrderRep& l) {
  OrderRep out = extend(k, l, {});
  if (out.disc != l.disc) throw VerificationFailure("re-reduction changed the discriminant");
  return out;
}

}  // namespace

OrderRep maximal_order_fqx(const StructureAlgebra& a, std::uint64_t seed) {
  const auto& k = a.field();
  auto l = unital_closure(k, almost_order(a));
  if (l.d0.degree() > 0) {
    auto fac = factor_poly(k.ring(), l.d0, seed);
    for (const auto& [g, mult] : fac.factors) l = enlarge_fully(k, std::move(l), g, seed);
  }
  auto out = rereduce(k, l);
  out.ring = Ring::FqX;
  return out;
}

OrderRep maximal_order_infinity(const StructureAlgebra& a, std::uint64_t seed) {
  auto b = flip(a);
  const auto& k = b.field();
  auto l = unital_closure(k, almost_order(b));
  l = rereduce(k, enlarge_fully(k, std::move(l), k.ring().x(), seed));
  for (auto& v : l.basis)
    for (auto& e : v) e = flip_variable(k, e);
  l.ring = Ring::FqInvX;
  return l;
}

InputDegrees input_degrees(const StructureAlgebra& a) {
  InputDegrees d;
  for (const auto& g : a.gamma()) {
    if (g.num.is_zero()) continue;
    d.d_n = std::max(d.d_n, g.num.degree());
    d.d_d = std::max(d.d_d, g.den.degree());
  }
  d.d_c = std::max({d.d_n, d.d_d, 1});
  return d;
}

int basis_coefficient_degree(const OrderRep& l) {
  int d = 0;
  for (const auto& v : l.basis)
    for (const auto& e : v)
      if (!e.num.is_zero()) d = std::max({d, e.num.degree(), e.den.degree()});
  return d;
}

}  // namespace fqx::order
