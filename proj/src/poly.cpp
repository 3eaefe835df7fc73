#include "fqx/poly.hpp"

#include <algorithm>
#include <random>

#include "fqx/errors.hpp"
#include "fqx/linalg.hpp"

namespace fqx {

using ff::Elem;

namespace {

void trim(Poly& a) {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

}  // namespace

// ---------------------------------------------------------------------------
// PolyRing

Poly PolyRing::constant(Elem a) const { return a ? Poly{{a}} : Poly{}; }

Poly PolyRing::monomial(Elem a, int k) const {
  if (!a) return {};
  Poly r;
  r.c.assign(k + 1, 0);
  r.c[k] = a;
  return r;
}

Poly PolyRing::from_coeffs(std::vector<Elem> c) const {
  Poly r{std::move(c)};
  trim(r);
  return r;
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
  const Poly& big = a.c.size() >= b.c.size() ? a : b;
  const Poly& small = a.c.size() >= b.c.size() ? b : a;
  Poly r = big;
  for (std::size_t i = 0; i < small.c.size(); ++i) r.c[i] = f_.add(r.c[i], small.c[i]);
  trim(r);
  return r;
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const {
  Poly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size(), 0);
  for (std::size_t i = 0; i < b.c.size(); ++i) r.c[i] = f_.sub(r.c[i], b.c[i]);
  trim(r);
  return r;
}

Poly PolyRing::neg(const Poly& a) const {
  Poly r = a;
  for (auto& c : r.c) c = f_.neg(c);
  return r;
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  if (f_.degree() == 1) {
    // Prime field: accumulate in 64 bits and reduce once per output.
    const std::uint64_t p = f_.characteristic();
    const std::uint64_t limit = ~std::uint64_t{0} - (p - 1) * (p - 1);
    std::vector<std::uint64_t> acc(r.c.size(), 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (!a.c[i]) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j) {
        std::uint64_t& s = acc[i + j];
        s += std::uint64_t{a.c[i]} * b.c[j];
        if (s > limit) s %= p;
      }
    }
    for (std::size_t k = 0; k < acc.size(); ++k) r.c[k] = static_cast<Elem>(acc[k] % p);
  } else {
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (!a.c[i]) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j)
        r.c[i + j] = f_.add(r.c[i + j], f_.mul(a.c[i], b.c[j]));
    }
  }
  trim(r);
  return r;
}

Poly PolyRing::scale(const Poly& a, Elem s) const {
  if (!s) return {};
  Poly r = a;
  for (auto& c : r.c) c = f_.mul(c, s);
  return r;
}

Poly PolyRing::shift(const Poly& a, int k) const {
  if (a.is_zero() || k == 0) return a;
  Poly r;
  r.c.assign(k, 0);
  r.c.insert(r.c.end(), a.c.begin(), a.c.end());
  return r;
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
  if (b.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
  if (a.degree() < b.degree()) return {Poly{}, a};
  Poly r = a;
  const int db = b.degree();
  Poly q;
  q.c.assign(a.degree() - db + 1, 0);
  const Elem inv_lead = f_.inv(b.c.back());
  for (int k = a.degree(); k >= db; --k) {
    Elem t = r.c[k];
    if (!t) continue;
    t = f_.mul(t, inv_lead);
    q.c[k - db] = t;
    if (f_.degree() == 1) {
      const std::uint64_t p = f_.characteristic(), nt = p - t;
      for (int i = 0; i <= db; ++i) r.c[k - db + i] = static_cast<Elem>((r.c[k - db + i] + nt * b.c[i]) % p);
    } else {
      for (int i = 0; i <= db; ++i) r.c[k - db + i] = f_.sub(r.c[k - db + i], f_.mul(t, b.c[i]));
    }
  }
  trim(q);
  trim(r);
  return {q, r};
}

namespace {

// a <- a mod b in place, b nonzero.
void rem_inplace(const ff::Field& f, Poly& r, const Poly& b) {
  const int db = b.degree();
  if (r.degree() < db) return;
  const Elem inv_lead = f.inv(b.c.back());
  if (f.degree() == 1) {
    const std::uint64_t p = f.characteristic();
    for (int k = r.degree(); k >= db; --k) {
      std::uint64_t t = r.c[k];
      if (!t) continue;
      t = t * inv_lead % p;
      const std::uint64_t nt = p - t;
      Elem* rc = r.c.data() + (k - db);
      for (int i = 0; i <= db; ++i) rc[i] = static_cast<Elem>((rc[i] + nt * b.c[i]) % p);
    }
  } else {
    for (int k = r.degree(); k >= db; --k) {
      Elem t = r.c[k];
      if (!t) continue;
      t = f.mul(t, inv_lead);
      for (int i = 0; i <= db; ++i) r.c[k - db + i] = f.sub(r.c[k - db + i], f.mul(t, b.c[i]));
    }
  }
  r.c.resize(db);
  trim(r);
}

}  // namespace

Poly PolyRing::rem(const Poly& a, const Poly& b) const {
  if (b.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
  if (a.degree() < b.degree()) return a;
  Poly r = a;
  rem_inplace(f_, r, b);
  return r;
}

bool PolyRing::divides(const Poly& d, const Poly& a) const { return rem(a, d).is_zero(); }

Poly PolyRing::monic(const Poly& a) const {
  if (a.is_zero() || a.c.back() == 1) return a;
  return scale(a, f_.inv(a.c.back()));
}

Poly PolyRing::gcd(const Poly& a, const Poly& b) const {
  Poly u = a, v = b;
  while (!v.is_zero()) {
    rem_inplace(f_, u, v);
    std::swap(u, v);
  }
  return monic(u);
}

Poly PolyRing::lcm(const Poly& a, const Poly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  return monic(mul(quo(a, gcd(a, b)), b));
}

Poly PolyRing::pow(const Poly& a, std::uint64_t k) const {
  Poly r = one(), b = a;
  while (k) {
    if (k & 1) r = mul(r, b);
    k >>= 1;
    if (k) b = mul(b, b);
  }
  return r;
}

Poly PolyRing::pow_mod(const Poly& a, std::uint64_t k, const Poly& m) const {
  Poly r = rem(one(), m), b = rem(a, m);
  while (k) {
    if (k & 1) r = rem(mul(r, b), m);
    k >>= 1;
    if (k) b = rem(mul(b, b), m);
  }
  return r;
}

Poly PolyRing::derivative(const Poly& a) const {
  if (a.c.size() <= 1) return {};
  Poly r;
  r.c.resize(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i)
    r.c[i - 1] = f_.mul(a.c[i], f_.from_int(static_cast<std::int64_t>(i)));
  trim(r);
  return r;
}

Elem PolyRing::eval(const Poly& a, Elem t) const {
  Elem r = 0;
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) r = f_.add(f_.mul(r, t), *it);
  return r;
}

Poly PolyRing::reverse(const Poly& a, int d) const {
  if (a.is_zero()) return a;
  Poly r;
  r.c.assign(d + 1, 0);
  for (int i = 0; i <= a.degree(); ++i) r.c[d - i] = a.c[i];
  trim(r);
  return r;
}

std::optional<Poly> PolyRing::ppow_root(const Poly& a, unsigned r) const {
  std::uint64_t step = 1;
  for (unsigned i = 0; i < r; ++i) step *= f_.characteristic();
  if (a.is_zero()) return Poly{};
  Poly out;
  out.c.assign(a.degree() / step + 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    if (i % step) return std::nullopt;
    Elem v = a.c[i];
    for (unsigned k = 0; k < r; ++k) v = ff::pth_root(f_, v);
    out.c[i / step] = v;
  }
  trim(out);
  return out;
}

bool PolyRing::less(const Poly& a, const Poly& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  return false;
}

// ---------------------------------------------------------------------------
// Factoring

namespace {

struct Factorer {
  const PolyRing& R;
  const ff::Field& F;
  std::mt19937_64 rng;
  using RatFreeMatrix = linalg::Matrix<Elem>;

  Factorer(const PolyRing& r, std::uint64_t seed) : R(r), F(r.field()), rng(seed) {}

  // Squarefree decomposition of a monic f: pairs (squarefree g, multiplicity).
  void squarefree(const Poly& f, unsigned mult, std::vector<std::pair<Poly, unsigned>>& out) {
    if (f.degree() <= 0) return;
    Poly b = R.derivative(f);
    if (b.is_zero()) {
      auto root = R.ppow_root(f, 1);
      squarefree(*root, mult * F.characteristic(), out);
      return;
    }
    Poly c = R.gcd(f, b);
    Poly w = R.quo(f, c);
    unsigned i = 1;
    while (w.degree() > 0) {
      Poly y = R.gcd(w, c);
      Poly z = R.quo(w, y);
      if (z.degree() > 0) out.emplace_back(R.monic(z), mult * i);
      ++i;
      w = y;
      c = R.quo(c, y);
    }
    if (c.degree() > 0) {
      auto root = R.ppow_root(c, 1);
      squarefree(R.monic(*root), mult * F.characteristic(), out);
    }
  }

  Poly random_poly(int deg_below) {
    std::uniform_int_distribution<std::uint64_t> dist(0, F.order() - 1);
    std::vector<Elem> c(deg_below);
    for (auto& v : c) v = static_cast<Elem>(dist(rng));
    return R.from_coeffs(std::move(c));
  }

  // Berlekamp: f monic squarefree; appends its irreducible factors.
  void berlekamp(const Poly& f, std::vector<Poly>& out) {
    const int d = f.degree();
    if (d <= 1) {
      out.push_back(f);
      return;
    }
    // Row i of Q holds x^{iq} mod f; the fixed space of the q-power map is the
    // kernel of (Q - I)^T.
    RatFreeMatrix q_minus_i(d, d);
    Poly xq = R.pow_mod(R.x(), F.order(), f);
    Poly cur = R.one();
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j <= cur.degree(); ++j) q_minus_i(j, i) = cur.c[j];
      q_minus_i(i, i) = F.sub(q_minus_i(i, i), 1);
      cur = R.rem(R.mul(cur, xq), f);
    }
    auto ker = linalg::kernel(F, q_minus_i);
    const std::size_t r = ker.size();
    std::vector<Poly> parts{f};
    for (std::size_t k = 0; k < ker.size() && parts.size() < r; ++k) {
      Poly v = R.from_coeffs(ker[k]);
      if (v.degree() <= 0) continue;
      for (std::uint64_t s = 0; s < F.order() && parts.size() < r; ++s) {
        std::vector<Poly> next;
        for (auto& h : parts) {
          if (h.degree() <= 1) {
            next.push_back(h);
            continue;
          }
          Poly g = R.gcd(h, R.sub(v, R.constant(static_cast<Elem>(s))));
          if (g.degree() > 0 && g.degree() < h.degree()) {
            next.push_back(g);
            next.push_back(R.quo(h, g));
          } else {
            next.push_back(h);
          }
        }
        parts = std::move(next);
      }
    }
    for (auto& h : parts) out.push_back(R.monic(h));
  }

  // Equal-degree splitting (Cantor-Zassenhaus); f is a product of distinct
  // monic irreducibles of degree d.
  void equal_degree(const Poly& f, int d, std::vector<Poly>& out) {
    if (f.degree() == d) {
      out.push_back(f);
      return;
    }
    const std::uint64_t q = F.order();
    for (;;) {
      Poly a = random_poly(f.degree());
      if (a.degree() <= 0) continue;
      Poly b;
      if (F.characteristic() == 2) {
        // Absolute trace a + a^2 + ... + a^{2^{ed - 1}} lands in F_2 on each
        // residue field.
        const unsigned steps = F.degree() * d;
        Poly t = R.rem(a, f);
        b = t;
        for (unsigned i = 1; i < steps; ++i) {
          t = R.rem(R.mul(t, t), f);
          b = R.add(b, t);
        }
      } else {
        // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q - 1)/2}
        Poly t = R.rem(a, f), norm = t;
        for (int i = 1; i < d; ++i) {
          t = R.pow_mod(t, q, f);
          norm = R.rem(R.mul(norm, t), f);
        }
        b = R.sub(R.pow_mod(norm, (q - 1) / 2, f), R.one());
      }
      Poly g = R.gcd(f, b);
      if (g.degree() > 0 && g.degree() < f.degree()) {
        equal_degree(g, d, out);
        equal_degree(R.monic(R.quo(f, g)), d, out);
        return;
      }
    }
  }

  void distinct_degree(Poly f, std::vector<Poly>& out) {
    Poly h = R.x();
    for (int d = 1; 2 * d <= f.degree(); ++d) {
      h = R.pow_mod(h, F.order(), f);
      Poly g = R.gcd(f, R.sub(h, R.x()));
      if (g.degree() > 0) {
        equal_degree(g, d, out);
        f = R.quo(f, g);
        h = R.rem(h, f);
      }
    }
    if (f.degree() > 0) out.push_back(R.monic(f));
  }

};

}  // namespace

Factorization factor_poly(const PolyRing& ring, const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw ZeroPolynomial("cannot factor the zero polynomial");
  Factorization out;
  out.unit = ring.lead(f);
  Factorer fac(ring, seed);
  std::vector<std::pair<Poly, unsigned>> sqf;
  fac.squarefree(ring.monic(f), 1, sqf);
  std::vector<std::pair<Poly, unsigned>> all;
  for (auto& [g, mult] : sqf) {
    std::vector<Poly> parts;
    if (ring.field().order() <= 16)
      fac.berlekamp(g, parts);
    else
      fac.distinct_degree(g, parts);
    for (auto& h : parts) all.emplace_back(std::move(h), mult);
  }
  std::sort(all.begin(), all.end(),
            [&](const auto& a, const auto& b) { return ring.less(a.first, b.first); });
  for (auto& [g, mult] : all) {
    if (!out.factors.empty() && out.factors.back().first == g)
      out.factors.back().second += mult;
    else
      out.factors.emplace_back(g, mult);
  }
  return out;
}

bool is_irreducible(const PolyRing& ring, const Poly& f) {
  if (f.degree() <= 0) return false;
  auto fac = factor_poly(ring, f, 0);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

std::vector<Elem> roots(const PolyRing& ring, const Poly& f, std::uint64_t seed) {
  std::vector<Elem> out;
  for (auto& [g, mult] : factor_poly(ring, f, seed).factors)
    if (g.degree() == 1) out.push_back(ring.field().neg(g.c[0]));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// RatField

RatFunc RatField::make(Poly num, Poly den) const {
  if (den.is_zero()) throw ValidationError("rational function with zero denominator");
  if (num.is_zero()) return zero();
  if (!den.is_one()) {
    Poly g = ring_.gcd(num, den);
    if (!g.is_one()) {
      num = ring_.quo(num, g);
      den = ring_.quo(den, g);
    }
    ff::Elem l = ring_.lead(den);
    if (l != 1) {
      ff::Elem inv = ring_.field().inv(l);
      num = ring_.scale(num, inv);
      den = ring_.scale(den, inv);
    }
  }
  return RatFunc{std::move(num), std::move(den)};
}

RatFunc RatField::add(const RatFunc& a, const RatFunc& b) const {
  if (a.num.is_zero()) return b;
  if (b.num.is_zero()) return a;
  if (a.den == b.den) {
    if (a.den.is_one()) return from_poly(ring_.add(a.num, b.num));
    return make(ring_.add(a.num, b.num), a.den);
  }
  return make(ring_.add(ring_.mul(a.num, b.den), ring_.mul(b.num, a.den)), ring_.mul(a.den, b.den));
}

RatFunc RatField::sub(const RatFunc& a, const RatFunc& b) const { return add(a, neg(b)); }

RatFunc RatField::neg(const RatFunc& a) const { return RatFunc{ring_.neg(a.num), a.den}; }

RatFunc RatField::mul(const RatFunc& a, const RatFunc& b) const {
  if (a.num.is_zero() || b.num.is_zero()) return zero();
  if (a.den.is_one() && b.den.is_one()) return from_poly(ring_.mul(a.num, b.num));
  // Cross-cancel before multiplying so the product is already reduced.
  Poly g1 = ring_.gcd(a.num, b.den), g2 = ring_.gcd(b.num, a.den);
  Poly n1 = ring_.quo(a.num, g1), d2 = ring_.quo(b.den, g1);
  Poly n2 = ring_.quo(b.num, g2), d1 = ring_.quo(a.den, g2);
  Poly num = ring_.mul(n1, n2), den = ring_.mul(d1, d2);
  ff::Elem l = ring_.lead(den);
  if (l != 1) {
    ff::Elem inv = ring_.field().inv(l);
    num = ring_.scale(num, inv);
    den = ring_.scale(den, inv);
  }
  return RatFunc{std::move(num), std::move(den)};
}

RatFunc RatField::inv(const RatFunc& a) const {
  if (a.num.is_zero()) throw std::domain_error("inverse of zero in F_q(x)");
  return make(a.den, a.num);
}

RatFunc RatField::scale(const RatFunc& a, ff::Elem s) const {
  return RatFunc{ring_.scale(a.num, s), s ? a.den : ring_.one()};
}

RatFunc RatField::pow(const RatFunc& a, int k) const {
  if (k < 0) return pow(inv(a), -k);
  return RatFunc{ring_.pow(a.num, k), ring_.pow(a.den, k)};
}

int RatField::cost(const RatFunc& a) const {
  return static_cast<int>(a.num.c.size() + a.den.c.size());
}

int valuation(const RatFunc& r) {
  if (r.num.is_zero()) return kNegInf;
  return r.num.degree() - r.den.degree();
}

bool is_in_R(const RatFunc& r) { return valuation(r) <= 0; }

RatFunc flip_variable(const RatField& k, const RatFunc& r) {
  if (r.num.is_zero()) return r;
  const int d = std::max(r.num.degree(), r.den.degree());
  const auto& R = k.ring();
  return k.make(R.reverse(r.num, d), R.reverse(r.den, d));
}

}  // namespace fqx
