#include "fqx/finalg.hpp"

#include <algorithm>

#include "fqx/errors.hpp"

namespace fqx::finalg {

using ff::Elem;

// ---------------------------------------------------------------- field

ResidueField::ResidueField(ff::Field f) : ring_(std::move(f)), g_(Poly{{0, 1}}) {}

ResidueField::ResidueField(ff::Field f, Poly g) : ring_(std::move(f)), g_(std::move(g)) {
  if (g_.degree() < 1) throw ValidationError("residue field modulus must have positive degree");
}

Poly ResidueField::mul(const Poly& a, const Poly& b) const {
  if (a.is_zero() || b.is_zero()) return {};
  if (g_.degree() == 1) return Poly{{base().mul(a.c[0], b.c[0])}};
  return ring_.rem(ring_.mul(a, b), g_);
}

Poly ResidueField::inv(const Poly& a) const {
  if (a.is_zero()) throw ValidationError("inverse of zero");
  if (g_.degree() == 1) return Poly{{base().inv(a.c[0])}};
  Poly r0 = g_, r1 = a, s0, s1 = one();
  while (!r1.is_zero()) {
    auto [q, r] = ring_.divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s = ring_.sub(s0, ring_.mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant because g is irreducible.
  return ring_.rem(ring_.scale(s0, base().inv(r0.c[0])), g_);
}

Poly ResidueField::pow(Poly a, std::uint64_t k) const {
  Poly r = one();
  while (k) {
    if (k & 1) r = mul(r, a);
    k >>= 1;
    if (k) a = mul(a, a);
  }
  return r;
}

Poly ResidueField::pth_root(Poly a) const {
  for (unsigned i = 1; i < absolute_degree(); ++i) a = frobenius(a);
  return a;
}

Poly ResidueField::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint64_t> d(0, base().order() - 1);
  std::vector<ff::Elem> c(degree());
  for (auto& v : c) v = static_cast<ff::Elem>(d(rng));
  return ring_.from_coeffs(std::move(c));
}

// ---------------------------------------------------------------- algebra

FElem FiniteAlgebra::basis(std::size_t i) const {
  auto v = zero();
  v[i] = k.one();
  return v;
}

FElem FiniteAlgebra::add(const FElem& a, const FElem& b) const {
  FElem r(dim);
  for (std::size_t i = 0; i < dim; ++i) r[i] = k.add(a[i], b[i]);
  return r;
}

FElem FiniteAlgebra::sub(const FElem& a, const FElem& b) const {
  FElem r(dim);
  for (std::size_t i = 0; i < dim; ++i) r[i] = k.sub(a[i], b[i]);
  return r;
}

FElem FiniteAlgebra::scale(const FElem& a, const Poly& s) const {
  FElem r(dim);
  for (std::size_t i = 0; i < dim; ++i) r[i] = k.mul(a[i], s);
  return r;
}

FElem FiniteAlgebra::mul(const FElem& a, const FElem& b) const {
  FElem r(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (b[j].is_zero()) continue;
      auto ab = k.mul(a[i], b[j]);
      const Poly* row = &gamma[(i * dim + j) * dim];
      for (std::size_t t = 0; t < dim; ++t)
        if (!row[t].is_zero()) r[t] = k.add(r[t], k.mul(ab, row[t]));
    }
  }
  return r;
}

FElem FiniteAlgebra::pow(FElem a, std::uint64_t e, const FElem& one) const {
  FElem r = one;
  while (e) {
    if (e & 1) r = mul(r, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return r;
}

bool FiniteAlgebra::is_zero(const FElem& a) const {
  return std::all_of(a.begin(), a.end(), [](const Poly& p) { return p.is_zero(); });
}

std::optional<FElem> identity(const FiniteAlgebra& b) {
  const auto& K = b.k;
  const std::size_t n = b.dim;
  if (n == 0) return FElem{};
  auto M = linalg::zeros(K, n * n, n);
  FElem rhs(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t j = 0; j < n; ++j) M(i * n + t, j) = b.g(j, i, t);
      if (i == t) rhs[i * n + t] = K.one();
    }
  auto e = linalg::solve(K, M, rhs);
  if (!e) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (b.mul(b.basis(i), *e) != b.basis(i)) return std::nullopt;
  return e;
}

KMatrix left_matrix(const FiniteAlgebra& b, const FElem& x) {
  const auto& K = b.k;
  auto L = linalg::zeros(K, b.dim, b.dim);
  for (std::size_t i = 0; i < b.dim; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.dim; ++j)
      for (std::size_t t = 0; t < b.dim; ++t) {
        const auto& g = b.g(i, j, t);
        if (!g.is_zero()) L(t, j) = K.add(L(t, j), K.mul(x[i], g));
      }
  }
  return L;
}

bool is_commutative(const FiniteAlgebra& b) {
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = i + 1; j < b.dim; ++j)
      for (std::size_t t = 0; t < b.dim; ++t)
        if (b.g(i, j, t) != b.g(j, i, t)) return false;
  return true;
}

bool is_associative(const FiniteAlgebra& b) {
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j) {
      auto ij = b.mul(b.basis(i), b.basis(j));
      for (std::size_t l = 0; l < b.dim; ++l)
        if (b.mul(ij, b.basis(l)) != b.mul(b.basis(i), b.mul(b.basis(j), b.basis(l)))) return false;
    }
  return true;
}

// ---------------------------------------------------------------- radical

namespace {

// The Galois ring W_s(K) = (Z/p^s)[y]/(mu~)[x]/(g~) lifting K = F_p[y]/(mu)[x]/(g).
// An element is the array of its coefficients at x^j y^t, index j * e + t.
class GaloisLift {
 public:
  using V = std::vector<std::int64_t>;

  GaloisLift(const ResidueField& k, unsigned s) : k_(k) {
    const auto& F = k.base();
    p_ = F.characteristic();
    e_ = F.degree();
    d_ = k.degree();
    mod_ = 1;
    for (unsigned i = 0; i < s; ++i) mod_ *= p_;
    if (e_ > 1)
      for (auto c : F.modulus()) mu_.push_back(c);
    for (int j = 0; j <= static_cast<int>(d_); ++j) {
      Elem c = j < static_cast<int>(k.modulus().c.size()) ? k.modulus().c[j] : 0;
      g_.push_back(digits(c));
    }
  }

  std::size_t size() const { return static_cast<std::size_t>(e_) * d_; }

  V lift(const Poly& a) const {
    V v(size(), 0);
    for (std::size_t j = 0; j < a.c.size(); ++j) {
      auto dg = digits(a.c[j]);
      for (unsigned t = 0; t < e_; ++t) v[j * e_ + t] = dg[t];
    }
    return v;
  }

  // (a / p^i) mod p read back in K.
  Poly lower(const V& a, unsigned i) const {
    std::int64_t pi = 1;
    for (unsigned r = 0; r < i; ++r) pi *= p_;
    std::vector<Elem> c(d_);
    std::vector<std::uint32_t> dg(e_);
    for (unsigned j = 0; j < d_; ++j) {
      for (unsigned t = 0; t < e_; ++t) dg[t] = static_cast<std::uint32_t>((a[j * e_ + t] / pi) % p_);
      c[j] = k_.base().from_coeffs(dg);
    }
    return k_.ring().from_coeffs(std::move(c));
  }

  V add(const V& a, const V& b) const {
    V r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % mod_;
    return r;
  }

  V mul(const V& a, const V& b) const {
    if (size() == 1) return V{(a[0] * b[0]) % mod_};
    std::vector<V> prod(2 * d_ - 1, V(e_, 0));
    for (unsigned i = 0; i < d_; ++i)
      for (unsigned j = 0; j < d_; ++j) {
        auto c = ymul(&a[i * e_], &b[j * e_]);
        for (unsigned t = 0; t < e_; ++t) prod[i + j][t] = (prod[i + j][t] + c[t]) % mod_;
      }
    for (int j = 2 * static_cast<int>(d_) - 2; j >= static_cast<int>(d_); --j) {
      const V c = prod[j];
      for (unsigned t = 0; t < d_; ++t) {
        auto s = ymul(c.data(), g_[t].data());
        auto& dst = prod[j - d_ + t];
        for (unsigned u = 0; u < e_; ++u) dst[u] = ((dst[u] - s[u]) % mod_ + mod_) % mod_;
      }
    }
    V r(size());
    for (unsigned j = 0; j < d_; ++j)
      for (unsigned t = 0; t < e_; ++t) r[j * e_ + t] = prod[j][t];
    return r;
  }

 private:
  V digits(Elem c) const {
    auto dg = k_.base().coeffs(c);
    V v(e_, 0);
    for (unsigned t = 0; t < e_ && t < dg.size(); ++t) v[t] = dg[t];
    return v;
  }

  V ymul(const std::int64_t* a, const std::int64_t* b) const {
    if (e_ == 1) return V{(a[0] * b[0]) % mod_};
    V r(2 * e_ - 1, 0);
    for (unsigned i = 0; i < e_; ++i)
      for (unsigned j = 0; j < e_; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % mod_;
    for (int j = 2 * static_cast<int>(e_) - 2; j >= static_cast<int>(e_); --j) {
      auto c = r[j];
      if (!c) continue;
      for (unsigned t = 0; t < e_; ++t) r[j - e_ + t] = ((r[j - e_ + t] - c * mu_[t]) % mod_ + mod_) % mod_;
    }
    r.resize(e_);
    return r;
  }

  const ResidueField& k_;
  std::uint32_t p_;
  unsigned e_, d_;
  std::int64_t mod_;
  std::vector<std::int64_t> mu_;
  std::vector<V> g_;
};

using GMatrix = std::vector<GaloisLift::V>;  // row-major N x N

GMatrix gmul(const GaloisLift& W, const GMatrix& a, const GMatrix& b, std::size_t n) {
  GMatrix c(n * n, GaloisLift::V(W.size(), 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      const auto& x = a[i * n + l];
      if (std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; })) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const auto& y = b[l * n + j];
        if (std::all_of(y.begin(), y.end(), [](auto v) { return v == 0; })) continue;
        c[i * n + j] = W.add(c[i * n + j], W.mul(x, y));
      }
    }
  return c;
}

// g_i(U) = Tr(U~^{p^i}) / p^i mod p, for any lift U~ of U.
Poly trace_power(const ResidueField& K, const KMatrix& u, unsigned i) {
  const std::size_t n = u.rows;
  if (i == 0) {
    Poly t;
    for (std::size_t r = 0; r < n; ++r) t = K.add(t, u(r, r));
    return t;
  }
  GaloisLift W(K, i + 1);
  GMatrix m(n * n);
  for (std::size_t r = 0; r < n * n; ++r) m[r] = W.lift(u.data[r]);
  const std::uint32_t p = K.characteristic();
  for (unsigned r = 0; r < i; ++r) {
    // m <- m^p
    GMatrix acc = m;
    for (std::uint32_t s = 1; s < p; ++s) acc = gmul(W, acc, m, n);
    m = std::move(acc);
  }
  GaloisLift::V t(W.size(), 0);
  for (std::size_t r = 0; r < n; ++r) t = W.add(t, m[r * n + r]);
  return W.lower(t, i);
}

FiniteAlgebra unitize(const FiniteAlgebra& b) {
  const std::size_t n = b.dim + 1;
  FiniteAlgebra u{b.k, n, std::vector<Poly>(n * n * n)};
  for (std::size_t i = 0; i < n; ++i) {
    u.gamma[(0 * n + i) * n + i] = b.k.one();
    u.gamma[(i * n + 0) * n + i] = b.k.one();
  }
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j)
      for (std::size_t t = 0; t < b.dim; ++t) u.gamma[((i + 1) * n + (j + 1)) * n + (t + 1)] = b.g(i, j, t);
  return u;
}

KMatrix kmul(const ResidueField& K, const KMatrix& a, const KMatrix& b) { return linalg::multiply(K, a, b); }

}  // namespace

std::vector<FElem> radical(const FiniteAlgebra& b) {
  if (b.dim == 0) return {};
  const auto& K = b.k;
  const bool unital = identity(b).has_value();
  const FiniteAlgebra a = unital ? b : unitize(b);
  const std::size_t n = a.dim, off = unital ? 0 : 1;
  std::vector<KMatrix> L(n);
  for (std::size_t i = 0; i < n; ++i) L[i] = left_matrix(a, a.basis(i));

  unsigned top = 0;
  for (std::uint64_t pw = K.characteristic(); pw <= n; pw *= K.characteristic()) ++top;

  std::vector<FElem> ideal;
  for (std::size_t i = 0; i < n; ++i) ideal.push_back(a.basis(i));
  for (unsigned i = 0; i <= top && !ideal.empty(); ++i) {
    // x -> Frob^{-i} g_i(x y) is K-linear on the current ideal.
    auto G = linalg::zeros(K, n, ideal.size());
    for (std::size_t s = 0; s < ideal.size(); ++s) {
      auto Ms = left_matrix(a, ideal[s]);
      for (std::size_t t = 0; t < n; ++t) {
        auto v = trace_power(K, kmul(K, Ms, L[t]), i);
        for (unsigned r = 0; r < i; ++r) v = K.pth_root(v);
        G(t, s) = std::move(v);
      }
    }
    std::vector<FElem> next;
    for (const auto& z : linalg::kernel(K, G)) {
      FElem v = a.zero();
      for (std::size_t s = 0; s < ideal.size(); ++s)
        if (!z[s].is_zero()) v = a.add(v, a.scale(ideal[s], z[s]));
      next.push_back(std::move(v));
    }
    ideal = std::move(next);
  }
  std::vector<FElem> out;
  for (auto& v : ideal) out.emplace_back(v.begin() + off, v.end());
  return out;
}

// ---------------------------------------------------------------- quotients and subalgebras

Quotient quotient(const FiniteAlgebra& b, const std::vector<FElem>& ideal) {
  const auto& K = b.k;
  linalg::EchelonSpan<ResidueField> span(K, b.dim);
  for (const auto& v : ideal) span.insert(v);
  const auto ibasis = span.rows();
  Quotient q{FiniteAlgebra{K, 0, {}}, {}, {}};
  for (std::size_t i = 0; i < b.dim; ++i)
    if (span.insert(b.basis(i))) q.lift.push_back(b.basis(i));
  const std::size_t r = q.lift.size();
  std::vector<FElem> cols = q.lift;
  cols.insert(cols.end(), ibasis.begin(), ibasis.end());
  auto inv = linalg::inverse(K, linalg::from_columns(K, cols, b.dim));
  q.proj = linalg::zeros(K, r, b.dim);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < b.dim; ++j) q.proj(i, j) = (*inv)(i, j);
  q.alg.dim = r;
  q.alg.gamma.assign(r * r * r, Poly{});
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      auto c = linalg::apply(K, q.proj, b.mul(q.lift[i], q.lift[j]));
      for (std::size_t t = 0; t < r; ++t) q.alg.gamma[(i * r + j) * r + t] = std::move(c[t]);
    }
  return q;
}

FElem project(const Quotient& q, const FElem& a) { return linalg::apply(q.alg.k, q.proj, a); }

FElem lift(const Quotient& q, const FElem& a) {
  const auto& K = q.alg.k;
  FElem r(q.proj.cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t t = 0; t < r.size(); ++t)
      if (!q.lift[i][t].is_zero()) r[t] = K.add(r[t], K.mul(a[i], q.lift[i][t]));
  }
  return r;
}

Subalgebra subalgebra(const FiniteAlgebra& b, const std::vector<FElem>& basis) {
  const auto& K = b.k;
  const std::size_t r = basis.size();
  Subalgebra s{FiniteAlgebra{K, r, std::vector<Poly>(r * r * r)}, basis};
  if (r == 0) return s;
  auto M = linalg::from_columns(K, basis, b.dim);
  auto rhs = linalg::zeros(K, b.dim, r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      auto v = b.mul(basis[i], basis[j]);
      for (std::size_t t = 0; t < b.dim; ++t) rhs(t, i * r + j) = std::move(v[t]);
    }
  auto sol = linalg::solve_many(K, M, rhs);
  if (!sol) throw ValidationError("subspace is not closed under multiplication");
  for (std::size_t ij = 0; ij < r * r; ++ij)
    for (std::size_t t = 0; t < r; ++t) s.alg.gamma[ij * r + t] = (*sol)(t, ij);
  return s;
}

std::vector<FElem> generated(const FiniteAlgebra& b, const std::vector<FElem>& gens) {
  linalg::EchelonSpan<ResidueField> span(b.k, b.dim);
  std::vector<FElem> basis;
  for (const auto& g : gens)
    if (span.insert(g)) basis.push_back(g);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      for (const auto& v : {b.mul(basis[i], basis[j]), b.mul(basis[j], basis[i])})
        if (span.insert(v)) basis.push_back(v);
    }
  return basis;
}

std::vector<FElem> center(const FiniteAlgebra& b) {
  const auto& K = b.k;
  const std::size_t n = b.dim;
  auto M = linalg::zeros(K, n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t s = 0; s < n; ++s) M(i * n + t, s) = K.sub(b.g(s, i, t), b.g(i, s, t));
  return linalg::kernel(K, M);
}

FiniteAlgebra restrict_scalars(const FiniteAlgebra& b) {
  const auto& K = b.k;
  const std::size_t d = K.degree(), n = b.dim * d;
  FiniteAlgebra r{ResidueField(K.base()), n, std::vector<Poly>(n * n * n)};
  for (std::size_t i1 = 0; i1 < b.dim; ++i1)
    for (std::size_t i2 = 0; i2 < b.dim; ++i2)
      for (std::size_t t = 0; t < b.dim; ++t) {
        const auto& g = b.g(i1, i2, t);
        if (g.is_zero()) continue;
        for (std::size_t j1 = 0; j1 < d; ++j1)
          for (std::size_t j2 = 0; j2 < d; ++j2) {
            auto c = K.mul(K.ring().monomial(1, static_cast<int>(j1 + j2)), g);
            for (std::size_t j = 0; j < c.c.size(); ++j)
              if (c.c[j]) r.gamma[((i1 * d + j1) * n + (i2 * d + j2)) * n + (t * d + j)] = Poly{{c.c[j]}};
          }
      }
  return r;
}

FElem to_base_coords(const FiniteAlgebra& b, const FElem& a) {
  const std::size_t d = b.k.degree();
  FElem r(b.dim * d);
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = 0; j < a[i].c.size(); ++j)
      if (a[i].c[j]) r[i * d + j] = Poly{{a[i].c[j]}};
  return r;
}

FElem from_base_coords(const FiniteAlgebra& b, const FElem& a_base) {
  const std::size_t d = b.k.degree();
  FElem r(b.dim);
  for (std::size_t i = 0; i < b.dim; ++i) {
    std::vector<Elem> c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = a_base[i * d + j].is_zero() ? 0 : a_base[i * d + j].c[0];
    r[i] = b.k.ring().from_coeffs(std::move(c));
  }
  return r;
}

// ---------------------------------------------------------------- idempotents

namespace {

FElem random_combination(const FiniteAlgebra& b, const std::vector<FElem>& basis, std::mt19937_64& rng) {
  FElem v = b.zero();
  for (const auto& u : basis) v = b.add(v, b.scale(u, b.k.random(rng)));
  return v;
}

// Ascending monic minimal polynomial of z over the base field, in the unital
// subalgebra with identity eps.
std::vector<Poly> element_min_poly(const FiniteAlgebra& b, const FElem& z, const FElem& eps) {
  const auto& K = b.k;
  std::vector<FElem> powers{eps};
  for (;;) {
    auto next = b.mul(powers.back(), z);
    auto M = linalg::from_columns(K, powers, b.dim);
    if (auto c = linalg::solve(K, M, next)) {
      std::vector<Poly> mp(powers.size() + 1);
      for (std::size_t i = 0; i < powers.size(); ++i) mp[i] = K.neg((*c)[i]);
      mp.back() = K.one();
      return mp;
    }
    powers.push_back(std::move(next));
  }
}

std::vector<FElem> independent(const FiniteAlgebra& b, const std::vector<FElem>& vs) {
  std::vector<FElem> out;
  for (auto i : linalg::greedy_independent(b.k, vs, b.dim)) out.push_back(vs[i]);
  return out;
}

std::vector<FElem> corner(const FiniteAlgebra& b, const FElem& e, const FElem& f) {
  std::vector<FElem> vs;
  for (std::size_t i = 0; i < b.dim; ++i) vs.push_back(b.mul(b.mul(e, b.basis(i)), f));
  return independent(b, vs);
}

bool commute(const FiniteAlgebra& b, const std::vector<FElem>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (b.mul(vs[i], vs[j]) != b.mul(vs[j], vs[i])) return false;
  return true;
}

// Run f on the restriction of b to F_q and map the resulting elements back.
template <class Fn>
std::vector<FElem> via_base(const FiniteAlgebra& b, Fn&& f) {
  auto r = restrict_scalars(b);
  std::vector<FElem> out;
  for (const auto& v : f(r)) out.push_back(from_base_coords(b, v));
  return out;
}

}  // namespace

std::vector<FElem> commutative_idempotents(const FiniteAlgebra& b, const std::vector<FElem>& s, const FElem& eps,
                                           std::mt19937_64& rng) {
  const auto& K = b.k;
  if (K.degree() != 1) throw Unsupported("commutative_idempotents needs an algebra over F_q");
  const auto q = K.base().order();
  // Elements with z^q = z form the subalgebra F_q^r, r = number of primitive
  // idempotents.
  auto S = linalg::from_columns(K, s, b.dim);
  auto F = linalg::zeros(K, s.size(), s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    auto c = linalg::solve(K, S, b.sub(b.pow(s[j], q, eps), s[j]));
    if (!c) throw ValidationError("spanning set is not a subalgebra");
    for (std::size_t i = 0; i < s.size(); ++i) F(i, j) = (*c)[i];
  }
  std::vector<FElem> fixed;
  for (const auto& z : linalg::kernel(K, F)) {
    FElem v = b.zero();
    for (std::size_t j = 0; j < s.size(); ++j)
      if (!z[j].is_zero()) v = b.add(v, b.scale(s[j], z[j]));
    fixed.push_back(std::move(v));
  }

  std::vector<FElem> out;
  std::vector<std::pair<FElem, std::vector<FElem>>> work{{eps, fixed}};
  while (!work.empty()) {
    auto [e, fix] = std::move(work.back());
    work.pop_back();
    if (fix.size() <= 1) {
      out.push_back(e);
      continue;
    }
    for (int attempt = 0;; ++attempt) {
      if (attempt > 256) throw Unsupported("commutative splitting did not converge");
      auto z = random_combination(b, fix, rng);
      auto mp = element_min_poly(b, z, e);
      Poly f;
      for (auto& c : mp) f.c.push_back(c.is_zero() ? 0 : c.c[0]);
      auto rts = roots(K.ring(), f, rng());
      if (rts.size() < 2) continue;
      const auto& Fq = K.base();
      for (std::size_t i = 0; i < rts.size(); ++i) {
        FElem ei = e;
        for (std::size_t j = 0; j < rts.size(); ++j) {
          if (j == i) continue;
          auto lin = b.sub(z, b.scale(e, K.from_base(rts[j])));
          ei = b.scale(b.mul(ei, lin), K.from_base(Fq.inv(Fq.sub(rts[i], rts[j]))));
        }
        std::vector<FElem> sub;
        for (const auto& v : fix) sub.push_back(b.mul(ei, v));
        work.emplace_back(ei, independent(b, sub));
      }
      break;
    }
  }
  return out;
}

std::vector<FElem> central_idempotents(const FiniteAlgebra& b, std::uint64_t seed) {
  auto one = identity(b);
  if (!one) throw NotUnital("central idempotents need an identity");
  auto z = subalgebra(b, independent(b, center(b)));
  auto zr = restrict_scalars(z.alg);
  auto zone = identity(zr);
  std::vector<FElem> all;
  for (std::size_t i = 0; i < zr.dim; ++i) all.push_back(zr.basis(i));
  std::mt19937_64 rng(seed);
  std::vector<FElem> out;
  for (const auto& e : commutative_idempotents(zr, all, *zone, rng)) {
    auto c = from_base_coords(z.alg, e);
    FElem v = b.zero();
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i].is_zero()) v = b.add(v, b.scale(z.embed[i], c[i]));
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<FElem>> primitive_idempotents_by_component(const FiniteAlgebra& b, std::uint64_t seed) {
  if (b.k.degree() != 1) {
    auto r = restrict_scalars(b);
    auto groups = primitive_idempotents_by_component(r, seed);
    for (auto& g : groups)
      for (auto& e : g) e = from_base_coords(b, e);
    return groups;
  }
  std::mt19937_64 rng(seed);
  auto zbasis = independent(b, center(b));
  std::vector<std::vector<FElem>> groups;
  for (const auto& c : central_idempotents(b, rng())) {
    std::vector<FElem> prims;
    std::vector<FElem> work{c};
    while (!work.empty()) {
      auto eps = std::move(work.back());
      work.pop_back();
      auto cb = corner(b, eps, eps);
      if (commute(b, cb)) {
        prims.push_back(std::move(eps));
        continue;
      }
      for (int attempt = 0;; ++attempt) {
        if (attempt > 256) throw Unsupported("idempotent splitting did not converge");
        std::vector<FElem> gens{eps, random_combination(b, cb, rng)};
        for (const auto& z : zbasis) gens.push_back(b.mul(z, eps));
        auto s = generated(b, gens);
        auto parts = commutative_idempotents(b, s, eps, rng);
        if (parts.size() < 2) continue;
        for (auto& p : parts) work.push_back(std::move(p));
        break;
      }
    }
    groups.push_back(std::move(prims));
  }
  return groups;
}

std::vector<FElem> primitive_idempotent_system(const FiniteAlgebra& b, std::uint64_t seed) {
  std::vector<FElem> out;
  for (auto& g : primitive_idempotents_by_component(b, seed))
    for (auto& e : g) out.push_back(std::move(e));
  return out;
}

FElem lift_idempotent(const FiniteAlgebra& c, const std::vector<FElem>& rad, const FElem& target) {
  const auto& K = c.k;
  linalg::EchelonSpan<ResidueField> span(K, c.dim);
  for (const auto& r : rad) span.insert(r);
  if (!span.contains(c.sub(c.mul(target, target), target)))
    throw NotIdempotentModRadical("target is not idempotent modulo the radical");
  // e <- 3e^2 - 2e^3 maps r = e^2 - e to r^2 (4r - 3), so r dies in
  // O(log nilpotency index) steps in every characteristic.
  const auto three = K.from_base(K.base().from_int(3)), two = K.from_base(K.base().from_int(2));
  FElem e = target;
  for (int it = 0; it < 64; ++it) {
    auto e2 = c.mul(e, e);
    if (e2 == e) return e;
    e = c.sub(c.scale(e2, three), c.scale(c.mul(e2, e), two));
  }
  throw NotIdempotentModRadical("idempotent lifting did not converge");
}

std::vector<FElem> wm_complement(const FiniteAlgebra& c, std::uint64_t seed) {
  if (c.k.degree() != 1) throw Unsupported("wm_complement needs an algebra over F_q");
  auto one = identity(c);
  if (!one) throw NotUnital("wm_complement needs an identity");
  const auto& K = c.k;
  auto rad = radical(c);
  if (rad.empty()) {
    std::vector<FElem> all;
    for (std::size_t i = 0; i < c.dim; ++i) all.push_back(c.basis(i));
    return all;
  }
  auto Q = quotient(c, rad);
  const auto& qa = Q.alg;
  auto groups = primitive_idempotents_by_component(qa, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);

  // Orthogonal lifts, each inside the corner left free by the previous ones.
  FElem E = c.zero();
  std::vector<std::vector<FElem>> lifted;
  for (const auto& g : groups) {
    std::vector<FElem> lg;
    for (const auto& eb : g) {
      auto rest = c.sub(*one, E);
      auto f = c.mul(c.mul(rest, lift(Q, eb)), rest);
      auto e = lift_idempotent(c, rad, f);
      E = c.add(E, e);
      lg.push_back(std::move(e));
    }
    lifted.push_back(std::move(lg));
  }

  std::vector<FElem> out;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    const auto& lg = lifted[gi];
    const auto& e1 = lg[0];
    // matrix units e1 = u_j v_j with u_j in e1 C e_j, v_j in e_j C e1
    std::vector<FElem> u(g.size()), v(g.size());
    u[0] = e1;
    v[0] = e1;
    for (std::size_t j = 1; j < g.size(); ++j) {
      auto ub = corner(qa, g[0], g[j]).at(0);
      u[j] = c.mul(c.mul(e1, lift(Q, ub)), lg[j]);
      auto W = corner(qa, g[j], g[0]);
      std::vector<FElem> cols;
      for (const auto& w : W) cols.push_back(qa.mul(ub, w));
      auto coef = linalg::solve(K, linalg::from_columns(K, cols, qa.dim), g[0]);
      if (!coef) throw VerificationFailure("no inverse matrix unit in the quotient");
      FElem vb = qa.zero();
      for (std::size_t t = 0; t < W.size(); ++t) vb = qa.add(vb, qa.scale(W[t], (*coef)[t]));
      auto vj = c.mul(c.mul(lg[j], lift(Q, vb)), e1);
      // (u v)^{-1} in e1 C e1 as a finite geometric series
      auto nil = c.sub(e1, c.mul(u[j], vj));
      FElem inv = e1, pw = nil;
      for (std::size_t it = 0; !c.is_zero(pw); ++it) {
        if (it > c.dim) throw VerificationFailure("corner correction is not nilpotent");
        inv = c.add(inv, pw);
        pw = c.mul(pw, nil);
      }
      v[j] = c.mul(vj, inv);
    }
    // Teichmueller lift of a generator of the residue field e1 Q e1.
    auto D = corner(qa, g[0], g[0]);
    const std::size_t d = D.size();
    FElem tau = e1;
    if (d > 1) {
      FElem gen;
      for (int attempt = 0;; ++attempt) {
        if (attempt > 256) throw Unsupported("no field generator found");
        auto a = attempt < static_cast<int>(d) ? D[attempt] : random_combination(qa, D, rng);
        if (element_min_poly(qa, a, g[0]).size() == d + 1) {
          gen = a;
          break;
        }
      }
      std::uint64_t qd = 1;
      for (std::size_t i = 0; i < d; ++i) qd *= K.base().order();
      auto alpha = c.mul(c.mul(e1, lift(Q, gen)), e1);
      for (int it = 0;; ++it) {
        if (it > 256) throw VerificationFailure("Teichmueller iteration did not stabilize");
        auto next = c.pow(alpha, qd, e1);
        if (next == alpha) break;
        alpha = std::move(next);
      }
      tau = alpha;
    }
    std::vector<FElem> taus{e1};
    for (std::size_t s = 1; s < d; ++s) taus.push_back(c.mul(taus.back(), tau));
    for (std::size_t j = 0; j < g.size(); ++j)
      for (std::size_t l = 0; l < g.size(); ++l)
        for (const auto& t : taus) out.push_back(c.mul(c.mul(v[j], t), u[l]));
  }
  return out;
}

}  // namespace fqx::finalg
