#include "fqx/algebra.hpp"

#include <cmath>

#include "fqx/errors.hpp"

namespace fqx {

StructureAlgebra::StructureAlgebra(RatField k, std::size_t m, std::vector<RatFunc> gamma)
    : k_(std::move(k)), m_(m), gamma_(std::move(gamma)) {
  n_ = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m))));
  const std::uint64_t p = k_.field().characteristic();
  cof_ = n_;
  while (cof_ % p == 0) {
    cof_ /= p;
    ++r_;
  }
  sparse_.resize(m_ * m_);
  for (std::size_t ij = 0; ij < m_ * m_; ++ij)
    for (std::size_t t = 0; t < m_; ++t)
      if (!k_.is_zero(gamma_[ij * m_ + t])) sparse_[ij].emplace_back(t, gamma_[ij * m_ + t]);
}

StructureAlgebra StructureAlgebra::make(ff::Field f, std::size_t m, std::vector<RatFunc> gamma) {
  if (m == 0) throw ValidationError("algebra dimension must be positive");
  auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(m))));
  if (n * n != m) throw ValidationError("algebra dimension " + std::to_string(m) + " is not a perfect square");
  if (gamma.size() != m * m * m) throw ValidationError("structure constant array has the wrong size");
  return StructureAlgebra(RatField(std::move(f)), m, std::move(gamma));
}

AlgElem StructureAlgebra::basis(std::size_t i) const {
  auto v = zero();
  v[i] = k_.one();
  return v;
}

AlgElem StructureAlgebra::add(const AlgElem& a, const AlgElem& b) const {
  AlgElem r(m_);
  for (std::size_t i = 0; i < m_; ++i) r[i] = k_.add(a[i], b[i]);
  return r;
}

AlgElem StructureAlgebra::sub(const AlgElem& a, const AlgElem& b) const {
  AlgElem r(m_);
  for (std::size_t i = 0; i < m_; ++i) r[i] = k_.sub(a[i], b[i]);
  return r;
}

AlgElem StructureAlgebra::scale(const AlgElem& a, const RatFunc& s) const {
  AlgElem r(m_);
  for (std::size_t i = 0; i < m_; ++i) r[i] = k_.mul(a[i], s);
  return r;
}

AlgElem StructureAlgebra::mul(const AlgElem& a, const AlgElem& b) const {
  auto r = zero();
  for (std::size_t i = 0; i < m_; ++i) {
    if (k_.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < m_; ++j) {
      if (k_.is_zero(b[j])) continue;
      const auto& row = sparse_[i * m_ + j];
      if (row.empty()) continue;
      auto ab = k_.mul(a[i], b[j]);
      for (const auto& [t, g] : row) r[t] = k_.add(r[t], k_.mul(ab, g));
    }
  }
  return r;
}

bool StructureAlgebra::is_zero(const AlgElem& a) const {
  for (const auto& v : a)
    if (!k_.is_zero(v)) return false;
  return true;
}

bool StructureAlgebra::equal(const AlgElem& a, const AlgElem& b) const { return a == b; }

bool StructureAlgebra::is_associative() const {
  std::vector<AlgElem> prod(m_ * m_);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j) prod[i * m_ + j] = mul(basis(i), basis(j));
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t l = 0; l < m_; ++l)
        if (!equal(mul(prod[i * m_ + j], basis(l)), mul(basis(i), prod[j * m_ + l]))) return false;
  return true;
}

AlgElem find_identity(const StructureAlgebra& a) {
  const auto& K = a.field();
  const std::size_t m = a.dim();
  // e a_i = a_i: sum_j e_j gamma_jik = delta_ik, m^2 equations in e.
  auto M = linalg::zeros(K, m * m, m);
  std::vector<RatFunc> rhs(m * m, K.zero());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t j = 0; j < m; ++j) M(i * m + k, j) = a.gamma(j, i, k);
      if (i == k) rhs[i * m + k] = K.one();
    }
  auto e = linalg::solve(K, M, rhs);
  if (!e) throw NotUnital("no left identity exists");
  for (std::size_t i = 0; i < m; ++i)
    if (!a.equal(a.mul(a.basis(i), *e), a.basis(i))) throw NotUnital("left identity is not a right identity");
  return *e;
}

linalg::MatrixOf<RatField> regular_representation(const StructureAlgebra& a, const AlgElem& x) {
  const std::size_t m = a.dim();
  auto L = linalg::zeros(a.field(), m, m);
  for (std::size_t j = 0; j < m; ++j) {
    auto col = a.mul(x, a.basis(j));
    for (std::size_t i = 0; i < m; ++i) L(i, j) = std::move(col[i]);
  }
  return L;
}

namespace {

RatFunc trace_of(const RatField& K, const linalg::MatrixOf<RatField>& L) {
  RatFunc t = K.zero();
  for (std::size_t i = 0; i < L.rows; ++i) t = K.add(t, L(i, i));
  return t;
}

}  // namespace

RatFunc reduced_trace(const StructureAlgebra& a, const AlgElem& x) {
  const auto& K = a.field();
  const auto& F = K.field();
  auto L = regular_representation(a, x);
  if (a.p_exponent() == 0) return K.div(trace_of(K, L), K.constant(F.from_int(static_cast<std::int64_t>(a.n()))));
  // char poly of L is (reduced char poly)^n; with n = p^r k its coefficient
  // at X^{n^2 - p^r} is -k tr^{p^r}.
  auto chi = linalg::charpoly(K, L);
  const std::size_t pr = a.n() / a.p_cofactor();
  auto c = K.neg(chi[a.dim() - pr]);
  c = K.div(c, K.constant(F.from_int(static_cast<std::int64_t>(a.p_cofactor()))));
  auto num = K.ring().ppow_root(c.num, a.p_exponent());
  auto den = K.ring().ppow_root(c.den, a.p_exponent());
  if (!num || !den) throw RootFailure("trace coefficient is not a p^r-th power");
  return K.make(*num, *den);
}

std::vector<RatFunc> trace_functional(const StructureAlgebra& a) {
  const auto& K = a.field();
  std::vector<RatFunc> t(a.dim());
  if (a.p_exponent() == 0) {
    auto inv_n = K.inv(K.constant(K.field().from_int(static_cast<std::int64_t>(a.n()))));
    for (std::size_t i = 0; i < a.dim(); ++i) {
      RatFunc s = K.zero();
      for (std::size_t j = 0; j < a.dim(); ++j) s = K.add(s, a.gamma(i, j, j));
      t[i] = K.mul(s, inv_n);
    }
    return t;
  }
  for (std::size_t i = 0; i < a.dim(); ++i) t[i] = reduced_trace(a, a.basis(i));
  return t;
}

RatFunc discriminant(const StructureAlgebra& a, const std::vector<AlgElem>& basis) {
  const auto& K = a.field();
  const std::size_t m = a.dim();
  if (basis.size() != m) throw DegenerateBasis("discriminant needs m basis elements");
  auto t = trace_functional(a);
  auto G = linalg::zeros(K, m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      auto prod = a.mul(basis[i], basis[j]);
      RatFunc s = K.zero();
      for (std::size_t k = 0; k < m; ++k)
        if (!K.is_zero(prod[k])) s = K.add(s, K.mul(prod[k], t[k]));
      G(i, j) = s;
      G(j, i) = s;
    }
  auto d = linalg::determinant(K, G);
  if (K.is_zero(d)) throw DegenerateBasis("trace form is degenerate on the basis");
  return K.scale(d, K.field().inv(K.ring().lead(d.num)));
}

std::size_t rank(const StructureAlgebra& a, const AlgElem& x) {
  auto r = linalg::rank(a.field(), regular_representation(a, x));
  if (r % a.n() != 0) throw PromiseViolation("dim(xA) is not a multiple of n");
  return r / a.n();
}

std::vector<RatFunc> min_poly(const StructureAlgebra& a, const AlgElem& x) {
  const auto& K = a.field();
  const std::size_t m = a.dim();
  auto L = regular_representation(a, x);
  // Krylov on flattened powers I, L, L^2, ... until the first dependency.
  auto flat = [&](const linalg::MatrixOf<RatField>& M) { return M.data; };
  std::vector<std::vector<RatFunc>> powers;
  auto P = linalg::identity(K, m);
  for (;;) {
    auto v = flat(P);
    if (!powers.empty()) {
      auto A = linalg::from_columns(K, powers, m * m);
      if (auto c = linalg::solve(K, A, v)) {
        std::vector<RatFunc> mp(powers.size() + 1);
        for (std::size_t i = 0; i < powers.size(); ++i) mp[i] = K.neg((*c)[i]);
        mp.back() = K.one();
        return mp;
      }
    }
    powers.push_back(std::move(v));
    P = linalg::multiply(K, L, P);
  }
}

StructureAlgebra flip(const StructureAlgebra& a) {
  const auto& K = a.field();
  std::vector<RatFunc> g(a.gamma().size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = flip_variable(K, a.gamma()[i]);
  return StructureAlgebra::make(K.field(), a.dim(), std::move(g));
}

}  // namespace fqx
