#pragma once

// Independent brute-force oracles and random instance builders shared by the
// unit tests and the acceptance binary.

#include <cstdint>
#include <random>
#include <vector>

#include "fqx/finalg.hpp"

namespace fqx::testing {

using finalg::FElem;
using finalg::FiniteAlgebra;
using finalg::ResidueField;

// M_N(k) on matrix units, basis index r * N + c.
inline FiniteAlgebra full_matrix_algebra(const ResidueField& k, std::size_t N) {
  const std::size_t m = N * N;
  FiniteAlgebra a{k, m, std::vector<Poly>(m * m * m)};
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t s = 0; s < N; ++s)
      for (std::size_t c = 0; c < N; ++c) a.gamma[((r * N + s) * m + (s * N + c)) * m + (r * N + c)] = k.one();
  return a;
}

// The same algebra on the basis w_i = sum_j q_ji b_j for a random invertible q.
inline FiniteAlgebra disguise(const FiniteAlgebra& a, std::mt19937_64& rng) {
  const auto& K = a.k;
  for (;;) {
    std::vector<FElem> cols;
    for (std::size_t i = 0; i < a.dim; ++i) {
      FElem v(a.dim);
      for (auto& e : v) e = K.random(rng);
      cols.push_back(std::move(v));
    }
    if (linalg::rank(K, linalg::from_columns(K, cols, a.dim)) != a.dim) continue;
    return finalg::subalgebra(a, cols).alg;
  }
}

// A random unital subalgebra of M_N(k), N in {2, 3}, of dimension <= max_dim,
// generated by the identity and one or two random matrices with a random
// block-triangular zero pattern, presented on a random basis.
inline FiniteAlgebra random_unital_algebra(const ResidueField& k, std::size_t max_dim, std::mt19937_64& rng) {
  for (;;) {
    const std::size_t N = 2 + rng() % 2;
    auto M = full_matrix_algebra(k, N);
    FElem one(N * N);
    for (std::size_t i = 0; i < N; ++i) one[i * N + i] = k.one();
    std::vector<FElem> gens{one};
    const int count = 1 + static_cast<int>(rng() % 2);
    for (int g = 0; g < count; ++g) {
      const std::size_t cut = rng() % (N + 1);  // rows >= cut are zero below the diagonal
      FElem v(N * N);
      for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c)
          if (c >= r || r < cut) v[r * N + c] = k.random(rng);
      gens.push_back(std::move(v));
    }
    auto basis = finalg::generated(M, gens);
    if (basis.size() > max_dim) continue;
    return disguise(finalg::subalgebra(M, basis).alg, rng);
  }
}

// Encoding of field elements as integers in [0, |k|).
inline std::uint64_t field_size(const ResidueField& k) {
  std::uint64_t s = 1;
  for (unsigned i = 0; i < k.degree(); ++i) s *= k.base().order();
  return s;
}

inline Poly decode(const ResidueField& k, std::uint64_t v) {
  std::vector<ff::Elem> c(k.degree());
  for (auto& x : c) {
    x = static_cast<ff::Elem>(v % k.base().order());
    v /= k.base().order();
  }
  return k.ring().from_coeffs(std::move(c));
}

inline std::uint64_t encode(const ResidueField& k, const Poly& a) {
  std::uint64_t v = 0;
  for (std::size_t j = a.c.size(); j-- > 0;) v = v * k.base().order() + a.c[j];
  return v;
}

inline std::uint64_t encode(const FiniteAlgebra& a, const FElem& x) {
  const auto q = field_size(a.k);
  std::uint64_t v = 0;
  for (std::size_t i = a.dim; i-- > 0;) v = v * q + encode(a.k, x[i]);
  return v;
}

inline FElem decode(const FiniteAlgebra& a, std::uint64_t v) {
  const auto q = field_size(a.k);
  FElem x(a.dim);
  for (auto& e : x) {
    e = decode(a.k, v % q);
    v /= q;
  }
  return x;
}

// All elements of span(basis).
inline std::vector<FElem> enumerate_span(const FiniteAlgebra& a, const std::vector<FElem>& basis) {
  const auto q = field_size(a.k);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) total *= q;
  std::vector<FElem> out;
  out.reserve(total);
  for (std::uint64_t t = 0; t < total; ++t) {
    FElem v = a.zero();
    auto r = t;
    for (const auto& b : basis) {
      auto c = decode(a.k, r % q);
      r /= q;
      if (!c.is_zero()) v = a.add(v, a.scale(b, c));
    }
    out.push_back(std::move(v));
  }
  return out;
}

inline bool is_nilpotent(const FiniteAlgebra& a, const FElem& x) {
  FElem p = x;
  for (std::size_t i = 0; i < a.dim && !a.is_zero(p); ++i) p = a.mul(p, x);
  return a.is_zero(p);
}

// Largest nilpotent two-sided ideal by exhaustion: x is in it iff every
// element of the two-sided ideal generated by x is nilpotent.
inline std::vector<FElem> brute_radical(const FiniteAlgebra& a) {
  std::vector<FElem> all;
  for (std::size_t i = 0; i < a.dim; ++i) all.push_back(a.basis(i));
  const auto elems = enumerate_span(a, all);
  std::vector<char> nil(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) nil[encode(a, elems[i])] = is_nilpotent(a, elems[i]);
  linalg::EchelonSpan<ResidueField> rad(a.k, a.dim);
  for (const auto& x : elems) {
    if (!nil[encode(a, x)] || rad.contains(x)) continue;
    std::vector<FElem> gens{x};
    for (std::size_t i = 0; i < a.dim; ++i) {
      gens.push_back(a.mul(a.basis(i), x));
      gens.push_back(a.mul(x, a.basis(i)));
      for (std::size_t j = 0; j < a.dim; ++j) gens.push_back(a.mul(a.mul(a.basis(i), x), a.basis(j)));
    }
    std::vector<FElem> ib;
    for (auto idx : linalg::greedy_independent(a.k, gens, a.dim)) ib.push_back(gens[idx]);
    bool ok = true;
    for (const auto& y : enumerate_span(a, ib))
      if (!nil[encode(a, y)]) {
        ok = false;
        break;
      }
    if (ok)
      for (const auto& y : ib) rad.insert(y);
  }
  return rad.rows();
}

inline bool same_span(const ResidueField& k, std::size_t n, const std::vector<FElem>& a, const std::vector<FElem>& b) {
  linalg::EchelonSpan<ResidueField> sa(k, n), sb(k, n);
  for (const auto& v : a) sa.insert(v);
  for (const auto& v : b) sb.insert(v);
  if (sa.dim() != sb.dim()) return false;
  for (const auto& v : b)
    if (!sa.contains(v)) return false;
  return true;
}

// e B e contains no idempotent besides 0 and e (exhaustive).
inline bool is_primitive(const FiniteAlgebra& a, const FElem& e) {
  std::vector<FElem> vs;
  for (std::size_t i = 0; i < a.dim; ++i) vs.push_back(a.mul(a.mul(e, a.basis(i)), e));
  std::vector<FElem> basis;
  for (auto idx : linalg::greedy_independent(a.k, vs, a.dim)) basis.push_back(vs[idx]);
  for (const auto& y : enumerate_span(a, basis))
    if (!a.is_zero(y) && y != e && a.mul(y, y) == y) return false;
  return true;
}

}  // namespace fqx::testing
