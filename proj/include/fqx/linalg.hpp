#pragma once

// Dense exact linear algebra over any field domain K: F_q (ff::Field) or
// F_q(x) (RatField). A domain supplies Elem, zero/one, add/sub/neg/mul/inv,
// is_zero and cost (pivot preference; smaller is better).

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fqx/errors.hpp"

namespace fqx::linalg {

template <class K>
concept FieldDomain = requires(const K& k, const typename K::Elem& a) {
  { k.zero() };
  { k.one() };
  { k.add(a, a) };
  { k.sub(a, a) };
  { k.mul(a, a) };
  { k.neg(a) };
  { k.inv(a) };
  { k.is_zero(a) } -> std::convertible_to<bool>;
  { k.cost(a) } -> std::convertible_to<int>;
};

template <class T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& fill = T{}) : rows(r), cols(c), data(r * c, fill) {}

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> out(rows);
    for (std::size_t i = 0; i < rows; ++i) out[i] = (*this)(i, j);
    return out;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data.begin() + i * cols, data.begin() + (i + 1) * cols);
  }
};

template <class K>
using MatrixOf = Matrix<typename K::Elem>;
template <class K>
using VectorOf = std::vector<typename K::Elem>;

template <class K>
MatrixOf<K> zeros(const K& k, std::size_t r, std::size_t c) {
  return MatrixOf<K>(r, c, k.zero());
}

template <class K>
MatrixOf<K> identity(const K& k, std::size_t n) {
  auto m = zeros(k, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = k.one();
  return m;
}

// Matrix with the given vectors as columns.
template <class K>
MatrixOf<K> from_columns(const K& k, const std::vector<VectorOf<K>>& cols, std::size_t rows) {
  auto m = zeros(k, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

template <class K>
MatrixOf<K> multiply(const K& k, const MatrixOf<K>& a, const MatrixOf<K>& b) {
  auto r = zeros(k, a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t l = 0; l < a.cols; ++l) {
      const auto& x = a(i, l);
      if (k.is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        if (!k.is_zero(b(l, j))) r(i, j) = k.add(r(i, j), k.mul(x, b(l, j)));
    }
  return r;
}

template <class K>
VectorOf<K> apply(const K& k, const MatrixOf<K>& a, const VectorOf<K>& v) {
  VectorOf<K> r(a.rows, k.zero());
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      if (!k.is_zero(a(i, j)) && !k.is_zero(v[j])) r[i] = k.add(r[i], k.mul(a(i, j), v[j]));
  return r;
}

template <class K>
bool equal(const K& k, const MatrixOf<K>& a, const MatrixOf<K>& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    if (!k.is_zero(k.sub(a.data[i], b.data[i]))) return false;
  return true;
}

// Reduced row echelon form in place; returns pivot columns. Pivot choice in
// each column: nonzero entry of least cost, first index on ties.
template <class K>
std::vector<std::size_t> rref(const K& k, MatrixOf<K>& m, std::size_t col_limit = static_cast<std::size_t>(-1)) {
  std::vector<std::size_t> pivots;
  const std::size_t cols = std::min(m.cols, col_limit);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.rows; ++c) {
    std::size_t best = m.rows;
    int best_cost = 0;
    for (std::size_t i = r; i < m.rows; ++i) {
      if (k.is_zero(m(i, c))) continue;
      int cost = k.cost(m(i, c));
      if (best == m.rows || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    if (best == m.rows) continue;
    if (best != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(best, j));
    auto inv = k.inv(m(r, c));
    for (std::size_t j = c; j < m.cols; ++j)
      if (!k.is_zero(m(r, j))) m(r, j) = k.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || k.is_zero(m(i, c))) continue;
      auto f = m(i, c);
      for (std::size_t j = c; j < m.cols; ++j)
        if (!k.is_zero(m(r, j))) m(i, j) = k.sub(m(i, j), k.mul(f, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K>
std::size_t rank(const K& k, MatrixOf<K> m) {
  return rref(k, m).size();
}

// Throws NotSquare.
template <class K>
typename K::Elem determinant(const K& k, MatrixOf<K> m) {
  if (m.rows != m.cols) throw NotSquare("determinant of a non-square matrix");
  const std::size_t n = m.rows;
  auto det = k.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    int best_cost = 0;
    for (std::size_t i = c; i < n; ++i) {
      if (k.is_zero(m(i, c))) continue;
      int cost = k.cost(m(i, c));
      if (best == n || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    if (best == n) return k.zero();
    if (best != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(best, j));
      det = k.neg(det);
    }
    det = k.mul(det, m(c, c));
    auto inv = k.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (k.is_zero(m(i, c))) continue;
      auto f = k.mul(m(i, c), inv);
      for (std::size_t j = c + 1; j < n; ++j)
        if (!k.is_zero(m(c, j))) m(i, j) = k.sub(m(i, j), k.mul(f, m(c, j)));
    }
  }
  return det;
}

// Basis of the right null space.
template <class K>
std::vector<VectorOf<K>> kernel(const K& k, MatrixOf<K> m) {
  auto pivots = rref(k, m);
  std::vector<bool> is_pivot(m.cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<VectorOf<K>> out;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_pivot[f]) continue;
    VectorOf<K> v(m.cols, k.zero());
    v[f] = k.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = k.neg(m(r, f));
    out.push_back(std::move(v));
  }
  return out;
}

// Some z with m z = b, or nullopt.
template <class K>
std::optional<VectorOf<K>> solve(const K& k, const MatrixOf<K>& m, const VectorOf<K>& b) {
  auto aug = zeros(k, m.rows, m.cols + 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b[i];
  }
  auto pivots = rref(k, aug, m.cols);
  for (std::size_t r = pivots.size(); r < m.rows; ++r)
    if (!k.is_zero(aug(r, m.cols))) return std::nullopt;
  VectorOf<K> z(m.cols, k.zero());
  for (std::size_t r = 0; r < pivots.size(); ++r) z[pivots[r]] = aug(r, m.cols);
  return z;
}

// Solves m Z = B for a full-column-rank m; nullopt when some column has no
// solution.
template <class K>
std::optional<MatrixOf<K>> solve_many(const K& k, const MatrixOf<K>& m, const MatrixOf<K>& rhs) {
  auto aug = zeros(k, m.rows, m.cols + rhs.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    for (std::size_t j = 0; j < rhs.cols; ++j) aug(i, m.cols + j) = rhs(i, j);
  }
  auto pivots = rref(k, aug, m.cols);
  for (std::size_t r = pivots.size(); r < m.rows; ++r)
    for (std::size_t j = 0; j < rhs.cols; ++j)
      if (!k.is_zero(aug(r, m.cols + j))) return std::nullopt;
  auto z = zeros(k, m.cols, rhs.cols);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t j = 0; j < rhs.cols; ++j) z(pivots[r], j) = aug(r, m.cols + j);
  return z;
}

template <class K>
std::optional<MatrixOf<K>> inverse(const K& k, const MatrixOf<K>& m) {
  if (m.rows != m.cols) throw NotSquare("inverse of a non-square matrix");
  auto aug = zeros(k, m.rows, 2 * m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols + i) = k.one();
  }
  auto pivots = rref(k, aug, m.cols);
  if (pivots.size() != m.rows) return std::nullopt;
  auto inv = zeros(k, m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) inv(i, j) = aug(i, m.cols + j);
  return inv;
}

// Characteristic polynomial det(X I - m), ascending coefficients (monic, length
// n + 1), via reduction to Hessenberg form.
template <class K>
VectorOf<K> charpoly(const K& k, MatrixOf<K> h) {
  if (h.rows != h.cols) throw NotSquare("characteristic polynomial of a non-square matrix");
  const std::size_t n = h.rows;
  for (std::size_t m = 1; m + 1 < n + 1 && m < n; ++m) {
    std::size_t piv = n;
    for (std::size_t i = m; i < n; ++i)
      if (!k.is_zero(h(i, m - 1))) {
        piv = i;
        break;
      }
    if (piv == n) continue;
    if (piv != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(m, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, m));
    }
    auto inv = k.inv(h(m, m - 1));
    for (std::size_t i = m + 1; i < n; ++i) {
      if (k.is_zero(h(i, m - 1))) continue;
      auto u = k.mul(h(i, m - 1), inv);
      for (std::size_t j = 0; j < n; ++j)
        if (!k.is_zero(h(m, j))) h(i, j) = k.sub(h(i, j), k.mul(u, h(m, j)));
      for (std::size_t j = 0; j < n; ++j)
        if (!k.is_zero(h(j, i))) h(j, m) = k.add(h(j, m), k.mul(u, h(j, i)));
    }
  }
  // p[j] = char poly of the leading j x j block, ascending coefficients.
  std::vector<VectorOf<K>> p(n + 1);
  p[0] = {k.one()};
  for (std::size_t m = 1; m <= n; ++m) {
    VectorOf<K> next(m + 1, k.zero());
    // (X - h_mm) p[m-1]
    for (std::size_t i = 0; i < p[m - 1].size(); ++i) {
      next[i + 1] = k.add(next[i + 1], p[m - 1][i]);
      next[i] = k.sub(next[i], k.mul(h(m - 1, m - 1), p[m - 1][i]));
    }
    auto t = k.one();
    for (std::size_t i = 1; i < m; ++i) {
      t = k.mul(t, h(m - i, m - i - 1));
      if (k.is_zero(t)) break;
      auto coef = k.mul(t, h(m - i - 1, m - 1));
      if (k.is_zero(coef)) continue;
      for (std::size_t j = 0; j < p[m - i - 1].size(); ++j)
        next[j] = k.sub(next[j], k.mul(coef, p[m - i - 1][j]));
    }
    p[m] = std::move(next);
  }
  return p[n];
}

// Incrementally maintained echelon basis of a subspace of K^n. Used for
// greedy pivoted selection and span membership.
template <class K>
class EchelonSpan {
 public:
  EchelonSpan(const K& k, std::size_t n) : k_(k), n_(n) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }

  // Residual of v after elimination against the stored rows.
  VectorOf<K> reduce(VectorOf<K> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto c = pivots_[r];
      if (k_.is_zero(v[c])) continue;
      auto f = v[c];
      for (std::size_t j = 0; j < n_; ++j)
        if (!k_.is_zero(rows_[r][j])) v[j] = k_.sub(v[j], k_.mul(f, rows_[r][j]));
    }
    return v;
  }

  bool contains(const VectorOf<K>& v) const {
    auto r = reduce(v);
    for (const auto& x : r)
      if (!k_.is_zero(x)) return false;
    return true;
  }

  // Adds v; returns false when v was already in the span.
  bool insert(const VectorOf<K>& v) {
    auto r = reduce(v);
    std::size_t c = n_;
    for (std::size_t j = 0; j < n_; ++j)
      if (!k_.is_zero(r[j])) {
        c = j;
        break;
      }
    if (c == n_) return false;
    auto inv = k_.inv(r[c]);
    for (auto& x : r)
      if (!k_.is_zero(x)) x = k_.mul(x, inv);
    // Keep rows fully reduced against the new pivot.
    for (auto& row : rows_) {
      if (k_.is_zero(row[c])) continue;
      auto f = row[c];
      for (std::size_t j = 0; j < n_; ++j)
        if (!k_.is_zero(r[j])) row[j] = k_.sub(row[j], k_.mul(f, r[j]));
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(c);
    return true;
  }

  const std::vector<VectorOf<K>>& rows() const { return rows_; }

 private:
  K k_;
  std::size_t n_;
  std::vector<VectorOf<K>> rows_;
  std::vector<std::size_t> pivots_;
};

// Indices of a maximal independent subset, chosen greedily in order.
template <class K>
std::vector<std::size_t> greedy_independent(const K& k, const std::vector<VectorOf<K>>& vs, std::size_t n) {
  EchelonSpan<K> span(k, n);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (span.insert(vs[i])) out.push_back(i);
  return out;
}

// Basis of the intersection of two subspaces of K^n given by spanning sets.
template <class K>
std::vector<VectorOf<K>> intersect(const K& k, const std::vector<VectorOf<K>>& a,
                                   const std::vector<VectorOf<K>>& b, std::size_t n) {
  // Solve sum x_i a_i - sum y_j b_j = 0 and map kernel vectors through a.
  auto m = zeros(k, n, a.size() + b.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = a[j][i];
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, a.size() + j) = k.neg(b[j][i]);
  EchelonSpan<K> span(k, n);
  for (const auto& z : kernel(k, m)) {
    VectorOf<K> v(n, k.zero());
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!k.is_zero(z[j]))
        for (std::size_t i = 0; i < n; ++i) v[i] = k.add(v[i], k.mul(z[j], a[j][i]));
    span.insert(v);
  }
  return span.rows();
}

}  // namespace fqx::linalg
