#include "fqx/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "fqx/errors.hpp"

namespace fqx::lattice {

using ff::Elem;

namespace {

using PolyVec = std::vector<Poly>;

int poly_vec_degree(const PolyVec& v) {
  int d = kNegInf;
  for (const auto& p : v) d = std::max(d, p.degree());
  return d;
}

// Leading-coefficient elimination on polynomial column vectors. While the
// leading coefficient vectors (coefficient of x^{deg v} in each coordinate)
// are dependent, a relation is used to cancel the leading term of the
// highest-degree vector taking part in it. The sum of degrees drops at every
// step, so this terminates with independent leading vectors, i.e. a reduced
// basis. Zero vectors are removed (generator mode). When `transform` is given
// the same column operations are applied to it.
void reduce_columns(const PolyRing& R, std::size_t m, std::vector<PolyVec>& cols,
                    std::vector<PolyVec>* transform) {
  const auto& F = R.field();
  for (;;) {
    for (std::size_t i = 0; i < cols.size();) {
      if (poly_vec_degree(cols[i]) == kNegInf) {
        cols.erase(cols.begin() + i);
        if (transform) transform->erase(transform->begin() + i);
      } else {
        ++i;
      }
    }
    const std::size_t k = cols.size();
    std::vector<int> deg(k);
    for (std::size_t i = 0; i < k; ++i) deg[i] = poly_vec_degree(cols[i]);
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return deg[a] < deg[b]; });

    // Echelon rows of leading vectors with the combination producing them.
    std::vector<std::vector<Elem>> rows, combos;
    std::vector<std::size_t> pivots;
    bool changed = false;
    for (std::size_t idx : order) {
      std::vector<Elem> r(m, 0), comb(k, 0);
      for (std::size_t t = 0; t < m; ++t) {
        const auto& p = cols[idx][t];
        if (p.degree() == deg[idx]) r[t] = p.c.back();
      }
      comb[idx] = 1;
      for (std::size_t s = 0; s < rows.size(); ++s) {
        Elem f = r[pivots[s]];
        if (!f) continue;
        for (std::size_t t = 0; t < m; ++t) r[t] = F.sub(r[t], F.mul(f, rows[s][t]));
        for (std::size_t t = 0; t < k; ++t) comb[t] = F.sub(comb[t], F.mul(f, combos[s][t]));
      }
      std::size_t piv = m;
      for (std::size_t t = 0; t < m; ++t)
        if (r[t]) {
          piv = t;
          break;
        }
      if (piv == m) {
        // sum comb_j LC_j = 0 with comb_idx = 1 and deg_j <= deg_idx.
        for (std::size_t j = 0; j < k; ++j) {
          if (j == idx || !comb[j]) continue;
          const int shift = deg[idx] - deg[j];
          for (std::size_t t = 0; t < m; ++t)
            if (!cols[j][t].is_zero())
              cols[idx][t] = R.add(cols[idx][t], R.shift(R.scale(cols[j][t], comb[j]), shift));
          if (transform)
            for (std::size_t t = 0; t < (*transform)[j].size(); ++t)
              if (!(*transform)[j][t].is_zero())
                (*transform)[idx][t] =
                    R.add((*transform)[idx][t], R.shift(R.scale((*transform)[j][t], comb[j]), shift));
        }
        changed = true;
        break;
      }
      Elem inv = F.inv(r[piv]);
      for (auto& v : r) v = F.mul(v, inv);
      for (auto& v : comb) v = F.mul(v, inv);
      rows.push_back(std::move(r));
      combos.push_back(std::move(comb));
      pivots.push_back(piv);
    }
    if (!changed) return;
  }
}

Poly common_denominator(const RatField& k, const std::vector<Vec>& vs) {
  Poly g = k.ring().one();
  for (const auto& v : vs)
    for (const auto& e : v)
      if (!e.den.is_one()) g = k.ring().lcm(g, e.den);
  return g;
}

std::vector<PolyVec> clear_denominators(const RatField& k, const std::vector<Vec>& vs, const Poly& g) {
  const auto& R = k.ring();
  std::vector<PolyVec> out;
  out.reserve(vs.size());
  for (const auto& v : vs) {
    PolyVec pv(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      pv[i] = v[i].den.is_one() ? R.mul(v[i].num, g) : R.mul(v[i].num, R.quo(g, v[i].den));
    out.push_back(std::move(pv));
  }
  return out;
}

std::vector<Vec> restore(const RatField& k, const std::vector<PolyVec>& cols, const Poly& g) {
  std::vector<Vec> out;
  out.reserve(cols.size());
  for (const auto& c : cols) {
    Vec v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) v[i] = k.make(c[i], g);
    out.push_back(std::move(v));
  }
  return out;
}

linalg::MatrixOf<RatField> basis_matrix(const RatField& k, const LatticeBasis& b) {
  return linalg::from_columns(k, b.vectors, b.m);
}

}  // namespace

int vector_valuation(const Vec& v) {
  int d = kNegInf;
  for (const auto& e : v) d = std::max(d, valuation(e));
  return d;
}

int orthogonality_defect(const RatField& k, const LatticeBasis& b) {
  if (b.vectors.size() != b.m) throw Dependent("a basis needs exactly m vectors");
  auto det = linalg::determinant(k, basis_matrix(k, b));
  if (k.is_zero(det)) throw Dependent("basis vectors are linearly dependent");
  int sum = 0;
  for (const auto& v : b.vectors) sum += vector_valuation(v);
  return sum - valuation(det);
}

std::pair<LatticeBasis, ReductionCertificate> reduce_basis(const RatField& k, const LatticeBasis& b) {
  ReductionCertificate cert;
  cert.od_before = orthogonality_defect(k, b);
  const auto& R = k.ring();
  Poly g = common_denominator(k, b.vectors);
  auto cols = clear_denominators(k, b.vectors, g);
  std::vector<PolyVec> transform(b.m, PolyVec(b.m));
  for (std::size_t i = 0; i < b.m; ++i) transform[i][i] = R.one();
  reduce_columns(R, b.m, cols, &transform);
  if (cols.size() != b.m) throw Dependent("reduction produced a zero vector");
  LatticeBasis out{b.m, restore(k, cols, g)};
  cert.od_after = orthogonality_defect(k, out);
  cert.transform = linalg::Matrix<Poly>(b.m, b.m);
  for (std::size_t j = 0; j < b.m; ++j)
    for (std::size_t i = 0; i < b.m; ++i) cert.transform(i, j) = transform[j][i];
  return {std::move(out), std::move(cert)};
}

LatticeBasis reduce_generators(const RatField& k, const LatticeBasis& gens, linalg::Matrix<Poly>* transform) {
  if (gens.vectors.size() < gens.m ||
      linalg::rank(k, linalg::from_columns(k, gens.vectors, gens.m)) != gens.m)
    throw NotFullRank("generators do not span a full lattice");
  const auto& R = k.ring();
  Poly g = common_denominator(k, gens.vectors);
  auto cols = clear_denominators(k, gens.vectors, g);
  const std::size_t count = cols.size();
  std::vector<PolyVec> track;
  if (transform) {
    track.assign(count, PolyVec(count));
    for (std::size_t i = 0; i < count; ++i) track[i][i] = R.one();
  }
  reduce_columns(R, gens.m, cols, transform ? &track : nullptr);
  if (cols.size() != gens.m) throw NotFullRank("generator reduction lost rank");
  if (transform) {
    *transform = linalg::Matrix<Poly>(count, gens.m);
    for (std::size_t j = 0; j < gens.m; ++j)
      for (std::size_t i = 0; i < count; ++i) (*transform)(i, j) = track[j][i];
  }
  return LatticeBasis{gens.m, restore(k, cols, g)};
}

std::vector<Vec> bounded_elements(const RatField& k, const LatticeBasis& reduced, int bound) {
  if (orthogonality_defect(k, reduced) != 0) throw NotReduced("bounded_elements needs a reduced basis");
  std::vector<Vec> out;
  for (const auto& c : reduced.vectors) {
    const int dv = vector_valuation(c);
    for (int j = 0; j + dv <= bound; ++j) {
      Vec v(c.size());
      auto xj = k.from_poly(k.ring().monomial(1, j));
      for (std::size_t i = 0; i < c.size(); ++i) v[i] = k.mul(c[i], xj);
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::optional<Vec> coordinates(const RatField& k, const LatticeBasis& b, const Vec& v) {
  return linalg::solve(k, basis_matrix(k, b), v);
}

bool contains(const RatField& k, const LatticeBasis& b, const Vec& v) {
  auto c = coordinates(k, b, v);
  if (!c) return false;
  for (const auto& e : *c)
    if (!k.is_polynomial(e)) return false;
  return true;
}

}  // namespace fqx::lattice
