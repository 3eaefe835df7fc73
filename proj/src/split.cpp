#include "fqx/split.hpp"

#include <algorithm>

#include "fqx/errors.hpp"
#include "fqx/lattice.hpp"

namespace fqx::split {

namespace {

using PolyVec = std::vector<Poly>;

PolyVec lambda_mul(const PolyRing& R, const order::OrderRep& l, const PolyVec& u, const PolyVec& v) {
  const std::size_t m = l.dim();
  PolyVec out(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (v[j].is_zero()) continue;
      auto uv = R.mul(u[i], v[j]);
      for (std::size_t t = 0; t < m; ++t)
        if (!l.c(i, j, t).is_zero()) out[t] = R.add(out[t], R.mul(uv, l.c(i, j, t)));
    }
  }
  return out;
}

// Coefficients of a polynomial vector, padded to degree < width.
std::vector<ff::Elem> flatten(const PolyVec& v, std::size_t width) {
  std::vector<ff::Elem> out(v.size() * width, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].c.size() > width) return {};
    std::copy(v[i].c.begin(), v[i].c.end(), out.begin() + i * width);
  }
  return out;
}

AlgElem to_ambient(const RatField& k, const order::OrderRep& l, const PolyVec& coords) {
  const std::size_t m = l.dim();
  AlgElem out(m, k.zero());
  for (std::size_t i = 0; i < m; ++i) {
    if (coords[i].is_zero()) continue;
    auto c = k.from_poly(coords[i]);
    for (std::size_t t = 0; t < m; ++t)
      if (!k.is_zero(l.basis[i][t])) out[t] = k.add(out[t], k.mul(c, l.basis[i][t]));
  }
  return out;
}

}  // namespace

IntersectionReport intersect_orders(const StructureAlgebra& a, const order::OrderRep& lambda,
                                    const order::OrderRep& delta) {
  const auto& k = a.field();
  const auto& R = k.ring();
  const auto& F = k.field();
  const std::size_t m = a.dim();
  struct {
    std::vector<AlgElem> c_basis;
    std::vector<PolyVec> c_lambda_coords;
    std::vector<int> d_values;
    int d_min = 0, d_max = 0;
    std::vector<std::vector<RatFunc>> reduced_c;
  } rep;

  auto U = linalg::from_columns(k, delta.basis, m);
  auto alpha = linalg::solve_many(k, U, linalg::from_columns(k, lambda.basis, m));
  if (!alpha) throw VerificationFailure("Δ basis is singular");
  lattice::LatticeBasis lat{m, {}};
  for (std::size_t j = 0; j < m; ++j) {
    lat.vectors.push_back(alpha->column(j));
    rep.d_values.push_back(lattice::vector_valuation(lat.vectors.back()));
  }
  rep.d_min = *std::min_element(rep.d_values.begin(), rep.d_values.end());
  rep.d_max = *std::max_element(rep.d_values.begin(), rep.d_values.end());

  auto [reduced, cert] = lattice::reduce_basis(k, lat);
  rep.reduced_c = reduced.vectors;
  for (std::size_t i = 0; i < m; ++i) {
    const int v = lattice::vector_valuation(reduced.vectors[i]);
    for (int j = 0; j + v <= 0; ++j) {
      PolyVec coords(m);
      for (std::size_t t = 0; t < m; ++t) coords[t] = R.shift(cert.transform(t, i), j);
      rep.c_basis.push_back(to_ambient(k, lambda, coords));
      rep.c_lambda_coords.push_back(std::move(coords));
    }
  }

  // Structure constants of C over F_q.
  const std::size_t dim = rep.c_basis.size();
  finalg::ResidueField K(F);
  finalg::FiniteAlgebra c{K, dim, std::vector<Poly>(dim * dim * dim)};
  if (dim == 0) throw VerificationFailure("C is zero");
  std::size_t width = 1;
  for (const auto& v : rep.c_lambda_coords)
    for (const auto& p : v) width = std::max(width, p.c.size());
  linalg::Matrix<ff::Elem> basis_mat(m * width, dim, 0);
  for (std::size_t j = 0; j < dim; ++j) {
    auto f = flatten(rep.c_lambda_coords[j], width);
    for (std::size_t r = 0; r < f.size(); ++r) basis_mat(r, j) = f[r];
  }
  linalg::Matrix<ff::Elem> rhs(m * width, dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      auto f = flatten(lambda_mul(R, lambda, rep.c_lambda_coords[i], rep.c_lambda_coords[j]), width);
      if (f.empty()) throw VerificationFailure("C is not closed under multiplication");
      for (std::size_t r = 0; r < f.size(); ++r) rhs(r, i * dim + j) = f[r];
    }
  auto sol = linalg::solve_many(F, basis_mat, rhs);
  if (!sol) throw VerificationFailure("C is not closed under multiplication");
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t t = 0; t < dim; ++t) c.gamma[(i * dim + j) * dim + t] = K.from_base((*sol)(t, i * dim + j));

  auto one = finalg::identity(c);
  if (!one) throw VerificationFailure("C has no identity");
  AlgElem e = a.zero();
  for (std::size_t i = 0; i < dim; ++i)
    if (!(*one)[i].is_zero()) e = a.add(e, a.scale(rep.c_basis[i], k.from_poly((*one)[i])));
  if (!a.equal(e, find_identity(a))) throw VerificationFailure("the identity of C is not 1_A");
  return IntersectionReport{std::move(rep.c_basis), std::move(rep.c_lambda_coords), std::move(rep.d_values), rep.d_min,
                            rep.d_max, std::move(rep.reduced_c), std::move(c)};
}

AlgElem select_rank_one(const StructureAlgebra& a, const IntersectionReport& c, std::uint64_t seed) {
  const auto& k = a.field();
  auto comp = finalg::subalgebra(c.c, finalg::wm_complement(c.c, seed));
  for (const auto& eps : finalg::primitive_idempotent_system(comp.alg, seed)) {
    auto in_c = c.c.zero();
    for (std::size_t i = 0; i < eps.size(); ++i)
      if (!eps[i].is_zero()) in_c = c.c.add(in_c, c.c.scale(comp.embed[i], eps[i]));
    AlgElem e = a.zero();
    for (std::size_t i = 0; i < in_c.size(); ++i)
      if (!in_c[i].is_zero()) e = a.add(e, a.scale(c.c_basis[i], k.from_poly(in_c[i])));
    if (rank(a, e) == 1) return e;
  }
  throw NotSplit("no rank one idempotent in C; the algebra is not split");
}

std::string isomorphism_defect(const StructureAlgebra& a, const std::vector<instance::RatMatrix>& images) {
  const auto& k = a.field();
  const std::size_t m = a.dim(), n = a.n();
  if (images.size() != m) return "wrong number of images";
  for (const auto& M : images)
    if (M.rows != n || M.cols != n) return "image has the wrong shape";
  auto combine = [&](const AlgElem& x) {
    auto M = linalg::zeros(k, n, n);
    for (std::size_t t = 0; t < m; ++t)
      if (!k.is_zero(x[t]))
        for (std::size_t r = 0; r < n * n; ++r) M.data[r] = k.add(M.data[r], k.mul(x[t], images[t].data[r]));
    return M;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto lhs = linalg::multiply(k, images[i], images[j]);
      AlgElem prod(m);
      for (std::size_t t = 0; t < m; ++t) prod[t] = a.gamma(i, j, t);
      if (!linalg::equal(k, lhs, combine(prod))) return "phi is not multiplicative";
    }
  AlgElem one;
  try {
    one = find_identity(a);
  } catch (const NotUnital&) {
    return "the algebra has no identity";
  }
  if (!linalg::equal(k, combine(one), linalg::identity(k, n))) return "phi(1) is not the identity";
  std::vector<std::vector<RatFunc>> flat;
  for (const auto& M : images) flat.push_back(M.data);
  if (linalg::greedy_independent(k, flat, n * n).size() != m) return "phi is not injective";
  return {};
}

Isomorphism explicit_isomorphism(const StructureAlgebra& a, const AlgElem& e) {
  const auto& k = a.field();
  const std::size_t m = a.dim(), n = a.n();
  if (!a.equal(a.mul(e, e), e)) throw BadIdempotent("e is not idempotent");
  std::vector<AlgElem> ae;
  for (std::size_t i = 0; i < m; ++i) ae.push_back(a.mul(a.basis(i), e));
  Isomorphism iso;
  iso.n = n;
  for (auto idx : linalg::greedy_independent(k, ae, m)) iso.left_ideal_basis.push_back(ae[idx]);
  if (iso.left_ideal_basis.size() != n) throw BadIdempotent("dim Ae is not n");

  auto V = linalg::from_columns(k, iso.left_ideal_basis, m);
  auto rhs = linalg::zeros(k, m, m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto w = a.mul(a.basis(i), iso.left_ideal_basis[j]);
      for (std::size_t r = 0; r < m; ++r) rhs(r, i * n + j) = w[r];
    }
  auto sol = linalg::solve_many(k, V, rhs);
  if (!sol) throw VerificationFailure("Ae is not a left ideal");
  for (std::size_t i = 0; i < m; ++i) {
    auto M = linalg::zeros(k, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t j = 0; j < n; ++j) M(r, j) = (*sol)(r, i * n + j);
    iso.images.push_back(std::move(M));
  }

  if (auto why = isomorphism_defect(a, iso.images); !why.empty()) throw VerificationFailure(why);
  iso.verified = true;
  return iso;
}

SplitResult split_pipeline(const StructureAlgebra& a, std::uint64_t seed) {
  find_identity(a);
  auto lambda = order::maximal_order_fqx(a, seed);
  auto delta = order::maximal_order_infinity(a, seed);
  auto report = intersect_orders(a, lambda, delta);
  auto e = select_rank_one(a, report, seed);
  auto iso = explicit_isomorphism(a, e);
  return SplitResult{std::move(e), std::move(iso), std::move(report), std::move(lambda), std::move(delta)};
}

}  // namespace fqx::split
