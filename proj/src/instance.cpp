#include "fqx/instance.hpp"

#include <random>

#include "fqx/errors.hpp"

namespace fqx::instance {

StructureAlgebra matrix_units(const ff::Field& f, std::size_t n) {
  RatField K(f);
  const std::size_t m = n * n;
  std::vector<RatFunc> g(m * m * m, K.zero());
  // E_{ab} E_{cd} = [b == c] E_{ad}
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t d = 0; d < n; ++d) g[((a * n + b) * m + (b * n + d)) * m + (a * n + d)] = K.one();
  return StructureAlgebra::make(f, m, std::move(g));
}

StructureAlgebra change_of_basis(const ff::Field& f, std::size_t n, const RatMatrix& q) {
  RatField K(f);
  const std::size_t m = n * n;
  auto qinv = linalg::inverse(K, q);
  if (!qinv) throw ValidationError("change of basis is singular");
  auto imgs = images(K, n, q);
  std::vector<RatFunc> g(m * m * m, K.zero());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      auto prod = linalg::multiply(K, imgs[i], imgs[j]);
      // prod.data is the E-coordinate vector; f-coordinates are q^{-1} of it.
      auto coords = linalg::apply(K, *qinv, prod.data);
      for (std::size_t k = 0; k < m; ++k) g[(i * m + j) * m + k] = std::move(coords[k]);
    }
  return StructureAlgebra::make(f, m, std::move(g));
}

RatMatrix random_invertible(const ff::Field& f, std::size_t m, unsigned max_deg, std::uint64_t seed) {
  RatField K(f);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> coef(0, f.order() - 1);
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto q = linalg::zeros(K, m, m);
    for (auto& e : q.data) {
      std::vector<ff::Elem> c(max_deg + 1);
      for (auto& v : c) v = static_cast<ff::Elem>(coef(rng));
      e = K.from_poly(K.ring().from_coeffs(std::move(c)));
    }
    if (!K.is_zero(linalg::determinant(K, q))) return q;
  }
  throw DegenerateSeed("no invertible matrix after 100 draws");
}

std::vector<RatMatrix> images(const RatField& k, std::size_t n, const RatMatrix& q) {
  const std::size_t m = n * n;
  std::vector<RatMatrix> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    auto img = linalg::zeros(k, n, n);
    for (std::size_t l = 0; l < m; ++l) img.data[l] = q(l, j);
    out.push_back(std::move(img));
  }
  return out;
}

RatMatrix image_of(const RatField& k, const std::vector<RatMatrix>& imgs, const AlgElem& a) {
  auto out = linalg::zeros(k, imgs[0].rows, imgs[0].cols);
  for (std::size_t i = 0; i < imgs.size(); ++i) {
    if (k.is_zero(a[i])) continue;
    for (std::size_t t = 0; t < out.data.size(); ++t)
      if (!k.is_zero(imgs[i].data[t])) out.data[t] = k.add(out.data[t], k.mul(a[i], imgs[i].data[t]));
  }
  return out;
}

}  // namespace fqx::instance
