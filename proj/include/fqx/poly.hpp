#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "fqx/ff.hpp"

namespace fqx {

// Degree of the zero polynomial, valuation of the zero rational function.
inline constexpr int kNegInf = std::numeric_limits<int>::min();

// Dense univariate polynomial over F_q, ascending coefficients, never with a
// trailing zero. The zero polynomial has no coefficients.
struct Poly {
  std::vector<ff::Elem> c;

  int degree() const { return c.empty() ? kNegInf : static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }
  bool operator==(const Poly&) const = default;
};

class PolyRing {
 public:
  explicit PolyRing(ff::Field f) : f_(std::move(f)) {}

  const ff::Field& field() const { return f_; }

  Poly zero() const { return {}; }
  Poly one() const { return Poly{{1}}; }
  Poly x() const { return Poly{{0, 1}}; }
  Poly constant(ff::Elem a) const;
  Poly monomial(ff::Elem a, int k) const;
  Poly from_coeffs(std::vector<ff::Elem> c) const;  // trims trailing zeros

  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly scale(const Poly& a, ff::Elem s) const;
  Poly shift(const Poly& a, int k) const;  // a * x^k, k >= 0

  // Throws ZeroPolynomial on division by zero.
  std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
  Poly quo(const Poly& a, const Poly& b) const { return divmod(a, b).first; }
  Poly rem(const Poly& a, const Poly& b) const;
  bool divides(const Poly& d, const Poly& a) const;

  ff::Elem lead(const Poly& a) const { return a.c.empty() ? 0 : a.c.back(); }
  Poly monic(const Poly& a) const;
  Poly gcd(const Poly& a, const Poly& b) const;  // monic (zero iff both zero)
  Poly lcm(const Poly& a, const Poly& b) const;  // monic
  Poly pow(const Poly& a, std::uint64_t k) const;
  Poly pow_mod(const Poly& a, std::uint64_t k, const Poly& m) const;
  Poly derivative(const Poly& a) const;
  ff::Elem eval(const Poly& a, ff::Elem t) const;
  // Reversal against degree d: x^d a(1/x). Requires deg a <= d.
  Poly reverse(const Poly& a, int d) const;

  // s with s^(p^r) = a, or nullopt when a is not a p^r-th power.
  std::optional<Poly> ppow_root(const Poly& a, unsigned r) const;

  // Total order used for deterministic sorting of factors: by degree, then
  // coefficients from the top down.
  bool less(const Poly& a, const Poly& b) const;

 private:
  ff::Field f_;
};

// Unit times a product of distinct monic irreducibles with multiplicities,
// sorted by PolyRing::less.
struct Factorization {
  ff::Elem unit = 0;
  std::vector<std::pair<Poly, unsigned>> factors;
};

// Squarefree decomposition, distinct-degree splitting, then equal-degree
// splitting: Berlekamp (deterministic, seed ignored) when q <= 16, otherwise
// Cantor-Zassenhaus driven by `seed`. Throws ZeroPolynomial.
Factorization factor_poly(const PolyRing& ring, const Poly& f, std::uint64_t seed = 0);
bool is_irreducible(const PolyRing& ring, const Poly& f);
// Distinct roots in F_q of f != 0, ascending by encoding.
std::vector<ff::Elem> roots(const PolyRing& ring, const Poly& f, std::uint64_t seed = 0);

// Element of F_q(x) in canonical form: den monic, gcd(num, den) = 1, zero is
// 0/1.
struct RatFunc {
  Poly num;
  Poly den{{1}};

  bool operator==(const RatFunc&) const = default;
};

// F_q(x) as a linear-algebra domain; every constructor canonicalizes.
class RatField {
 public:
  using Elem = RatFunc;

  explicit RatField(ff::Field f) : ring_(std::move(f)) {}

  const PolyRing& ring() const { return ring_; }
  const ff::Field& field() const { return ring_.field(); }

  // Throws ValidationError when den is zero.
  RatFunc make(Poly num, Poly den) const;
  RatFunc from_poly(Poly p) const { return RatFunc{std::move(p), ring_.one()}; }
  RatFunc constant(ff::Elem a) const { return from_poly(ring_.constant(a)); }
  RatFunc x() const { return from_poly(ring_.x()); }

  RatFunc zero() const { return {}; }
  RatFunc one() const { return from_poly(ring_.one()); }
  bool is_zero(const RatFunc& a) const { return a.num.is_zero(); }
  bool equal(const RatFunc& a, const RatFunc& b) const { return a == b; }
  bool is_polynomial(const RatFunc& a) const { return a.den.is_one(); }

  RatFunc add(const RatFunc& a, const RatFunc& b) const;
  RatFunc sub(const RatFunc& a, const RatFunc& b) const;
  RatFunc neg(const RatFunc& a) const;
  RatFunc mul(const RatFunc& a, const RatFunc& b) const;
  RatFunc inv(const RatFunc& a) const;  // a != 0
  RatFunc div(const RatFunc& a, const RatFunc& b) const { return mul(a, inv(b)); }
  RatFunc scale(const RatFunc& a, ff::Elem s) const;
  RatFunc pow(const RatFunc& a, int k) const;  // k may be negative for a != 0

  // Pivoting heuristic for elimination: size of the canonical form.
  int cost(const RatFunc& a) const;

 private:
  PolyRing ring_;
};

// deg num - deg den; kNegInf for zero.
int valuation(const RatFunc& r);
// True iff valuation(r) <= 0, i.e. r lies in the valuation ring at infinity.
bool is_in_R(const RatFunc& r);
// The same function written in y = 1/x, canonicalized.
RatFunc flip_variable(const RatField& k, const RatFunc& r);

}  // namespace fqx
