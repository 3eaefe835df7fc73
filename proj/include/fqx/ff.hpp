#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace fqx::ff {

// An element of F_{p^e}, encoded as the integer sum c_i p^i of its residue
// polynomial coefficients (ascending degree). The encoding is canonical, so
// equality is integer equality and 0 / 1 are the additive / multiplicative
// identities. Elements are meaningless without the Field that produced them.
using Elem = std::uint32_t;

// The finite field F_p[y]/(modulus). Cheap to copy: the arithmetic tables
// are shared between copies.
class Field {
 public:
  using Elem = ff::Elem;

  // Builds F_{p^e}. Without a modulus (and e > 1) the first irreducible monic
  // polynomial of degree e is used, candidates ordered by the integer whose
  // base-p digits are (c_0, ..., c_{e-1}).
  // Throws NotPrime, Reducible, Unsupported (q > 2^20 for e > 1).
  static Field make(std::uint32_t p, unsigned e = 1,
                    std::optional<std::vector<std::uint32_t>> modulus = {});

  std::uint32_t characteristic() const;
  unsigned degree() const;
  std::uint64_t order() const;
  // Monic modulus over F_p, ascending, e + 1 entries; empty when e == 1.
  const std::vector<std::uint32_t>& modulus() const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  bool equal(Elem a, Elem b) const { return a == b; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // a != 0
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;
  Elem from_int(std::int64_t v) const;  // image in the prime subfield
  Elem frobenius(Elem a) const { return pow(a, characteristic()); }
  // The class of y, a generator of the field over F_p (1 when e == 1).
  Elem generator() const;

  std::vector<std::uint32_t> coeffs(Elem a) const;
  // Throws ValidationError unless exactly e residues in [0, p) are given.
  Elem from_coeffs(std::span<const std::uint32_t> c) const;

  // Linear-algebra domain interface; F_q has no expression swell.
  int cost(Elem) const { return 0; }

  bool operator==(const Field& o) const;

 private:
  struct Impl;
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// b with b^p = a. Frobenius is a bijection on a finite field, so this is
// a^{p^{e-1}}.
Elem pth_root(const Field& f, Elem a);

bool is_prime(std::uint64_t n);

}  // namespace fqx::ff
