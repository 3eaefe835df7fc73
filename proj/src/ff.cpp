#include "fqx/ff.hpp"

#include <string>

#include "fqx/errors.hpp"
#include "fqx/poly.hpp"

namespace fqx::ff {

namespace {

constexpr std::uint64_t kMaxExtensionOrder = 1u << 20;
constexpr std::uint64_t kMaxAddTable = 1024;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return (a * b) % m;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t k, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (k) {
    if (k & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    k >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct Field::Impl {
  std::uint32_t p = 2;
  unsigned e = 1;
  std::uint64_t q = 2;
  std::vector<std::uint32_t> modulus;
  // Extension fields only.
  std::vector<Elem> exp;              // exp[i] = g^i, i < 2(q-1)
  std::vector<std::uint32_t> log;     // log[a] for a != 0
  std::vector<Elem> add_table;        // q*q entries when q <= kMaxAddTable

  Elem digit_add(Elem a, Elem b, bool subtract) const {
    Elem r = 0, base = 1;
    for (unsigned i = 0; i < e; ++i) {
      std::uint32_t da = a % p, db = b % p;
      a /= p;
      b /= p;
      std::uint32_t d = subtract ? (da + p - db) % p : (da + db) % p;
      r += d * base;
      base *= p;
    }
    return r;
  }

  // Schoolbook product of residue polynomials reduced by the modulus; only
  // used while building the tables.
  Elem slow_mul(Elem a, Elem b) const {
    std::vector<std::uint64_t> da(e), db(e), prod(2 * e, 0);
    for (unsigned i = 0; i < e; ++i) {
      da[i] = a % p;
      a /= p;
      db[i] = b % p;
      b /= p;
    }
    for (unsigned i = 0; i < e; ++i)
      for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    for (int k = 2 * static_cast<int>(e) - 1; k >= static_cast<int>(e); --k) {
      std::uint64_t t = prod[k];
      if (!t) continue;
      prod[k] = 0;
      for (unsigned i = 0; i < e; ++i)
        prod[k - e + i] = (prod[k - e + i] + (p - t) * modulus[i]) % p;
    }
    Elem r = 0, base = 1;
    for (unsigned i = 0; i < e; ++i) {
      r += static_cast<Elem>(prod[i]) * base;
      base *= p;
    }
    return r;
  }

  void build_tables() {
    auto divisors = prime_divisors(q - 1);
    Elem gen = 0;
    for (Elem cand = (q == 2 ? 1 : 2); cand < q && !gen; ++cand) {
      bool primitive = true;
      for (auto d : divisors) {
        std::uint64_t k = (q - 1) / d;
        Elem r = 1, b = cand;
        while (k) {
          if (k & 1) r = slow_mul(r, b);
          b = slow_mul(b, b);
          k >>= 1;
        }
        if (r == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) gen = cand;
    }
    exp.resize(2 * (q - 1));
    log.assign(q, 0);
    Elem cur = 1;
    for (std::uint64_t i = 0; i < q - 1; ++i) {
      exp[i] = exp[i + q - 1] = cur;
      log[cur] = static_cast<std::uint32_t>(i);
      cur = slow_mul(cur, gen);
    }
    if (q <= kMaxAddTable) {
      add_table.resize(q * q);
      for (Elem a = 0; a < q; ++a)
        for (Elem b = 0; b < q; ++b) add_table[a * q + b] = digit_add(a, b, false);
    }
  }
};

Field Field::make(std::uint32_t p, unsigned e, std::optional<std::vector<std::uint32_t>> modulus) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (e == 0) throw ValidationError("extension degree must be >= 1");
  if (p >= (1u << 31)) throw Unsupported("characteristic must be < 2^31");
  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->e = e;
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (e > 1 && q > kMaxExtensionOrder)
      throw Unsupported("extension fields are limited to q <= 2^20");
  }
  impl->q = q;
  if (e == 1) {
    if (modulus && modulus->size() > 2) throw ValidationError("prime field modulus must be linear");
    return Field(std::move(impl));
  }

  Field base = make(p, 1);
  PolyRing ring(base);
  if (modulus) {
    auto m = *modulus;
    if (m.size() != e + 1) throw ValidationError("modulus must have degree e");
    for (auto c : m)
      if (c >= p) throw ValidationError("modulus coefficient out of range");
    if (m.back() != 1) {
      Elem inv = base.inv(m.back());
      for (auto& c : m) c = base.mul(c, inv);
    }
    if (!is_irreducible(ring, ring.from_coeffs({m.begin(), m.end()})))
      throw Reducible("supplied modulus factors over F_" + std::to_string(p));
    impl->modulus = std::move(m);
  } else {
    std::uint64_t count = q;  // p^e candidates for the lower coefficients
    for (std::uint64_t t = 0; t < count; ++t) {
      std::vector<Elem> c(e + 1);
      std::uint64_t v = t;
      for (unsigned i = 0; i < e; ++i) {
        c[i] = static_cast<Elem>(v % p);
        v /= p;
      }
      c[e] = 1;
      if (c[0] == 0) continue;
      if (is_irreducible(ring, ring.from_coeffs(c))) {
        impl->modulus.assign(c.begin(), c.end());
        break;
      }
    }
  }
  impl->build_tables();
  return Field(std::move(impl));
}

std::uint32_t Field::characteristic() const { return impl_->p; }
unsigned Field::degree() const { return impl_->e; }
std::uint64_t Field::order() const { return impl_->q; }
const std::vector<std::uint32_t>& Field::modulus() const { return impl_->modulus; }

Elem Field::add(Elem a, Elem b) const {
  const auto& im = *impl_;
  if (im.e == 1) {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Elem>(s >= im.p ? s - im.p : s);
  }
  if (!im.add_table.empty()) return im.add_table[a * im.q + b];
  return im.digit_add(a, b, false);
}

Elem Field::sub(Elem a, Elem b) const {
  const auto& im = *impl_;
  if (im.e == 1) return a >= b ? a - b : static_cast<Elem>(std::uint64_t{a} + im.p - b);
  return im.digit_add(a, b, true);
}

Elem Field::neg(Elem a) const { return sub(0, a); }

Elem Field::mul(Elem a, Elem b) const {
  const auto& im = *impl_;
  if (im.e == 1) return static_cast<Elem>(mulmod(a, b, im.p));
  if (a == 0 || b == 0) return 0;
  return im.exp[im.log[a] + im.log[b]];
}

Elem Field::inv(Elem a) const {
  const auto& im = *impl_;
  if (a == 0) throw std::domain_error("inverse of zero in F_q");
  if (im.e == 1) return static_cast<Elem>(powmod(a, im.p - 2, im.p));
  return im.exp[(im.q - 1 - im.log[a]) % (im.q - 1)];
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  Elem r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

Elem Field::from_int(std::int64_t v) const {
  std::int64_t p = impl_->p;
  return static_cast<Elem>(((v % p) + p) % p);
}

Elem Field::generator() const { return impl_->e == 1 ? 1 : impl_->p; }

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
  std::vector<std::uint32_t> out(impl_->e);
  for (auto& c : out) {
    c = a % impl_->p;
    a /= impl_->p;
  }
  return out;
}

Elem Field::from_coeffs(std::span<const std::uint32_t> c) const {
  if (c.size() != impl_->e)
    throw ValidationError("field element needs exactly " + std::to_string(impl_->e) + " residues");
  Elem r = 0, base = 1;
  for (auto d : c) {
    if (d >= impl_->p) throw ValidationError("residue out of range");
    r += d * base;
    base *= impl_->p;
  }
  return r;
}

bool Field::operator==(const Field& o) const {
  return impl_ == o.impl_ ||
         (impl_->p == o.impl_->p && impl_->e == o.impl_->e && impl_->modulus == o.impl_->modulus);
}

Elem pth_root(const Field& f, Elem a) {
  Elem r = a;
  for (unsigned i = 1; i < f.degree(); ++i) r = f.frobenius(r);
  return r;
}

}  // namespace fqx::ff
