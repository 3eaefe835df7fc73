#include "doctest.h"

#include <random>

#include "fqx/errors.hpp"
#include "fqx/ff.hpp"

using fqx::ff::Elem;
using fqx::ff::Field;

TEST_CASE("prime field arithmetic") {
  auto f2 = Field::make(2);
  CHECK(f2.order() == 2);
  CHECK(f2.add(1, 1) == 0);
  auto f7 = Field::make(7);
  CHECK(f7.mul(3, 5) == 1);
  CHECK(f7.inv(3) == 5);
  CHECK(f7.from_int(-1) == 6);
}

TEST_CASE("make_field validates its inputs") {
  CHECK_THROWS_AS(Field::make(4), fqx::NotPrime);
  CHECK_THROWS_AS(Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1}), fqx::Reducible);
  // y^2 + 1 has no root in F_3 (brute force), so it defines F_9.
  int roots = 0;
  for (int t = 0; t < 3; ++t) roots += (t * t + 1) % 3 == 0;
  REQUIRE(roots == 0);
  auto f9 = Field::make(3, 2, std::vector<std::uint32_t>{1, 0, 1});
  CHECK(f9.order() == 9);
  Elem y = f9.generator();
  CHECK(f9.add(f9.mul(y, y), 1) == 0);
}

TEST_CASE("default modulus is the first irreducible candidate") {
  auto f4 = Field::make(2, 2);
  CHECK(f4.modulus() == std::vector<std::uint32_t>{1, 1, 1});
  auto f9 = Field::make(3, 2);
  CHECK(f9.modulus() == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("pth_root examples") {
  auto f4 = Field::make(2, 2);
  CHECK(fqx::ff::pth_root(f4, 0) == 0);
  CHECK(fqx::ff::pth_root(f4, 1) == 1);
  Elem y = f4.generator();
  Elem y1 = f4.add(y, 1);
  // exhaustive: the unique square root of y is y + 1
  for (Elem b = 0; b < 4; ++b) CHECK((f4.mul(b, b) == y) == (b == y1));
  CHECK(fqx::ff::pth_root(f4, y) == y1);
  auto f3 = Field::make(3);
  CHECK(fqx::ff::pth_root(f3, 2) == 2);
}

TEST_CASE("field laws hold exhaustively on small fields") {
  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {3u, 2u}, {2u, 3u}, {5u, 2u}, {3u, 4u}}) {
    auto f = Field::make(p, e);
    const Elem q = static_cast<Elem>(f.order());
    for (Elem a = 0; a < q; ++a) {
      CHECK(f.pow(fqx::ff::pth_root(f, a), p) == a);
      if (a) {
        CHECK(f.pow(a, q - 1) == 1);
        CHECK(f.mul(a, f.inv(a)) == 1);
      }
      for (Elem b = 0; b < q; ++b)
        CHECK(f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b)));
    }
  }
}

TEST_CASE("extension field sampled laws") {
  auto f = Field::make(7, 3);
  std::mt19937 rng(1);
  std::uniform_int_distribution<Elem> d(0, static_cast<Elem>(f.order() - 1));
  for (int i = 0; i < 2000; ++i) {
    Elem a = d(rng), b = d(rng), c = d(rng);
    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    CHECK(f.sub(f.add(a, b), b) == a);
    CHECK(f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b)));
  }
}

TEST_CASE("coefficient serialization") {
  auto f = Field::make(3, 2);
  for (Elem a = 0; a < 9; ++a) CHECK(f.from_coeffs(f.coeffs(a)) == a);
  std::vector<std::uint32_t> bad{3, 0};
  CHECK_THROWS_AS(f.from_coeffs(bad), fqx::ValidationError);
}
