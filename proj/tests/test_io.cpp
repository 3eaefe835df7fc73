#include <fstream>
#include <sstream>

#include "doctest.h"

#include "fqx/errors.hpp"
#include "fqx/io.hpp"
#include "support/fixtures.hpp"

using namespace fqx;
using io::json;

TEST_CASE("field elements and rational functions") {
  auto F = ff::Field::make(2, 3);
  RatField K(F);
  auto a = F.generator();
  CHECK(io::elem_from_json(F, io::to_json(F, a)) == a);
  CHECK(io::to_json(F, F.one()) == json::parse("[1,0,0]"));
  auto f = K.make(Poly{{a, 1}}, Poly{{0, 0, 1}});
  CHECK(io::ratfunc_from_json(K, io::to_json(F, f)) == f);
  // unreduced input is canonicalised
  auto g = io::ratfunc_from_json(K, json::parse(R"({"num": [[0,0,0],[1,0,0]], "den": [[0,0,0],[0,0,0],[1,0,0]]})"));
  CHECK(g == K.inv(K.x()));

  auto F5 = ff::Field::make(5);
  CHECK(io::elem_from_json(F5, json::parse("3")) == 3);
  CHECK(io::elem_from_json(F5, json::parse("[3]")) == 3);
  CHECK_THROWS_AS(io::elem_from_json(F5, json::parse("7")), ValidationError);
  CHECK_THROWS_AS(io::elem_from_json(F5, json::parse("\"a\"")), ValidationError);
  CHECK_THROWS_AS(io::ratfunc_from_json(RatField(F5), json::parse(R"({"num": [[1]], "den": []})")), ValidationError);
}

TEST_CASE("field headers") {
  auto F = ff::Field::make(3, 2);
  auto G = io::field_from_json(io::field_header(F));
  CHECK(G == F);
  CHECK_THROWS_AS(io::field_from_json(json::parse(R"({"p": 6})")), ValidationError);
  CHECK_THROWS_AS(io::field_from_json(json::parse(R"({"p": 3, "e": 2, "modulus": [2, 0, 1]})")), ValidationError);
  CHECK_THROWS_AS(io::field_from_json(json::parse(R"({"e": 2})")), ValidationError);
}

TEST_CASE("algebra round trip") {
  auto F = ff::Field::make(2, 2);
  auto A = instance::change_of_basis(F, 2, instance::random_invertible(F, 4, 2, 3));
  auto j = io::algebra_to_json(A);
  auto B = io::algebra_from_json(j);
  CHECK(io::algebra_to_json(B) == j);
  j["gamma"][1].erase(0);
  CHECK_THROWS_AS(io::algebra_from_json(j), ValidationError);
  CHECK_THROWS_AS(io::parse("{\"p\": 2,"), ValidationError);
}

TEST_CASE("frozen quaternion file") {
  std::ifstream in(FQX_TEST_DATA "/nonsplit_quaternions.json");
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  auto A = io::algebra_from_json(io::parse(ss.str()));
  CHECK(io::algebra_to_json(A) == io::algebra_to_json(testing::nonsplit_quaternions()));
}

TEST_CASE("lattice files") {
  auto F = ff::Field::make(3);
  RatField K(F);
  lattice::LatticeBasis b{2, {{K.one(), K.zero()}, {K.x(), K.one()}}};
  auto j = io::lattice_to_json(F, b);
  auto c = io::lattice_from_json(K, j);
  CHECK(c.vectors == b.vectors);
  j["vectors"][0].push_back(io::to_json(F, K.one()));
  CHECK_THROWS_AS(io::lattice_from_json(K, j), ValidationError);
}

TEST_CASE("split output reloads and verifies") {
  auto F = ff::Field::make(3);
  auto A = instance::change_of_basis(F, 2, instance::random_invertible(F, 4, 1, 7));
  auto r = split::split_pipeline(A, 7);
  auto j = io::split_to_json(F, r);
  CHECK(j["verified"] == true);
  CHECK(j["report"]["dimC"] == r.report.c.dim);
  auto images = io::images_from_json(A.field(), j);
  CHECK(split::isomorphism_defect(A, images).empty());
  images[2](0, 1) = A.field().add(images[2](0, 1), A.field().one());
  CHECK_FALSE(split::isomorphism_defect(A, images).empty());
}
