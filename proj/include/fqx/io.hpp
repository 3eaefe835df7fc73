#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "fqx/algebra.hpp"
#include "fqx/instance.hpp"
#include "fqx/lattice.hpp"
#include "fqx/order.hpp"
#include "fqx/split.hpp"

// JSON file formats. Every reader throws ValidationError on malformed input.
//
//   field element  [c_0, ..., c_{e-1}]   (a bare integer is accepted for e = 1)
//   Poly           [elem, ...] ascending
//   RatFunc        {"num": Poly, "den": Poly}
//   algebra        {"p", "e", "modulus"?, "dim", "gamma": m x m x m RatFunc}
//   lattice        {"p", "e", "modulus"?, "m", "vectors": [[RatFunc]], "disc"?}
//   isomorphism    {"n", "idempotent", "images", "left_ideal", "verified", "report"}
//   ground truth   {"p", "e", "modulus"?, "n", "q": m x m RatFunc}
namespace fqx::io {

using nlohmann::json;

json to_json(const ff::Field& f, ff::Elem a);
json to_json(const ff::Field& f, const Poly& a);
json to_json(const ff::Field& f, const RatFunc& a);
json to_json(const ff::Field& f, const std::vector<RatFunc>& v);

ff::Elem elem_from_json(const ff::Field& f, const json& j);
Poly poly_from_json(const ff::Field& f, const json& j);
RatFunc ratfunc_from_json(const RatField& k, const json& j);
std::vector<RatFunc> vector_from_json(const RatField& k, const json& j);

// {"p", "e", "modulus"?} header shared by the file formats.
json field_header(const ff::Field& f);
ff::Field field_from_json(const json& j);

json algebra_to_json(const StructureAlgebra& a);
StructureAlgebra algebra_from_json(const json& j);

json lattice_to_json(const ff::Field& f, const lattice::LatticeBasis& b);
lattice::LatticeBasis lattice_from_json(const RatField& k, const json& j);

// lattice format of the basis plus "disc" and "ring".
json order_to_json(const ff::Field& f, const order::OrderRep& l);

json truth_to_json(const ff::Field& f, std::size_t n, const instance::RatMatrix& q);

json split_to_json(const ff::Field& f, const split::SplitResult& r);
std::vector<instance::RatMatrix> images_from_json(const RatField& k, const json& j);

// Parses text; throws ValidationError on syntax errors.
json parse(const std::string& text);

}  // namespace fqx::io
