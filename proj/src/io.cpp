#include "fqx/io.hpp"

#include "fqx/errors.hpp"

namespace fqx::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::int64_t integer(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ValidationError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
  return j;
}

}  // namespace

json to_json(const ff::Field& f, ff::Elem a) { return f.coeffs(a); }

json to_json(const ff::Field& f, const Poly& a) {
  json out = json::array();
  for (auto c : a.c) out.push_back(to_json(f, c));
  return out;
}

json to_json(const ff::Field& f, const RatFunc& a) { return {{"num", to_json(f, a.num)}, {"den", to_json(f, a.den)}}; }

json to_json(const ff::Field& f, const std::vector<RatFunc>& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(to_json(f, e));
  return out;
}

ff::Elem elem_from_json(const ff::Field& f, const json& j) {
  if (j.is_number_integer() && f.degree() == 1) {
    auto v = j.get<std::int64_t>();
    if (v < 0 || static_cast<std::uint64_t>(v) >= f.characteristic()) throw ValidationError("residue out of range");
    return static_cast<ff::Elem>(v);
  }
  array(j, "field element");
  std::vector<std::uint32_t> c;
  for (const auto& x : j) {
    auto v = integer(x, "residue");
    if (v < 0 || static_cast<std::uint64_t>(v) >= f.characteristic()) throw ValidationError("residue out of range");
    c.push_back(static_cast<std::uint32_t>(v));
  }
  return f.from_coeffs(c);
}

Poly poly_from_json(const ff::Field& f, const json& j) {
  array(j, "polynomial");
  std::vector<ff::Elem> c;
  for (const auto& x : j) c.push_back(elem_from_json(f, x));
  return PolyRing(f).from_coeffs(std::move(c));
}

RatFunc ratfunc_from_json(const RatField& k, const json& j) {
  return k.make(poly_from_json(k.field(), field(j, "num")), poly_from_json(k.field(), field(j, "den")));
}

std::vector<RatFunc> vector_from_json(const RatField& k, const json& j) {
  std::vector<RatFunc> out;
  for (const auto& x : array(j, "vector")) out.push_back(ratfunc_from_json(k, x));
  return out;
}

json field_header(const ff::Field& f) {
  json h{{"p", f.characteristic()}, {"e", f.degree()}};
  if (f.degree() > 1) h["modulus"] = f.modulus();
  return h;
}

ff::Field field_from_json(const json& j) {
  auto p = integer(field(j, "p"), "p");
  auto e = j.contains("e") ? integer(j.at("e"), "e") : 1;
  if (p < 2 || p > (1 << 30) || e < 1 || e > 30) throw ValidationError("field parameters out of range");
  std::optional<std::vector<std::uint32_t>> modulus;
  if (j.contains("modulus")) {
    std::vector<std::uint32_t> m;
    for (const auto& x : array(j.at("modulus"), "modulus")) m.push_back(static_cast<std::uint32_t>(integer(x, "modulus")));
    modulus = std::move(m);
  }
  try {
    return ff::Field::make(static_cast<std::uint32_t>(p), static_cast<unsigned>(e), modulus);
  } catch (const NotPrime& err) {
    throw ValidationError(err.what());
  } catch (const Reducible& err) {
    throw ValidationError(err.what());
  } catch (const Unsupported& err) {
    throw ValidationError(err.what());
  }
}

json algebra_to_json(const StructureAlgebra& a) {
  const auto& f = a.field().field();
  const std::size_t m = a.dim();
  json out = field_header(f);
  out["dim"] = m;
  json g = json::array();
  for (std::size_t i = 0; i < m; ++i) {
    json gi = json::array();
    for (std::size_t j = 0; j < m; ++j) {
      json gij = json::array();
      for (std::size_t k = 0; k < m; ++k) gij.push_back(to_json(f, a.gamma(i, j, k)));
      gi.push_back(std::move(gij));
    }
    g.push_back(std::move(gi));
  }
  out["gamma"] = std::move(g);
  return out;
}

StructureAlgebra algebra_from_json(const json& j) {
  auto f = field_from_json(j);
  RatField k(f);
  auto m = integer(field(j, "dim"), "dim");
  if (m < 1 || m > 4096) throw ValidationError("dim out of range");
  const auto& g = array(field(j, "gamma"), "gamma");
  const auto dim = static_cast<std::size_t>(m);
  if (g.size() != dim) throw ValidationError("gamma must be m x m x m");
  std::vector<RatFunc> gamma;
  gamma.reserve(dim * dim * dim);
  for (const auto& gi : g) {
    if (!gi.is_array() || gi.size() != dim) throw ValidationError("gamma must be m x m x m");
    for (const auto& gij : gi) {
      if (!gij.is_array() || gij.size() != dim) throw ValidationError("gamma must be m x m x m");
      for (const auto& x : gij) gamma.push_back(ratfunc_from_json(k, x));
    }
  }
  return StructureAlgebra::make(f, dim, std::move(gamma));
}

json lattice_to_json(const ff::Field& f, const lattice::LatticeBasis& b) {
  json out = field_header(f);
  out["m"] = b.m;
  json vs = json::array();
  for (const auto& v : b.vectors) vs.push_back(to_json(f, v));
  out["vectors"] = std::move(vs);
  return out;
}

lattice::LatticeBasis lattice_from_json(const RatField& k, const json& j) {
  auto m = integer(field(j, "m"), "m");
  if (m < 1 || m > 4096) throw ValidationError("m out of range");
  lattice::LatticeBasis b{static_cast<std::size_t>(m), {}};
  for (const auto& v : array(field(j, "vectors"), "vectors")) {
    b.vectors.push_back(vector_from_json(k, v));
    if (b.vectors.back().size() != b.m) throw ValidationError("vector length differs from m");
  }
  return b;
}

json order_to_json(const ff::Field& f, const order::OrderRep& l) {
  json out = lattice_to_json(f, lattice::LatticeBasis{l.basis.size(), l.basis});
  out["ring"] = l.ring == order::Ring::FqX ? "fx" : "infty";
  // the disc of an order at infinity is a polynomial in y = 1/x
  out["disc"] = to_json(f, l.disc);
  out["disc_variable"] = l.ring == order::Ring::FqX ? "x" : "1/x";
  return out;
}

json truth_to_json(const ff::Field& f, std::size_t n, const instance::RatMatrix& q) {
  json out = field_header(f);
  out["n"] = n;
  json rows = json::array();
  for (std::size_t i = 0; i < q.rows; ++i) rows.push_back(to_json(f, q.row(i)));
  out["q"] = std::move(rows);
  return out;
}

json split_to_json(const ff::Field& f, const split::SplitResult& r) {
  json images = json::array();
  for (const auto& M : r.iso.images) {
    json rows = json::array();
    for (std::size_t i = 0; i < M.rows; ++i) rows.push_back(to_json(f, M.row(i)));
    images.push_back(std::move(rows));
  }
  json ideal = json::array();
  for (const auto& v : r.iso.left_ideal_basis) ideal.push_back(to_json(f, v));
  json out = field_header(f);
  out["n"] = r.iso.n;
  out["idempotent"] = to_json(f, r.idempotent);
  out["images"] = std::move(images);
  out["left_ideal"] = std::move(ideal);
  out["verified"] = r.iso.verified;
  out["report"] = {{"dimC", r.report.c.dim}, {"dmin", r.report.d_min}, {"dmax", r.report.d_max}};
  return out;
}

std::vector<instance::RatMatrix> images_from_json(const RatField& k, const json& j) {
  auto n = integer(field(j, "n"), "n");
  if (n < 1 || n > 64) throw ValidationError("n out of range");
  const auto nn = static_cast<std::size_t>(n);
  std::vector<instance::RatMatrix> out;
  for (const auto& M : array(field(j, "images"), "images")) {
    if (!M.is_array() || M.size() != nn) throw ValidationError("image must be n x n");
    auto X = linalg::zeros(k, nn, nn);
    for (std::size_t r = 0; r < nn; ++r) {
      auto row = vector_from_json(k, M[r]);
      if (row.size() != nn) throw ValidationError("image must be n x n");
      for (std::size_t c = 0; c < nn; ++c) X(r, c) = row[c];
    }
    out.push_back(std::move(X));
  }
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(e.what());
  }
}

}  // namespace fqx::io
