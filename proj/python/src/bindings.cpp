#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fqx/errors.hpp"
#include "fqx/io.hpp"
#include "fqx/lattice.hpp"
#include "fqx/order.hpp"
#include "fqx/split.hpp"

namespace py = pybind11;
using fqx::io::json;

namespace {

std::pair<std::string, std::string> gen(std::uint32_t p, unsigned e, unsigned n, unsigned max_deg, std::uint64_t seed) {
  auto f = fqx::ff::Field::make(p, e);
  auto q = fqx::instance::random_invertible(f, std::size_t{n} * n, max_deg, seed);
  auto a = fqx::instance::change_of_basis(f, n, q);
  return {fqx::io::algebra_to_json(a).dump(), fqx::io::truth_to_json(f, n, q).dump()};
}

fqx::StructureAlgebra load(const std::string& text, bool check_assoc) {
  auto a = fqx::io::algebra_from_json(fqx::io::parse(text));
  if (check_assoc && !a.is_associative()) throw fqx::ValidationError("the algebra is not associative");
  return a;
}

std::string split(const std::string& algebra, std::uint64_t seed, bool check_assoc) {
  auto a = load(algebra, check_assoc);
  auto r = fqx::split::split_pipeline(a, seed);
  return fqx::io::split_to_json(a.field().field(), r).dump();
}

std::string maxorder(const std::string& algebra, const std::string& ring, std::uint64_t seed) {
  if (ring != "fx" && ring != "infty") throw fqx::ValidationError("ring must be fx or infty");
  auto a = load(algebra, false);
  auto l = ring == "fx" ? fqx::order::maximal_order_fqx(a, seed) : fqx::order::maximal_order_infinity(a, seed);
  return fqx::io::order_to_json(a.field().field(), l).dump();
}

std::string reduce(const std::string& text) {
  auto j = fqx::io::parse(text);
  fqx::RatField k(fqx::io::field_from_json(j));
  auto [reduced, cert] = fqx::lattice::reduce_basis(k, fqx::io::lattice_from_json(k, j));
  auto out = fqx::io::lattice_to_json(k.field(), reduced);
  out["orthogonality_defect"] = fqx::lattice::orthogonality_defect(k, reduced);
  return out.dump();
}

// Empty string when valid.
std::string defect(const std::string& algebra, const std::string& iso) {
  auto a = load(algebra, false);
  return fqx::split::isomorphism_defect(a, fqx::io::images_from_json(a.field(), fqx::io::parse(iso)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Explicit isomorphisms of algebras with M_n(F_q(x))";

  static py::exception<fqx::Error> error(m, "FqxError");
  static py::exception<fqx::NotSplit> not_split(m, "NotSplit", error.ptr());
  static py::exception<fqx::PromiseViolation> promise(m, "PromiseViolation", error.ptr());
  static py::exception<fqx::ValidationError> invalid(m, "ValidationError", error.ptr());
  static py::exception<fqx::NotUnital> not_unital(m, "NotUnital", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const fqx::NotSplit& e) {
      not_split(e.what());
    } catch (const fqx::PromiseViolation& e) {
      promise(e.what());
    } catch (const fqx::ValidationError& e) {
      invalid(e.what());
    } catch (const fqx::NotUnital& e) {
      not_unital(e.what());
    } catch (const fqx::Error& e) {
      error(e.what());
    }
  });

  m.def("gen", &gen, py::arg("p"), py::arg("e"), py::arg("n"), py::arg("max_deg"), py::arg("seed"),
        "Random instance; returns (algebra JSON, ground-truth JSON).");
  m.def("split", &split, py::arg("algebra"), py::arg("seed") = 0, py::arg("check_associativity") = false,
        py::call_guard<py::gil_scoped_release>());
  m.def("maxorder", &maxorder, py::arg("algebra"), py::arg("ring") = "fx", py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("reduce", &reduce, py::arg("lattice"));
  m.def("defect", &defect, py::arg("algebra"), py::arg("isomorphism"));
}
