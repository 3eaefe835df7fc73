// fqxsplit: generate, split, and verify algebras isomorphic to M_n(F_q(x)).
//
// Exit codes: 0 ok, 1 verification failed or internal error, 2 NotSplit,
// 3 invalid input, 4 promise violation detected mid-run.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fqx/errors.hpp"
#include "fqx/io.hpp"
#include "fqx/lattice.hpp"
#include "fqx/order.hpp"
#include "fqx/split.hpp"

namespace {

using fqx::io::json;

constexpr int kOk = 0, kFailed = 1, kNotSplit = 2, kInvalid = 3, kPromise = 4;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fqx::ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return fqx::io::parse(ss.str());
}

void write_json(const std::string& path, const json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump() << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump() << '\n';
}

fqx::StructureAlgebra load_algebra(const std::string& path, bool check_assoc) {
  auto a = fqx::io::algebra_from_json(read_json(path));
  if (check_assoc && !a.is_associative()) throw fqx::ValidationError("the algebra is not associative");
  return a;
}

struct Options {
  std::uint32_t p = 2;
  unsigned e = 1, n = 2, max_deg = 1;
  std::uint64_t seed = 0;
  std::string input, second, output, truth, ring = "fx";
  bool check_assoc = false;
};

int run_gen(const Options& o) {
  auto f = fqx::ff::Field::make(o.p, o.e);
  auto q = fqx::instance::random_invertible(f, std::size_t{o.n} * o.n, o.max_deg, o.seed);
  auto a = fqx::instance::change_of_basis(f, o.n, q);
  write_json(o.output, fqx::io::algebra_to_json(a));
  if (!o.truth.empty()) write_json(o.truth, fqx::io::truth_to_json(f, o.n, q));
  return kOk;
}

int run_split(const Options& o) {
  auto a = load_algebra(o.input, o.check_assoc);
  auto r = fqx::split::split_pipeline(a, o.seed);
  write_json(o.output, fqx::io::split_to_json(a.field().field(), r));
  return kOk;
}

int run_maxorder(const Options& o) {
  auto a = load_algebra(o.input, o.check_assoc);
  auto l = o.ring == "fx" ? fqx::order::maximal_order_fqx(a, o.seed) : fqx::order::maximal_order_infinity(a, o.seed);
  write_json(o.output, fqx::io::order_to_json(a.field().field(), l));
  return kOk;
}

int run_reduce(const Options& o) {
  auto j = read_json(o.input);
  fqx::RatField k(fqx::io::field_from_json(j));
  auto b = fqx::io::lattice_from_json(k, j);
  auto [reduced, cert] = fqx::lattice::reduce_basis(k, b);
  auto out = fqx::io::lattice_to_json(k.field(), reduced);
  out["orthogonality_defect"] = fqx::lattice::orthogonality_defect(k, reduced);
  write_json(o.output, out);
  return kOk;
}

int run_verify(const Options& o) {
  auto a = load_algebra(o.input, o.check_assoc);
  auto j = read_json(o.second);
  auto images = fqx::io::images_from_json(a.field(), j);
  if (auto why = fqx::split::isomorphism_defect(a, images); !why.empty()) {
    std::cerr << "invalid: " << why << '\n';
    return kFailed;
  }
  if (j.contains("idempotent")) {
    auto e = fqx::io::vector_from_json(a.field(), j.at("idempotent"));
    if (e.size() != a.dim() || !a.equal(a.mul(e, e), e) || fqx::rank(a, e) != 1) {
      std::cerr << "invalid: the idempotent is not of rank one\n";
      return kFailed;
    }
  }
  std::cerr << "valid\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit isomorphisms of algebras with M_n(F_q(x))"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "random change of basis of M_n(F_q(x))");
  gen->add_option("--p", o.p, "characteristic")->required();
  gen->add_option("--e", o.e, "extension degree");
  gen->add_option("--n", o.n, "matrix size")->required();
  gen->add_option("--max-deg", o.max_deg, "entry degree bound of the change of basis");
  gen->add_option("--seed", o.seed);
  gen->add_option("-o", o.output, "algebra file (default stdout)");
  gen->add_option("--truth", o.truth, "ground-truth file");

  auto* split = app.add_subcommand("split", "compute an explicit isomorphism");
  split->add_option("algebra", o.input)->required();
  split->add_option("--seed", o.seed);
  split->add_flag("--check-associativity", o.check_assoc);
  split->add_option("-o", o.output);

  auto* maxorder = app.add_subcommand("maxorder", "maximal order over F_q[x] or at infinity");
  maxorder->add_option("algebra", o.input)->required();
  maxorder->add_option("--ring", o.ring)->check(CLI::IsMember({"fx", "infty"}));
  maxorder->add_option("--seed", o.seed);
  maxorder->add_flag("--check-associativity", o.check_assoc);
  maxorder->add_option("-o", o.output);

  auto* reduce = app.add_subcommand("reduce", "reduced basis of a lattice");
  reduce->add_option("lattice", o.input)->required();
  reduce->add_option("-o", o.output);

  auto* verify = app.add_subcommand("verify", "check an isomorphism file against an algebra");
  verify->add_option("algebra", o.input)->required();
  verify->add_option("isomorphism", o.second)->required();
  verify->add_flag("--check-associativity", o.check_assoc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*gen) return run_gen(o);
    if (*split) return run_split(o);
    if (*maxorder) return run_maxorder(o);
    if (*reduce) return run_reduce(o);
    if (*verify) return run_verify(o);
  } catch (const fqx::NotSplit& e) {
    std::cerr << e.what() << '\n';
    return kNotSplit;
  } catch (const fqx::PromiseViolation& e) {
    std::cerr << e.what() << '\n';
    return kPromise;
  } catch (const fqx::RootFailure& e) {
    std::cerr << e.what() << '\n';
    return kPromise;
  } catch (const fqx::VerificationFailure& e) {
    std::cerr << e.what() << '\n';
    return kPromise;
  } catch (const fqx::DegenerateSeed& e) {
    std::cerr << e.what() << '\n';
    return kFailed;
  } catch (const fqx::Error& e) {
    // NotUnital, ValidationError, NotSquare, NotPrime, Reducible, ...
    std::cerr << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kFailed;
}
