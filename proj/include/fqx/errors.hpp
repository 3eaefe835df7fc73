#pragma once

#include <stdexcept>
#include <string>

namespace fqx {

// Base of every error raised by the library. `kind()` is a stable short tag
// that the CLI and the Python bindings use to map failures to exit codes.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define FQX_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

FQX_DEFINE_ERROR(NotPrime)
FQX_DEFINE_ERROR(Reducible)
FQX_DEFINE_ERROR(Unsupported)
FQX_DEFINE_ERROR(ZeroPolynomial)
FQX_DEFINE_ERROR(NotSquare)
FQX_DEFINE_ERROR(Dependent)
FQX_DEFINE_ERROR(NotFullRank)
FQX_DEFINE_ERROR(NotReduced)
FQX_DEFINE_ERROR(NotUnital)
FQX_DEFINE_ERROR(RootFailure)
FQX_DEFINE_ERROR(DegenerateBasis)
FQX_DEFINE_ERROR(PromiseViolation)
FQX_DEFINE_ERROR(NotIdempotentModRadical)
FQX_DEFINE_ERROR(NotSplit)
FQX_DEFINE_ERROR(BadIdempotent)
FQX_DEFINE_ERROR(VerificationFailure)
FQX_DEFINE_ERROR(ValidationError)
FQX_DEFINE_ERROR(DegenerateSeed)

#undef FQX_DEFINE_ERROR

}  // namespace fqx
