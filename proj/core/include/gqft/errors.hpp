#pragma once

#include <stdexcept>
#include <string>

namespace gqft {

// Base for every error the library raises. Subclasses name the failing
// contract so callers (and the CLI exit-code mapping) can dispatch on them.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GQFT_DEFINE_ERROR(name)        \
  class name : public Error {          \
   public:                             \
    using Error::Error;                \
  }

GQFT_DEFINE_ERROR(EncodingError);       // malformed element or spec encoding
GQFT_DEFINE_ERROR(DomainError);         // argument outside the operation's domain
GQFT_DEFINE_ERROR(CapabilityError);     // unsupported family / plan / size
GQFT_DEFINE_ERROR(ConstructionError);   // inconsistent representation data
GQFT_DEFINE_ERROR(CertificationError);  // Schur block structure violated
GQFT_DEFINE_ERROR(SynthesisError);      // stage emission failed
GQFT_DEFINE_ERROR(PlanError);           // strategy not applicable to a level
GQFT_DEFINE_ERROR(ValidationError);     // circuit failed validation
GQFT_DEFINE_ERROR(ParseError);          // malformed serialized document
GQFT_DEFINE_ERROR(ExecutionError);      // simulator / layout mismatch
GQFT_DEFINE_ERROR(NormalizationError);  // input function not unit norm

#undef GQFT_DEFINE_ERROR

}  // namespace gqft
