#pragma once

#include <stdexcept>
#include <string>

namespace beurling {

// Error families, grouped by how the CLI maps them to exit codes:
//   SpecError          -> exit 2 (bad arguments, malformed files, domain violations)
//   ResourceGuardError -> exit 3 (size/memory guards)
//   NumericError       -> exit 4 (divergence, missing tail models, fit preconditions)
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : SpecError {
  using SpecError::SpecError;
};
struct SignError : SpecError {
  using SpecError::SpecError;
};
struct ParameterError : SpecError {
  using SpecError::SpecError;
};
struct ParseError : SpecError {
  using SpecError::SpecError;
};

struct SizeGuardError : ResourceGuardError {
  using ResourceGuardError::ResourceGuardError;
};

struct DivergenceError : NumericError {
  using NumericError::NumericError;
};
struct TailTooWeakError : NumericError {
  using NumericError::NumericError;
};
struct RangeError : NumericError {
  using NumericError::NumericError;
};
struct NoDensityError : NumericError {
  using NumericError::NumericError;
};
struct FitError : NumericError {
  using NumericError::NumericError;
};
struct ProfileError : NumericError {
  using NumericError::NumericError;
};

}  // namespace beurling
