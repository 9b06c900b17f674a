#pragma once

#include <stdexcept>
#include <string>

namespace gammareg {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidDomain : Error {
  using Error::Error;
};
struct ResolutionTooSmall : Error {
  using Error::Error;
};
struct AllInfinite : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct DimensionTooHigh : Error {
  using Error::Error;
};
struct OutsideHull : Error {
  using Error::Error;
};
struct NonlinearTilt : Error {
  using Error::Error;
};
struct SubsetNotInM : Error {
  using Error::Error;
};
struct RadiusBelowResolution : Error {
  using Error::Error;
};
struct DensityHypothesisFails : Error {
  using Error::Error;
};
struct ConvexityHypothesisFails : Error {
  using Error::Error;
};

/// Expression-language errors carry a byte position (1-based line/column).
struct SyntaxError : Error {
  int line, column;
  SyntaxError(const std::string& what, int line_, int column_)
      : Error(what + " (line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};
struct UnknownIdentifier : Error {
  using Error::Error;
};
struct ArityError : Error {
  using Error::Error;
};
struct EvalError : Error {
  using Error::Error;
};

/// Problem-spec / CLI input errors.
struct SpecError : Error {
  using Error::Error;
};

}  // namespace gammareg
