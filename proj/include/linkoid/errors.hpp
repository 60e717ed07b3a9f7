#pragma once

#include <stdexcept>
#include <string>

namespace linkoid {

// Base for all errors thrown by the library.  Subtypes exist so callers can
// distinguish bad input from size guards without string matching.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  std::string locus;  // json pointer-ish path or "line N"
  ParseError(const std::string& what, std::string where)
      : Error(what + " (at " + where + ")"), locus(std::move(where)) {}
};

struct InvalidDiagram : Error {
  using Error::Error;
};

struct SizeMismatch : Error {
  using Error::Error;
};

// Enumeration or state-sum size guard tripped.
struct TooLarge : Error {
  using Error::Error;
};

struct MultiComponent : Error {
  using Error::Error;
};

struct ClosedComponent : Error {
  using Error::Error;
};

struct EmptyList : Error {
  using Error::Error;
};

struct UnsupportedSelector : Error {
  using Error::Error;
};

struct NoExcisableArc : Error {
  using Error::Error;
};

struct IrregularProjection : Error {
  std::string feature;  // which regularity check failed
  IrregularProjection(const std::string& what, std::string which)
      : Error(what), feature(std::move(which)) {}
};

struct SamplingFailure : Error {
  using Error::Error;
};

}  // namespace linkoid
