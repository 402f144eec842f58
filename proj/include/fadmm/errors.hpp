#pragma once

#include <stdexcept>
#include <string>

namespace fadmm {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape mismatch between operands. Message always names both shapes.
class DimError : public Error {
 public:
  using Error::Error;
};

// Bad scalar parameter (nonpositive mu, k out of range, theta <= 1, ...).
class ParamError : public Error {
 public:
  using Error::Error;
};

// d(x) hit zero or below where a ratio was required. Carries the offending value.
class DenominatorError : public Error {
 public:
  DenominatorError(const std::string& what, double d) : Error(what), d_value(d) {}
  double d_value;
};

// Solver variant requested on a problem that cannot support it.
class UnsupportedVariantError : public Error {
 public:
  using Error::Error;
};

// Malformed input text (config files, LIBSVM data). Carries a 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line) : Error(what), line_number(line) {}
  long line_number;
};

// NaN/Inf crossed a boundary it must not cross.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace fadmm
