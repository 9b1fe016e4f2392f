#pragma once

#include <stdexcept>
#include <string>

namespace mlc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (self edge, vertex out of range,
/// accepting an infeasible edge, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// The partial solution reached a state the algorithms guarantee cannot
/// happen. Seeing one of these is a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

enum class ParseErrorKind {
  kMissingDimension,
  kUnsupportedEdgeWeightType,
  kUnsupportedProblemType,
  kCoordinateCountMismatch,
  kMalformed,
  kIo,
};

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what)
      : Error(what), kind_(kind) {}

  ParseErrorKind kind() const noexcept { return kind_; }

 private:
  ParseErrorKind kind_;
};

const char* to_string(ParseErrorKind kind) noexcept;

}  // namespace mlc
