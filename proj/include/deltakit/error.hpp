#pragma once

#include <stdexcept>
#include <string>

namespace deltakit {

enum class ErrorKind {
  NonInvertible,
  NotPrime,
  PreconditionViolated,
  InternalMismatch,
  EmptySet,
  InvalidDelta,
  UnsupportedOrder,
  DomainTooSmall,
  CoefficientRangeExceeded,
  QuadratureNonConvergent,
  Overflow,
  Usage,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonInvertible: return "NonInvertible";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InternalMismatch: return "InternalMismatch";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::InvalidDelta: return "InvalidDelta";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::DomainTooSmall: return "DomainTooSmall";
    case ErrorKind::CoefficientRangeExceeded: return "CoefficientRangeExceeded";
    case ErrorKind::QuadratureNonConvergent: return "QuadratureNonConvergent";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so the
/// CLI and tests can dispatch on it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace deltakit
