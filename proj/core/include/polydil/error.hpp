#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polydil {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  NotHermitian,
  NoConvergence,
  NotPsd,
  NotIsometric,
  DegenerateLeadingCoefficient,
  SingularResolvent,
  NotCommuting,
  NotContractive,
  IndexOutOfRange,
  NotSzego,
  NotPure,
  GNotPsd,
  SumMismatch,
  ProductNotPsd,
  HypothesisFailed,
  OutsideDisc,
  PartitionMismatch,
  IsometryDefect,
  NotContraction,
  ArityMismatch,
  CertificateRejected,
  ParseError,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure in the library is reported as an Error. Numeric payloads
// (offending index, residual, norm) are carried alongside the message so
// callers and reports can surface them without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double value = 0.0,
        std::ptrdiff_t index = -1, std::ptrdiff_t index2 = -1)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        value_(value),
        index_(index),
        index2_(index2) {}

  ErrorKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }
  std::ptrdiff_t index() const noexcept { return index_; }
  std::ptrdiff_t index2() const noexcept { return index2_; }

 private:
  ErrorKind kind_;
  double value_;
  std::ptrdiff_t index_;
  std::ptrdiff_t index2_;
};

}  // namespace polydil
