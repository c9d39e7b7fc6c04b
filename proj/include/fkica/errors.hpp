#pragma once

#include <stdexcept>
#include <string>

namespace fkica {

enum class ErrorKind {
  InvalidBasisSpec,
  RankDeficientDesign,
  MissingLabels,
  NotSymmetric,
  NearSingular,
  NotPositiveDefinite,
  InsufficientSamples,
  BasisMismatch,
  NotWhitened,
  PenaltyNotPD,
  IndexOutOfRange,
  EmptyClass,
  NonPDCovariance,
  RankTooHigh,
  InvalidConfig,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidBasisSpec: return "InvalidBasisSpec";
    case ErrorKind::RankDeficientDesign: return "RankDeficientDesign";
    case ErrorKind::MissingLabels: return "MissingLabels";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NearSingular: return "NearSingular";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::NotWhitened: return "NotWhitened";
    case ErrorKind::PenaltyNotPD: return "PenaltyNotPD";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::NonPDCovariance: return "NonPDCovariance";
    case ErrorKind::RankTooHigh: return "RankTooHigh";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

// Every failure raised by the library. `value` carries the offending number
// where one exists (e.g. the smallest eigenvalue for NearSingular).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double value = 0.0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        value_(value) {}

  ErrorKind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }

 private:
  ErrorKind kind_;
  double value_;
};

}  // namespace fkica
