#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace billiards {

enum class ErrorKind {
  // polygon
  SumMismatch,
  EntryOutOfRange,
  GcdNotOne,
  AllZero,
  KTooSmall,
  CNotUnit,
  PreconditionFailed,
  // exactla
  JOutOfRange,
  PNotPrime,
  // oracle
  CapExceeded,
  // polyfp
  ModulusNotPrime,
  BothZero,
  ZeroPolynomial,
  DegreeTooLarge,
  PDividesK,
  NotEnoughAlphas,
  // construct
  ModuliNotCoprime,
  LengthMismatch,
  BadFactorization,
  NotMultiple,
  DNotAchievable,
  NTooSmall,
  WitnessNotFound,
  InternalVerificationFailed,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Domain error raised by every library operation. `kind()` names the
/// violated clause so callers can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when an enumeration or closure outgrows its configured cap.
class CapExceededError : public Error {
 public:
  CapExceededError(const std::string& what, std::uint64_t partial)
      : Error(ErrorKind::CapExceeded, what + " (partial count " + std::to_string(partial) + ")"),
        partial_(partial) {}

  std::uint64_t partial() const noexcept { return partial_; }

 private:
  std::uint64_t partial_;
};

}  // namespace billiards
