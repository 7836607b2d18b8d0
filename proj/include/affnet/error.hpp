#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace affnet {

/// Failure categories raised by the library. Every public operation reports
/// errors by throwing affnet::Error carrying one of these codes.
enum class Errc {
  IndexOutOfRange,
  SelfLoop,
  AffiliationViolation,
  OverlapViolation,
  InvalidSlice,
  IndeterminateOrdering,
  LinkNotFound,
  InsufficientData,
  DegenerateInput,
  InvalidArgument,
  ParseError,
  MissingAffiliation,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace affnet
