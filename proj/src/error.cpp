#include "affnet/error.hpp"

namespace affnet {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::AffiliationViolation: return "AffiliationViolation";
    case Errc::OverlapViolation: return "OverlapViolation";
    case Errc::InvalidSlice: return "InvalidSlice";
    case Errc::IndeterminateOrdering: return "IndeterminateOrdering";
    case Errc::LinkNotFound: return "LinkNotFound";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::MissingAffiliation: return "MissingAffiliation";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace affnet
