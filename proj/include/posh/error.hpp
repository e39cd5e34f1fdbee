#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace posh {

enum class ErrorKind {
  NotAPoset,
  NotALattice,
  NotDistributive,
  DomainMismatch,
  NotMonotone,
  MissingRestriction,
  SectionNotInCarrier,
  NotRestrictionClosed,
  ResourceLimit,
  NotComplete,
  NotFrameSheaf,
  IsoSearchFailed,
  OrderNotProvided,
  NotALocalHomeomorphism,
  MalformedInput,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAPoset: return "NotAPoset";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NotDistributive: return "NotDistributive";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::MissingRestriction: return "MissingRestriction";
    case ErrorKind::SectionNotInCarrier: return "SectionNotInCarrier";
    case ErrorKind::NotRestrictionClosed: return "NotRestrictionClosed";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NotFrameSheaf: return "NotFrameSheaf";
    case ErrorKind::IsoSearchFailed: return "IsoSearchFailed";
    case ErrorKind::OrderNotProvided: return "OrderNotProvided";
    case ErrorKind::NotALocalHomeomorphism: return "NotALocalHomeomorphism";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind and a JSON witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, nlohmann::ordered_json witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const nlohmann::ordered_json& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  nlohmann::ordered_json witness_;
};

}  // namespace posh
