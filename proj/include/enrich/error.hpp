#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace enrich {

enum class ErrorKind {
  non_associative,
  missing_identity,
  incomplete_table,
  closure_bound_exceeded,
  size_bound_exceeded,
  not_generating,
  unknown_object,
  unknown_arrow,
  unknown_symbol,
  dimension_mismatch,
  arity_mismatch,
  family_index_mismatch,
  not_functor,
  not_natural,
  not_epi,
  invalid_structure,
  budget_exceeded,
  non_closed_under_structure,
  invalid_argument,
};

constexpr std::string_view to_string(ErrorKind k) noexcept {
  switch (k) {
    case ErrorKind::non_associative: return "NonAssociative";
    case ErrorKind::missing_identity: return "MissingIdentity";
    case ErrorKind::incomplete_table: return "IncompleteTable";
    case ErrorKind::closure_bound_exceeded: return "ClosureBoundExceeded";
    case ErrorKind::size_bound_exceeded: return "SizeBoundExceeded";
    case ErrorKind::not_generating: return "NotGenerating";
    case ErrorKind::unknown_object: return "UnknownObject";
    case ErrorKind::unknown_arrow: return "UnknownArrow";
    case ErrorKind::unknown_symbol: return "UnknownSymbol";
    case ErrorKind::dimension_mismatch: return "DimensionMismatch";
    case ErrorKind::arity_mismatch: return "ArityMismatch";
    case ErrorKind::family_index_mismatch: return "FamilyIndexMismatch";
    case ErrorKind::not_functor: return "NotFunctor";
    case ErrorKind::not_natural: return "NotNatural";
    case ErrorKind::not_epi: return "NotEpi";
    case ErrorKind::invalid_structure: return "InvalidStructure";
    case ErrorKind::budget_exceeded: return "BudgetExceeded";
    case ErrorKind::non_closed_under_structure: return "NonClosedUnderStructure";
    case ErrorKind::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// The single exception type thrown by the library. `kind()` identifies the
/// failure class; the message carries the witness in readable form.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string const& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  bool is_budget() const noexcept {
    return kind_ == ErrorKind::size_bound_exceeded
           || kind_ == ErrorKind::closure_bound_exceeded
           || kind_ == ErrorKind::budget_exceeded;
  }

 private:
  ErrorKind kind_;
};

}  // namespace enrich
