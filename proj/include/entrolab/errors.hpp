#pragma once

#include <stdexcept>
#include <string>

namespace entrolab {

// Error taxonomy shared by all modules. Every failure mode that callers are
// expected to branch on gets its own code; the CLI maps codes to exit status.
enum class ErrorCode {
  family_mismatch,
  order_budget_exceeded,
  closure_budget_exceeded,
  product_budget_exceeded,
  not_contained,
  not_normal,
  not_invariant,
  not_compatible,
  not_central,
  not_stabilized,
  table_too_short,
  unsupported_quotient,
  homomorphism_check_failed,
  schema_error,
  invalid_table,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::family_mismatch: return "FamilyMismatch";
    case ErrorCode::order_budget_exceeded: return "OrderBudgetExceeded";
    case ErrorCode::closure_budget_exceeded: return "ClosureBudgetExceeded";
    case ErrorCode::product_budget_exceeded: return "ProductBudgetExceeded";
    case ErrorCode::not_contained: return "NotContained";
    case ErrorCode::not_normal: return "NotNormal";
    case ErrorCode::not_invariant: return "NotInvariant";
    case ErrorCode::not_compatible: return "NotCompatible";
    case ErrorCode::not_central: return "NotCentral";
    case ErrorCode::not_stabilized: return "NotStabilized";
    case ErrorCode::table_too_short: return "TableTooShort";
    case ErrorCode::unsupported_quotient: return "UnsupportedQuotient";
    case ErrorCode::homomorphism_check_failed: return "HomomorphismCheckFailed";
    case ErrorCode::schema_error: return "SchemaError";
    case ErrorCode::invalid_table: return "InvalidTable";
  }
  return "Unknown";
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, std::string(error_code_name(code)) + ": " + msg);
}

}  // namespace entrolab
