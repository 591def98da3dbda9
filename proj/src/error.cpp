#include "fcmono/error.hpp"

namespace fcmono {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::field_mismatch: return "FieldMismatch";
    case ErrorCode::not_a_subfield: return "NotASubfield";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::singular_matrix: return "SingularMatrix";
    case ErrorCode::invalid_parameters: return "InvalidParameters";
    case ErrorCode::wrong_arity: return "WrongArity";
    case ErrorCode::precondition_violated: return "PreconditionViolated";
    case ErrorCode::incomplete_enumeration: return "IncompleteEnumeration";
    case ErrorCode::not_invariant: return "NotInvariant";
    case ErrorCode::no_case: return "NoCase";
    case ErrorCode::out_of_scope: return "OutOfScope";
    case ErrorCode::not_finite: return "NotFinite";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

}  // namespace fcmono
