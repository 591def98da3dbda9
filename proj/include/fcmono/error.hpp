#pragma once

#include <stdexcept>
#include <string>

namespace fcmono {

enum class ErrorCode {
  division_by_zero,
  field_mismatch,
  not_a_subfield,
  dimension_mismatch,
  singular_matrix,
  invalid_parameters,
  wrong_arity,
  precondition_violated,
  incomplete_enumeration,
  not_invariant,
  no_case,
  out_of_scope,
  not_finite,
  parse_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fcmono
