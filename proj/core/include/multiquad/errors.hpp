#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace multiquad {

// Machine-readable failure categories. The CLI prints these verbatim.
enum class ErrorCode {
  invalid_range,
  bound_exceeded,
  out_of_range,
  zero_input,
  not_squarefree,
  independence_violation,
  not_i_free,
  overflow,
  equal_bases,
  singular_system,
  domain,
  budget_exceeded,
  ill_conditioned_grid,
  bound_too_small,
  internal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace multiquad
