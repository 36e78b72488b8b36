#include "multiquad/errors.hpp"

namespace multiquad {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_range: return "invalid_range";
    case ErrorCode::bound_exceeded: return "bound_exceeded";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::zero_input: return "zero_input";
    case ErrorCode::not_squarefree: return "not_squarefree";
    case ErrorCode::independence_violation: return "independence_violation";
    case ErrorCode::not_i_free: return "not_i_free";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::equal_bases: return "equal_bases";
    case ErrorCode::singular_system: return "singular_system";
    case ErrorCode::domain: return "domain";
    case ErrorCode::budget_exceeded: return "budget_exceeded";
    case ErrorCode::ill_conditioned_grid: return "ill_conditioned_grid";
    case ErrorCode::bound_too_small: return "bound_too_small";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

}  // namespace multiquad
