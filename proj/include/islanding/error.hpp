#ifndef ISLANDING_ERROR_HPP
#define ISLANDING_ERROR_HPP

#include <stdexcept>
#include <string>

namespace islanding {

enum class ErrorCode {
  parse,
  invariant,
  dangling_reference,
  disconnected_network,
  bad_limits,
  unknown_branch,
  missing_direction,
  missing_flow,
  zero_impedance,
  singular_ybus,
  degenerate_distance,
  zero_degree,
  overlapping_sets,
  invalid_argument,
  group_count_mismatch,
  disconnected_graph,
  must_link_violation,
  cannot_link_infeasible,
  eigensolver,
};

/// Process exit status associated with an error category:
/// 1 input/usage, 2 constraint-infeasible, 3 numerical failure.
constexpr int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::disconnected_graph:
    case ErrorCode::must_link_violation:
    case ErrorCode::cannot_link_infeasible:
      return 2;
    case ErrorCode::singular_ybus:
    case ErrorCode::eigensolver:
      return 3;
    default:
      return 1;
  }
}

constexpr const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse: return "parse error";
    case ErrorCode::invariant: return "invariant violation";
    case ErrorCode::dangling_reference: return "dangling bus reference";
    case ErrorCode::disconnected_network: return "disconnected AC network";
    case ErrorCode::bad_limits: return "bad limit ordering";
    case ErrorCode::unknown_branch: return "unknown branch";
    case ErrorCode::missing_direction: return "missing flow direction";
    case ErrorCode::missing_flow: return "missing branch flow";
    case ErrorCode::zero_impedance: return "zero-impedance branch";
    case ErrorCode::singular_ybus: return "singular Y-bus";
    case ErrorCode::degenerate_distance: return "degenerate electrical distance";
    case ErrorCode::zero_degree: return "zero-degree bus";
    case ErrorCode::overlapping_sets: return "overlapping sets";
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::group_count_mismatch: return "island count differs from coherent group count";
    case ErrorCode::disconnected_graph: return "disconnected constrained graph";
    case ErrorCode::must_link_violation: return "must-link violation";
    case ErrorCode::cannot_link_infeasible: return "cannot-link infeasible";
    case ErrorCode::eigensolver: return "eigensolver failure";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  int exit_code() const noexcept { return exit_code_for(code_); }

 private:
  ErrorCode code_;
};

}  // namespace islanding

#endif  // ISLANDING_ERROR_HPP
