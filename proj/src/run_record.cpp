#include "cauchyls/run_record.hpp"

namespace cauchyls {

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Discrepancy: return "discrepancy";
    case StopReason::MaxIters: return "max_iters";
    case StopReason::TargetError: return "target_error";
    case StopReason::Stagnation: return "stagnation";
  }
  return "unknown";
}

std::optional<int> RunRecord::first_iter_with_residual(double threshold) const {
  for (const auto& h : history) {
    if (h.residual <= threshold) return h.iter;
  }
  return std::nullopt;
}

}  // namespace cauchyls
