#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cauchyls/grid.hpp"

namespace cauchyls {

enum class StopReason { Discrepancy, MaxIters, TargetError, Stagnation };

std::string to_string(StopReason reason);

struct IterationRecord {
  int iter = 0;
  double residual = 0.0;
  std::optional<double> error;  // ||q_k - q_true||, only with known truth
  int components = 0;
};

struct Snapshot {
  int iter = 0;
  TraceFn phi;
  TraceFn q;
};

/// History of a level-set run. `history` holds one entry per visited
/// iterate, including the initial one.
struct RunRecord {
  std::vector<IterationRecord> history;
  std::vector<Snapshot> snapshots;
  StopReason stop_reason = StopReason::MaxIters;
  int stop_iter = 0;
  TraceFn final_phi;
  TraceFn final_q;
  /// Hamilton-Jacobi runs with known truth: per step, the defect
  /// (e_{k+1}^2 - e_k^2)/dt + 2 ||r_k||^2 of the asymptotic-regularization
  /// identity. Empty otherwise.
  std::vector<double> identity_defect;

  /// First recorded iteration whose residual is <= threshold.
  std::optional<int> first_iter_with_residual(double threshold) const;
};

}  // namespace cauchyls
