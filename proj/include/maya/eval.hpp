/*
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#ifndef MAYA_EVAL_HPP
#define MAYA_EVAL_HPP

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "maya/allocation.hpp"

namespace maya {

/// Moments of per-expert total mismatch cost C_j across a dataset:
/// mae = mean_j C_j, mse = mean_j C_j^2, each with its (population) std.
struct CostMoments {
  double mse = 0.0;
  double mse_std = 0.0;
  double mae = 0.0;
  double mae_std = 0.0;
};

/// `per_expert_totals[j]` is C_j, already averaged over repetitions.
CostMoments aggregate_cost(std::span<const double> per_expert_totals);
/// Groups runs by expert (first-appearance order), averages each expert's
/// total cost over its repetitions, then aggregates.
CostMoments aggregate_cost(std::span<const MayaRun> runs);

inline constexpr std::size_t kNumPolicyKinds = 6;
using KindCounts = std::array<std::size_t, kNumPolicyKinds>;

struct AlignmentReport {
  /// Pooled share of decisions attributed to each pool member.
  std::map<PolicyKind, double> proportions;
  /// Std of the per-repetition share (pooled over experts) across repetitions.
  std::map<PolicyKind, double> std_over_repetitions;
  /// per_trial[k] counts attributions at trial k + 2 over all runs.
  std::vector<KindCounts> per_trial;
  std::size_t decisions = 0;
};

/// Integer-count accumulator behind AlignmentReport; feeding runs in a fixed
/// order gives identical reports however the runs were produced.
class AlignmentAccumulator {
 public:
  explicit AlignmentAccumulator(std::vector<PolicyKind> pool);

  void add(std::size_t repetition, std::span<const PolicyKind> xi);
  AlignmentReport report() const;

 private:
  std::vector<PolicyKind> pool_;
  std::map<std::size_t, KindCounts> per_repetition_;
  std::vector<KindCounts> per_trial_;
  KindCounts total_{};
};

/// Throws EmptyInput when `runs` is empty. The pool is read from the runs'
/// per-candidate regret maps.
AlignmentReport alignment_proportions(std::span<const MayaRun> runs);

}  // namespace maya

#endif  // MAYA_EVAL_HPP
