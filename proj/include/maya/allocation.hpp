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
#ifndef MAYA_ALLOCATION_HPP
#define MAYA_ALLOCATION_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "maya/domain.hpp"
#include "maya/policies.hpp"
#include "maya/regret.hpp"
#include "maya/similarity.hpp"

namespace maya {

struct MayaConfig {
  std::size_t tau = 7;
  SimilarityKind metric = SimilarityKind::Wasserstein1;
  std::vector<PolicyKind> candidates{kStandardPool.begin(), kStandardPool.end()};
  std::uint64_t seed = 0;
  std::size_t repetitions = 1000;
  PolicyParams policy;
  DistanceOptions distance;
};

/// Throws InvalidArgument on an empty pool, tau < 2, or zero repetitions.
void validate_config(const MayaConfig& cfg);

/// One imitation of one trajectory. Decisions start at trial 2, so `xi`,
/// `actions`, `distributions`, `min_distance` and `cost` hold T - 1 entries
/// (index k is trial k + 2). `regrets` spans all T trials; the undecided
/// first trial carries the expert's own regret, matching its zero cost.
struct MayaRun {
  std::string expert_id;
  std::size_t repetition = 0;
  std::vector<PolicyKind> xi;
  std::vector<ActionSide> actions;
  std::vector<ActionDistribution> distributions;
  std::vector<double> min_distance;
  RegretSeries regrets;
  CostSeries cost;
  std::map<PolicyKind, RegretSeries> per_candidate_regrets;
};

/// Seed of one candidate policy's simulated episode.
std::uint64_t policy_stream_seed(std::uint64_t master, const std::string& expert_id,
                                 std::size_t repetition, PolicyKind kind);

/// Windowed regret matching over the candidate pool. Every candidate plays
/// its own counterfactual episode on the logged contexts; at each trial the
/// candidate whose regret window is closest to the expert's (ties drawn
/// uniformly) lends its action distribution to the imitator.
MayaRun run_maya(const Trajectory& traj, const MayaConfig& cfg, std::size_t repetition = 0);

}  // namespace maya

#endif  // MAYA_ALLOCATION_HPP
