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
#ifndef MAYA_SWEEP_HPP
#define MAYA_SWEEP_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "maya/allocation.hpp"
#include "maya/eval.hpp"

namespace maya {

struct ExpertSummary {
  std::string expert_id;
  std::vector<int> totals;  // total mismatch cost per repetition
  double mean_total = 0.0;
  double std_total = 0.0;
  MayaRun representative;  // repetition 0, kept whole
};

struct DatasetFit {
  std::vector<ExpertSummary> experts;
  CostMoments moments;
  AlignmentReport alignment;
};

/// Runs every (expert, repetition) pair on up to `workers` threads. Results
/// are reduced in (expert, repetition) order, so they do not depend on the
/// worker count.
DatasetFit fit_dataset(std::span<const Trajectory> dataset, const MayaConfig& cfg,
                       std::size_t workers = 1);

struct SweepRow {
  std::size_t tau = 0;
  SimilarityKind metric = SimilarityKind::Wasserstein1;
  CostMoments moments;
  bool full_sequence = false;  // tau equals the shortest horizon (no window)
};

/// One row per (tau, metric), taus outermost. Every tau must fit the
/// shortest trajectory.
std::vector<SweepRow> sweep_tau(std::span<const Trajectory> dataset, const MayaConfig& base,
                                std::span<const std::size_t> taus,
                                std::span<const SimilarityKind> metrics, std::size_t workers = 1);

}  // namespace maya

#endif  // MAYA_SWEEP_HPP
