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
#include "maya/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "maya/parallel.hpp"

namespace maya {

namespace {

struct RepResult {
  int total = 0;
  std::vector<PolicyKind> xi;
};

std::size_t min_horizon(std::span<const Trajectory> dataset) {
  std::size_t h = dataset.front().horizon();
  for (const auto& t : dataset) h = std::min(h, t.horizon());
  return h;
}

}  // namespace

DatasetFit fit_dataset(std::span<const Trajectory> dataset, const MayaConfig& cfg,
                       std::size_t workers) {
  validate_config(cfg);
  if (dataset.empty()) throw Error(ErrorCode::EmptyInput, "dataset has no trajectories");
  if (cfg.tau > min_horizon(dataset)) {
    throw Error(ErrorCode::WindowTooLarge,
                "tau = " + std::to_string(cfg.tau) + " exceeds the shortest horizon");
  }

  const std::size_t reps = cfg.repetitions;
  const std::size_t n_tasks = dataset.size() * reps;
  std::vector<RepResult> results(n_tasks);
  std::vector<MayaRun> representatives(dataset.size());

  parallel_for(n_tasks, workers, [&](std::size_t task) {
    const std::size_t e = task / reps;
    const std::size_t r = task % reps;
    MayaRun run = run_maya(dataset[e], cfg, r);
    results[task] = RepResult{run.cost.total, run.xi};
    if (r == 0) representatives[e] = std::move(run);
  });

  DatasetFit fit;
  AlignmentAccumulator alignment(cfg.candidates);
  std::vector<double> per_expert;
  per_expert.reserve(dataset.size());
  for (std::size_t e = 0; e < dataset.size(); ++e) {
    ExpertSummary s;
    s.expert_id = dataset[e].expert_id;
    s.totals.reserve(reps);
    double sum = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      const RepResult& res = results[e * reps + r];
      s.totals.push_back(res.total);
      sum += res.total;
      alignment.add(r, res.xi);
    }
    s.mean_total = sum / static_cast<double>(reps);
    double var = 0.0;
    for (int c : s.totals) var += (c - s.mean_total) * (c - s.mean_total);
    s.std_total = std::sqrt(var / static_cast<double>(reps));
    s.representative = std::move(representatives[e]);
    per_expert.push_back(s.mean_total);
    fit.experts.push_back(std::move(s));
  }
  fit.moments = aggregate_cost(per_expert);
  fit.alignment = alignment.report();
  return fit;
}

std::vector<SweepRow> sweep_tau(std::span<const Trajectory> dataset, const MayaConfig& base,
                                std::span<const std::size_t> taus,
                                std::span<const SimilarityKind> metrics, std::size_t workers) {
  if (dataset.empty()) throw Error(ErrorCode::EmptyInput, "dataset has no trajectories");
  if (taus.empty() || metrics.empty()) throw Error(ErrorCode::EmptyInput, "empty sweep grid");
  const std::size_t horizon = min_horizon(dataset);
  for (std::size_t tau : taus) {
    if (tau > horizon) {
      throw Error(ErrorCode::WindowTooLarge, "tau = " + std::to_string(tau) +
                                                 " exceeds the shortest horizon " +
                                                 std::to_string(horizon));
    }
  }

  std::vector<SweepRow> rows;
  for (std::size_t tau : taus) {
    for (SimilarityKind metric : metrics) {
      MayaConfig cfg = base;
      cfg.tau = tau;
      cfg.metric = metric;
      const DatasetFit fit = fit_dataset(dataset, cfg, workers);
      rows.push_back(SweepRow{tau, metric, fit.moments, tau == horizon});
    }
  }
  return rows;
}

}  // namespace maya
