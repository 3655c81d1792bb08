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
#include "maya/eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace maya {

namespace {

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double population_std(std::span<const double> v, double mu) {
  double s = 0.0;
  for (double x : v) s += (x - mu) * (x - mu);
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

CostMoments aggregate_cost(std::span<const double> per_expert_totals) {
  if (per_expert_totals.empty()) throw Error(ErrorCode::EmptyInput, "no experts to aggregate");
  std::vector<double> squares(per_expert_totals.size());
  std::transform(per_expert_totals.begin(), per_expert_totals.end(), squares.begin(),
                 [](double c) { return c * c; });
  CostMoments m;
  m.mae = mean(per_expert_totals);
  m.mae_std = population_std(per_expert_totals, m.mae);
  m.mse = mean(squares);
  m.mse_std = population_std(squares, m.mse);
  return m;
}

CostMoments aggregate_cost(std::span<const MayaRun> runs) {
  if (runs.empty()) throw Error(ErrorCode::EmptyInput, "no runs to aggregate");
  std::vector<std::string> order;
  std::map<std::string, std::pair<double, std::size_t>> sums;
  for (const MayaRun& run : runs) {
    auto [it, inserted] = sums.try_emplace(run.expert_id, 0.0, 0);
    if (inserted) order.push_back(run.expert_id);
    it->second.first += static_cast<double>(run.cost.total);
    ++it->second.second;
  }
  std::vector<double> totals;
  totals.reserve(order.size());
  for (const auto& id : order) {
    const auto& [sum, n] = sums.at(id);
    totals.push_back(sum / static_cast<double>(n));
  }
  return aggregate_cost(totals);
}

AlignmentAccumulator::AlignmentAccumulator(std::vector<PolicyKind> pool) : pool_(std::move(pool)) {
  std::sort(pool_.begin(), pool_.end());
  pool_.erase(std::unique(pool_.begin(), pool_.end()), pool_.end());
}

void AlignmentAccumulator::add(std::size_t repetition, std::span<const PolicyKind> xi) {
  KindCounts& rep = per_repetition_[repetition];
  if (per_trial_.size() < xi.size()) per_trial_.resize(xi.size(), KindCounts{});
  for (std::size_t k = 0; k < xi.size(); ++k) {
    const auto idx = static_cast<std::size_t>(xi[k]);
    ++rep[idx];
    ++per_trial_[k][idx];
    ++total_[idx];
  }
}

AlignmentReport AlignmentAccumulator::report() const {
  AlignmentReport r;
  r.per_trial = per_trial_;
  for (std::size_t c : total_) r.decisions += c;

  for (PolicyKind kind : pool_) {
    const auto idx = static_cast<std::size_t>(kind);
    r.proportions[kind] =
        r.decisions == 0 ? 0.0
                         : static_cast<double>(total_[idx]) / static_cast<double>(r.decisions);

    std::vector<double> shares;
    for (const auto& [rep, counts] : per_repetition_) {
      std::size_t n = 0;
      for (std::size_t c : counts) n += c;
      if (n > 0) shares.push_back(static_cast<double>(counts[idx]) / static_cast<double>(n));
    }
    r.std_over_repetitions[kind] = shares.empty() ? 0.0 : population_std(shares, mean(shares));
  }
  return r;
}

AlignmentReport alignment_proportions(std::span<const MayaRun> runs) {
  if (runs.empty()) throw Error(ErrorCode::EmptyInput, "no runs to explain");
  std::vector<PolicyKind> pool;
  for (const MayaRun& run : runs) {
    for (const auto& [kind, series] : run.per_candidate_regrets) pool.push_back(kind);
    // Runs assembled by hand may lack candidate regrets; fall back to xi.
    pool.insert(pool.end(), run.xi.begin(), run.xi.end());
  }
  AlignmentAccumulator acc(std::move(pool));
  for (const MayaRun& run : runs) acc.add(run.repetition, run.xi);
  return acc.report();
}

}  // namespace maya
