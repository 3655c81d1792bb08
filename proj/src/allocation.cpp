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
#include "maya/allocation.hpp"

#include <algorithm>
#include <limits>

#include "maya/rng.hpp"

namespace maya {

namespace {

std::vector<PolicyKind> canonical_pool(const std::vector<PolicyKind>& candidates) {
  std::vector<PolicyKind> pool = candidates;
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return pool;
}

}  // namespace

void validate_config(const MayaConfig& cfg) {
  if (cfg.candidates.empty()) throw Error(ErrorCode::InvalidArgument, "candidate pool is empty");
  if (cfg.tau < 2) throw Error(ErrorCode::InvalidArgument, "tau must be at least 2");
  if (cfg.repetitions == 0) throw Error(ErrorCode::InvalidArgument, "repetitions must be positive");
  if (cfg.distance.on_cumulative && cfg.metric == SimilarityKind::KL) {
    throw Error(ErrorCode::InvalidArgument, "KL cannot be combined with on-cumulative matching");
  }
}

std::uint64_t policy_stream_seed(std::uint64_t master, const std::string& expert_id,
                                 std::size_t repetition, PolicyKind kind) {
  return derive_seed(master, {hash_string(expert_id), repetition,
                              static_cast<std::uint64_t>(StreamPurpose::Policy),
                              static_cast<std::uint64_t>(kind)});
}

MayaRun run_maya(const Trajectory& traj, const MayaConfig& cfg, std::size_t repetition) {
  validate_config(cfg);
  const std::size_t T = traj.horizon();
  if (T < 2) throw Error(ErrorCode::InvalidArgument, "trajectory needs at least two trials");
  if (cfg.tau > T) {
    throw Error(ErrorCode::WindowTooLarge, "tau = " + std::to_string(cfg.tau) +
                                               " exceeds horizon T = " + std::to_string(T));
  }

  const std::vector<PolicyKind> pool = canonical_pool(cfg.candidates);
  const std::vector<double> expert_regrets = traj.expert_regrets();
  const std::uint64_t id_hash = hash_string(traj.expert_id);

  std::vector<Policy> policies;
  std::vector<RegretSeries> simulated(pool.size());
  policies.reserve(pool.size());
  for (PolicyKind kind : pool) {
    policies.emplace_back(kind, cfg.policy,
                          policy_stream_seed(cfg.seed, traj.expert_id, repetition, kind));
  }
  Rng imitator(derive_seed(cfg.seed, {id_hash, repetition,
                                      static_cast<std::uint64_t>(StreamPurpose::Imitator)}));
  Rng ties(derive_seed(cfg.seed, {id_hash, repetition,
                                  static_cast<std::uint64_t>(StreamPurpose::TieBreak)}));

  MayaRun run;
  run.expert_id = traj.expert_id;
  run.repetition = repetition;
  run.xi.reserve(T - 1);
  run.actions.reserve(T - 1);
  run.distributions.reserve(T - 1);
  run.min_distance.reserve(T - 1);
  run.cost.costs.reserve(T - 1);

  std::vector<double> distances(pool.size());
  std::vector<std::size_t> best;
  for (std::size_t t = 1; t <= T; ++t) {
    const Trial& trial = traj.trials[t - 1];
    const Context& ctx = trial.context;

    if (t == 1) {
      run.regrets.push_back(expert_regrets[0]);
    } else {
      const WindowRange window = decision_window(t, cfg.tau);
      double min_d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < pool.size(); ++i) {
        distances[i] = policy_distance(cfg.metric, expert_regrets, simulated[i].instantaneous,
                                       window, cfg.distance);
        min_d = std::min(min_d, distances[i]);
      }
      best.clear();
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (distances[i] == min_d) best.push_back(i);
      }
      const std::size_t winner = best[ties.index(best.size())];

      const ActionDistribution dist = policies[winner].distribution(ctx);
      const ActionSide action = side_from_index(imitator.categorical(dist));
      const int c = action != trial.expert_action ? 1 : 0;

      run.xi.push_back(pool[winner]);
      run.actions.push_back(action);
      run.distributions.push_back(dist);
      run.min_distance.push_back(min_d);
      run.regrets.push_back(static_cast<double>(instantaneous_regret(ctx, action)));
      run.cost.costs.push_back(c);
      run.cost.total += c;
    }

    // Each candidate continues its own counterfactual episode.
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const Decision d = policies[i].select_action(ctx);
      const int reward = counterfactual_reward(ctx, d.action);
      policies[i].update(d.action, reward, ctx);
      simulated[i].push_back(static_cast<double>(1 - reward));
    }
  }

  for (std::size_t i = 0; i < pool.size(); ++i) {
    run.per_candidate_regrets.emplace(pool[i], std::move(simulated[i]));
  }
  return run;
}

}  // namespace maya
