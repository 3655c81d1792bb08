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
#include "maya/synth.hpp"

#include <algorithm>
#include <cmath>

#include "maya/parallel.hpp"
#include "maya/rng.hpp"

namespace maya {

namespace {

std::uint64_t synth_key() { return static_cast<std::uint64_t>(StreamPurpose::Synthetic); }

Context random_layout(Rng& rng) {
  return rng.bernoulli(0.5) ? Context(2.0, 4.0) : Context(4.0, 2.0);
}

ActionSide choice_for(const Context& ctx, bool wrong) {
  const ActionSide best = derive_optimal(ctx);
  return wrong ? other(best) : best;
}

bool is_stationary(ExpertRegime regime) { return regime != ExpertRegime::Cyclic; }

}  // namespace

std::string_view to_string(ExpertRegime regime) noexcept {
  switch (regime) {
    case ExpertRegime::ZeroRegret: return "zero_regret";
    case ExpertRegime::MaxRegret: return "max_regret";
    case ExpertRegime::Cyclic: return "cyclic";
    case ExpertRegime::StochasticCentered: return "stochastic_centered";
  }
  return "unknown";
}

std::string_view to_string(TauClass c) noexcept {
  switch (c) {
    case TauClass::NoWindow: return "no_window";
    case TauClass::EqualS: return "equal_s";
    case TauClass::HalfToS: return "half_to_s";
    case TauClass::BelowHalf: return "below_half";
    case TauClass::AboveS: return "above_s";
  }
  return "unknown";
}

std::vector<double> expert_regret_pattern(const SyntheticExpert& expert, std::uint64_t seed) {
  if (expert.horizon < 2) throw Error(ErrorCode::InvalidScenario, "horizon must be at least 2");
  std::vector<double> out(expert.horizon, 0.0);
  switch (expert.regime) {
    case ExpertRegime::ZeroRegret:
      break;
    case ExpertRegime::MaxRegret:
      std::fill(out.begin(), out.end(), 1.0);
      break;
    case ExpertRegime::Cyclic:
      if (expert.period < 1 || expert.period > expert.horizon) {
        throw Error(ErrorCode::InvalidScenario, "cyclic period must satisfy 1 <= S <= T");
      }
      for (std::size_t t = 0; t < expert.horizon; ++t) {
        out[t] = (t / expert.period) % 2 == 0 ? 1.0 : 0.0;
      }
      break;
    case ExpertRegime::StochasticCentered: {
      Rng rng(derive_seed(seed, {synth_key(), 0x5ce7}));
      for (double& d : out) d = rng.bernoulli(0.5) ? 1.0 : 0.0;
      break;
    }
  }
  return out;
}

Trajectory make_synthetic_trajectory(const SyntheticExpert& expert, std::uint64_t seed,
                                     std::string expert_id) {
  const std::vector<double> pattern = expert_regret_pattern(expert, seed);
  Rng rng(derive_seed(seed, {synth_key(), 0xc0de}));
  std::vector<Context> contexts;
  std::vector<ActionSide> choices;
  for (double delta : pattern) {
    contexts.push_back(random_layout(rng));
    choices.push_back(choice_for(contexts.back(), delta > 0.5));
  }
  return make_trajectory(std::move(expert_id), contexts, choices,
                         DatasetMeta{"synthetic", "", Weather::Unknown, expert.horizon});
}

TauClass classify_tau(std::size_t tau, std::size_t period, std::size_t horizon) {
  if (tau == horizon) return TauClass::NoWindow;
  if (tau == period) return TauClass::EqualS;
  if (tau > period) return TauClass::AboveS;
  // tau < S from here; the split point S/2 + 1 may be fractional.
  return 2 * tau >= period + 2 ? TauClass::HalfToS : TauClass::BelowHalf;
}

double stationary_good_bound(std::size_t horizon) {
  const double T = static_cast<double>(horizon);
  return T * (T + 2.0) / 8.0;
}

double stationary_worst_bound(std::size_t horizon) {
  const double T = static_cast<double>(horizon);
  return T * (T + 1.0) / 2.0;
}

double mixture_bound(double best_agent_trials, std::size_t horizon) {
  const double T = static_cast<double>(horizon);
  const double share = best_agent_trials / T;
  return share * stationary_good_bound(horizon) + (1.0 - share) * stationary_worst_bound(horizon);
}

double theoretical_bound(const BoundScenario& s) {
  if (s.horizon < 2) throw Error(ErrorCode::InvalidScenario, "T must be at least 2");
  if (s.period < 1 || s.period > s.horizon) {
    throw Error(ErrorCode::InvalidScenario, "S must satisfy 1 <= S <= T");
  }
  if (s.tau < 2 || s.tau > s.horizon) {
    throw Error(ErrorCode::InvalidScenario, "tau must satisfy 2 <= tau <= T");
  }
  if (classify_tau(s.tau, s.period, s.horizon) != s.tau_class) {
    throw Error(ErrorCode::InvalidScenario, "tau class does not match (tau, S, T)");
  }
  if (is_stationary(s.regime)) return stationary_good_bound(s.horizon);

  const double T = static_cast<double>(s.horizon);
  const double S = static_cast<double>(s.period);
  const double tau = static_cast<double>(s.tau);
  switch (s.tau_class) {
    case TauClass::NoWindow:
    case TauClass::AboveS:
      return T * (5.0 * T + 6.0) / 16.0;
    case TauClass::EqualS:
      if (s.period % 2 == 0) return (10.0 * T * T + 12.0 * T - 5.0 * S * T) / 32.0;
      return mixture_bound(T / 2.0 + (S + 1.0) / 4.0, s.horizon);
    case TauClass::HalfToS:
      return stationary_good_bound(s.horizon) + (3.0 * T + 2.0) * T / 16.0 * (tau / S);
    case TauClass::BelowHalf:
      return stationary_worst_bound(s.horizon);
  }
  throw Error(ErrorCode::InvalidScenario, "unknown tau class");
}

BoundScenario make_scenario(ExpertRegime regime, std::size_t horizon, std::size_t period,
                            std::size_t tau) {
  BoundScenario s{regime, classify_tau(tau, period, horizon), horizon, period, tau, 0.0};
  s.bound = theoretical_bound(s);
  return s;
}

double empirical_gap(const SyntheticExpert& expert, const MayaConfig& cfg, std::size_t repetition) {
  if (cfg.candidates.empty()) throw Error(ErrorCode::InvalidArgument, "candidate pool is empty");
  for (PolicyKind kind : cfg.candidates) {
    if (kind != PolicyKind::AlwaysOptimal && kind != PolicyKind::AlwaysWrong) {
      throw Error(ErrorCode::InvalidArgument,
                  "bound harness pool must only hold the zero/max-regret policies");
    }
  }
  const Trajectory traj = make_synthetic_trajectory(
      expert, derive_seed(cfg.seed, {synth_key(), repetition}), "synthetic");
  const MayaRun run = run_maya(traj, cfg, repetition);
  const std::vector<double> expert_regrets = traj.expert_regrets();
  double gap = 0.0;
  for (std::size_t t = 0; t < expert_regrets.size(); ++t) {
    gap += std::abs(run.regrets.instantaneous[t] - expert_regrets[t]);
  }
  return gap;
}

std::vector<BoundScenario> bound_grid(std::span<const std::size_t> horizons,
                                      std::span<const std::size_t> periods) {
  constexpr ExpertRegime kRegimes[] = {ExpertRegime::Cyclic, ExpertRegime::ZeroRegret,
                                       ExpertRegime::MaxRegret, ExpertRegime::StochasticCentered};
  std::vector<BoundScenario> grid;
  for (ExpertRegime regime : kRegimes) {
    for (std::size_t T : horizons) {
      for (std::size_t S : periods) {
        if (S < 1 || S > T || T < 2) continue;
        std::vector<std::size_t> taus;
        for (std::size_t tau = 2; tau <= T; ++tau) {
          const TauClass c = classify_tau(tau, S, T);
          // Keep the first and last admissible tau of each class.
          const bool first = tau == 2 || classify_tau(tau - 1, S, T) != c;
          const bool last = tau == T || classify_tau(tau + 1, S, T) != c;
          if (first || last) taus.push_back(tau);
        }
        for (std::size_t tau : taus) grid.push_back(make_scenario(regime, T, S, tau));
      }
    }
  }
  return grid;
}

BoundReport verify_bounds(std::span<const BoundScenario> grid, std::size_t repetitions,
                          SimilarityKind metric, std::uint64_t seed, std::size_t workers) {
  if (repetitions == 0) throw Error(ErrorCode::InvalidArgument, "repetitions must be positive");
  std::vector<double> gaps(grid.size() * repetitions);
  parallel_for(gaps.size(), workers, [&](std::size_t task) {
    const BoundScenario& s = grid[task / repetitions];
    const std::size_t rep = task % repetitions;
    MayaConfig cfg;
    cfg.tau = s.tau;
    cfg.metric = metric;
    cfg.candidates = {PolicyKind::AlwaysOptimal, PolicyKind::AlwaysWrong};
    cfg.seed = derive_seed(seed, {task / repetitions});
    cfg.repetitions = repetitions;
    gaps[task] = empirical_gap(SyntheticExpert{s.regime, s.horizon, s.period}, cfg, rep);
  });

  BoundReport report;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    BoundCheck check{grid[i]};
    check.scenario.bound = theoretical_bound(grid[i]);
    double sum = 0.0;
    for (std::size_t r = 0; r < repetitions; ++r) {
      const double g = gaps[i * repetitions + r];
      check.max_gap = std::max(check.max_gap, g);
      sum += g;
    }
    check.mean_gap = sum / static_cast<double>(repetitions);
    check.margin = check.scenario.bound - check.max_gap;
    check.violated = check.max_gap > check.scenario.bound;
    if (check.violated) ++report.violations;
    report.checks.push_back(check);
  }
  return report;
}

std::vector<Trajectory> mixed_population(std::size_t experts, std::size_t horizon,
                                         std::uint64_t seed) {
  std::vector<Trajectory> out;
  out.reserve(experts);
  for (std::size_t e = 0; e < experts; ++e) {
    Rng rng(derive_seed(seed, {synth_key(), 0x9091, e}));
    const bool fast = e % 2 == 0;
    std::vector<Context> contexts;
    std::vector<ActionSide> choices;
    // Fast learners guess for a few trials, then follow the stimulus with
    // rare slips. Slow learners stick to a preferred arm for the first half
    // of the session before switching to the stimulus.
    const std::size_t guessing = 2 + rng.index(5);
    const ActionSide preferred = rng.bernoulli(0.5) ? ActionSide::Left : ActionSide::Right;
    for (std::size_t t = 0; t < horizon; ++t) {
      contexts.push_back(random_layout(rng));
      const ActionSide best = derive_optimal(contexts.back());
      ActionSide choice;
      if (fast) {
        if (t < guessing) {
          choice = rng.bernoulli(0.5) ? ActionSide::Left : ActionSide::Right;
        } else {
          choice = rng.bernoulli(0.95) ? best : other(best);
        }
      } else if (2 * t < horizon) {
        choice = rng.bernoulli(0.8) ? preferred : other(preferred);
      } else {
        choice = rng.bernoulli(0.95) ? best : other(best);
      }
      choices.push_back(choice);
    }
    out.push_back(make_trajectory((fast ? "fast_" : "slow_") + std::to_string(e), contexts,
                                  choices, DatasetMeta{"mixed", "synthetic", Weather::Unknown,
                                                       horizon}));
  }
  return out;
}

}  // namespace maya
