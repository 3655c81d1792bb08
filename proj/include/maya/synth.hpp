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
#ifndef MAYA_SYNTH_HPP
#define MAYA_SYNTH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maya/allocation.hpp"
#include "maya/domain.hpp"

namespace maya {

enum class ExpertRegime { ZeroRegret, MaxRegret, Cyclic, StochasticCentered };

std::string_view to_string(ExpertRegime regime) noexcept;

/// Synthetic expert defined by its regret pattern. Cyclic experts start with
/// a block of `period` wrong choices, then alternate S-long blocks of right
/// and wrong. StochasticCentered errs with probability 1/2 on every trial.
struct SyntheticExpert {
  ExpertRegime regime = ExpertRegime::ZeroRegret;
  std::size_t horizon = 40;
  std::size_t period = 1;  // S, cyclic only
};

/// Instantaneous regret pattern of the expert (random only for
/// StochasticCentered).
std::vector<double> expert_regret_pattern(const SyntheticExpert& expert, std::uint64_t seed);

/// Y-maze trajectory whose choices realise the expert's regret pattern on
/// pseudo-random (2, 4) / (4, 2) stimulus layouts.
Trajectory make_synthetic_trajectory(const SyntheticExpert& expert, std::uint64_t seed,
                                     std::string expert_id = "synthetic");

enum class TauClass { NoWindow, EqualS, HalfToS, BelowHalf, AboveS };

std::string_view to_string(TauClass c) noexcept;

/// tau = T is NoWindow; otherwise tau == S, S/2 + 1 <= tau < S,
/// tau < S/2 + 1, or tau > S.
TauClass classify_tau(std::size_t tau, std::size_t period, std::size_t horizon);

struct BoundScenario {
  ExpertRegime regime = ExpertRegime::Cyclic;
  TauClass tau_class = TauClass::NoWindow;
  std::size_t horizon = 0;  // T
  std::size_t period = 1;   // S
  std::size_t tau = 2;
  double bound = 0.0;
};

/// Closed-form ceiling on sum_t |Delta_imitator,t - Delta_expert,t| for the
/// scenario. Stationary regimes use T(T + 2)/8. Cyclic regimes:
///   NoWindow, AboveS : T(5T + 6)/16
///   EqualS           : (10T^2 + 12T - 5ST)/32 for even S; odd S plugs the
///                      odd-period share of best-agent trials, T/2 + (S + 1)/4,
///                      into the good/worst mixture
///   HalfToS          : T(T + 2)/8 + (3T + 2)T/16 * tau/S
///   BelowHalf        : T(T + 1)/2
/// Throws InvalidScenario on inconsistent parameters.
double theoretical_bound(const BoundScenario& scenario);

/// Good/worst mixture N/T * T(T+2)/8 + (1 - N/T) * T(T+1)/2 when the imitator
/// copies the closest agent on N of the T trials.
double mixture_bound(double best_agent_trials, std::size_t horizon);

double stationary_good_bound(std::size_t horizon);
double stationary_worst_bound(std::size_t horizon);

/// Builds a scenario (classifying tau) and fills in its bound.
BoundScenario make_scenario(ExpertRegime regime, std::size_t horizon, std::size_t period,
                            std::size_t tau);

/// Runs the imitator against the synthetic expert and returns
/// sum_{t} |Delta_imitator,t - Delta_expert,t|. The candidate pool must be a
/// non-empty subset of {AlwaysOptimal, AlwaysWrong}.
double empirical_gap(const SyntheticExpert& expert, const MayaConfig& cfg,
                     std::size_t repetition = 0);

/// Scenario grid over every regime, T, S and tau class. Each class is
/// represented by its extreme admissible taus; classes with no admissible
/// tau for a (T, S) pair are skipped.
std::vector<BoundScenario> bound_grid(std::span<const std::size_t> horizons,
                                      std::span<const std::size_t> periods);

struct BoundCheck {
  BoundScenario scenario;
  double max_gap = 0.0;
  double mean_gap = 0.0;
  double margin = 0.0;  // bound - max_gap
  bool violated = false;
};

struct BoundReport {
  std::vector<BoundCheck> checks;
  std::size_t violations = 0;
};

/// Every realisation must satisfy gap <= bound; a scenario is violated when
/// its maximum gap over repetitions exceeds the bound.
BoundReport verify_bounds(std::span<const BoundScenario> grid, std::size_t repetitions,
                          SimilarityKind metric, std::uint64_t seed, std::size_t workers = 1);

/// Mixed population of fast learners (short random phase, then follow the
/// stimulus) and slow learners (persistent side bias, late partial learning),
/// alternating fast/slow by index.
std::vector<Trajectory> mixed_population(std::size_t experts, std::size_t horizon,
                                         std::uint64_t seed);

}  // namespace maya

#endif  // MAYA_SYNTH_HPP
