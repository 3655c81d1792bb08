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
#ifndef MAYA_REGRET_HPP
#define MAYA_REGRET_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "maya/domain.hpp"

namespace maya {

/// Instantaneous regret Delta_t (0/1) and its running sum R(1, t).
struct RegretSeries {
  std::vector<double> instantaneous;
  std::vector<double> cumulative;

  std::size_t size() const noexcept { return instantaneous.size(); }
  void push_back(double delta);
  static RegretSeries from_instantaneous(std::span<const double> deltas);

  friend bool operator==(const RegretSeries&, const RegretSeries&) = default;
};

/// Mismatch indicator c_t between imitator and expert, plus its total.
struct CostSeries {
  std::vector<int> costs;
  int total = 0;

  friend bool operator==(const CostSeries&, const CostSeries&) = default;
};

/// Delta_t = r(s, a*) - r(s, a). The optimal reward is always 1 here, so this
/// is 1 - counterfactual_reward.
int instantaneous_regret(const Context& context, ActionSide action);

/// 1-based inclusive trial range [first, last] fed to the similarity metric
/// when deciding trial t. Warm-up (t < tau) uses the whole prefix [1, t-1];
/// afterwards [t - tau, t - 1], with the lower end clamped at 1 (at t = tau
/// the nominal start index is 0).
struct WindowRange {
  std::size_t first = 1;
  std::size_t last = 0;
  std::size_t length() const noexcept { return last + 1 - first; }
};
WindowRange decision_window(std::size_t t, std::size_t tau);

/// Windowed regret at t: cumulative[t] while t < tau, otherwise
/// sum_{j = t - tau}^{t - 1} Delta_j (clamped at j >= 1). Indices are 1-based.
double windowed_regret(const RegretSeries& series, std::size_t t, std::size_t tau);

/// The tail form R(pi, tau, 1, T) = sum_{t = tau}^{T} Delta_t.
double tail_regret(const RegretSeries& series, std::size_t tau);

CostSeries mismatch_cost(std::span<const ActionSide> imitator, std::span<const ActionSide> expert);

}  // namespace maya

#endif  // MAYA_REGRET_HPP
