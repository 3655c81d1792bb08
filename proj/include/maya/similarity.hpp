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
#ifndef MAYA_SIMILARITY_HPP
#define MAYA_SIMILARITY_HPP

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "maya/regret.hpp"

namespace maya {

enum class SimilarityKind { KL, Wasserstein1, DTW };

std::string_view to_string(SimilarityKind kind) noexcept;
/// Short CLI names: "kl", "wass", "dtw".
std::string_view short_name(SimilarityKind kind) noexcept;
SimilarityKind parse_similarity_kind(std::string_view name);

enum class LocalCost { Absolute, Squared };

struct WarpingPath {
  double cost = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> steps;  // 0-based (i, j), start to end
};

/// Unconstrained DTW with steps (1,0), (0,1), (1,1) and |x - y| local cost.
double dtw(std::span<const double> x, std::span<const double> y);
/// DTW with a chosen local cost, returning the optimal warping path as well.
WarpingPath dtw_path(std::span<const double> x, std::span<const double> y,
                     LocalCost cost = LocalCost::Absolute);
double dtw_cost(std::span<const double> x, std::span<const double> y, LocalCost cost);

inline constexpr double kDefaultKlSmoothing = 0.5;

/// D(Bern(p) || Bern(q)) where p, q are the additively smoothed success rates
/// of x (the expert side) and y.
double kl_bernoulli(std::span<const double> x, std::span<const double> y,
                    double smoothing = kDefaultKlSmoothing);

/// W1 between the empirical distributions of x and y (lengths may differ).
double wasserstein1(std::span<const double> x, std::span<const double> y);

struct DistanceOptions {
  double kl_smoothing = kDefaultKlSmoothing;
  /// Compare running sums within the window instead of the raw 0/1 regrets.
  bool on_cumulative = false;
};

/// Distance between two already-extracted regret windows.
double distance(SimilarityKind kind, std::span<const double> expert, std::span<const double> policy,
                const DistanceOptions& options = {});

/// Extracts trials [window.first, window.last] (1-based) of both
/// instantaneous-regret sequences and compares them.
double policy_distance(SimilarityKind kind, std::span<const double> expert_regrets,
                       std::span<const double> policy_regrets, WindowRange window,
                       const DistanceOptions& options = {});

}  // namespace maya

#endif  // MAYA_SIMILARITY_HPP
