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
#ifndef MAYA_DOMAIN_HPP
#define MAYA_DOMAIN_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maya/error.hpp"

namespace maya {

/// The two arms of the Y-maze. Left < Right gives a stable serialization order.
enum class ActionSide : std::uint8_t { Left = 0, Right = 1 };

inline constexpr std::size_t kNumActions = 2;

constexpr std::size_t index_of(ActionSide a) noexcept { return static_cast<std::size_t>(a); }
constexpr ActionSide other(ActionSide a) noexcept {
  return a == ActionSide::Left ? ActionSide::Right : ActionSide::Left;
}
constexpr ActionSide side_from_index(std::size_t i) noexcept {
  return i == 0 ? ActionSide::Left : ActionSide::Right;
}
char to_char(ActionSide a) noexcept;
ActionSide parse_side(std::string_view s);

/// Per-trial observation. features[0] and features[1] are the stimulus counts
/// on the left and right arm; any further entries are optional covariates.
class Context {
 public:
  Context(double left, double right);
  explicit Context(std::vector<double> features);

  std::size_t dim() const noexcept { return features_.size(); }
  double left() const noexcept { return features_[0]; }
  double right() const noexcept { return features_[1]; }
  const std::vector<double>& features() const noexcept { return features_; }

  friend bool operator==(const Context&, const Context&) = default;

 private:
  std::vector<double> features_;
};

/// Side with the strictly greater stimulus count. Throws EqualStimuli on a tie.
ActionSide derive_optimal(const Context& context);

enum class Weather { Cold, Moderate, Hot, Unknown };

std::string_view to_string(Weather w) noexcept;
Weather parse_weather(std::string_view s);

struct DatasetMeta {
  std::string name;
  std::string location;
  Weather weather = Weather::Unknown;
  std::size_t horizon = 0;  // 0 = not declared

  friend bool operator==(const DatasetMeta&, const DatasetMeta&) = default;
};

struct Trial {
  std::size_t index = 0;  // 1-based
  Context context{0.0, 1.0};
  ActionSide expert_action = ActionSide::Left;
  int reward = 0;

  ActionSide optimal_action() const { return derive_optimal(context); }
  /// 1 when the expert chose the wrong side.
  int expert_regret() const { return 1 - reward; }

  friend bool operator==(const Trial&, const Trial&) = default;
};

struct Trajectory {
  std::string expert_id;
  std::vector<Trial> trials;
  DatasetMeta meta;

  std::size_t horizon() const noexcept { return trials.size(); }
  std::vector<ActionSide> expert_actions() const;
  /// Instantaneous regret of the expert, one entry per trial.
  std::vector<double> expert_regrets() const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Builds a trajectory from contexts and choices, deriving the reward.
Trajectory make_trajectory(std::string expert_id, const std::vector<Context>& contexts,
                           const std::vector<ActionSide>& choices, DatasetMeta meta = {});

enum class ViolationKind {
  EqualStimuli,
  NegativeStimulus,
  RewardInconsistent,
  InvalidReward,
  NonContiguous,
  TooShort,
  HorizonMismatch,
  DimensionMismatch,
};

std::string_view to_string(ViolationKind k) noexcept;

struct Violation {
  std::string expert_id;
  std::size_t trial = 0;  // 1-based position the rule failed at; 0 = whole trajectory
  ViolationKind kind;

  std::string describe() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

std::vector<Violation> validate_trajectory(const Trajectory& traj);

}  // namespace maya

#endif  // MAYA_DOMAIN_HPP
