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
#include "maya/domain.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace maya {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EqualStimuli: return "EqualStimuli";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooFewSeries: return "TooFewSeries";
    case ErrorCode::InvalidScenario: return "InvalidScenario";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

char to_char(ActionSide a) noexcept { return a == ActionSide::Left ? 'L' : 'R'; }

ActionSide parse_side(std::string_view s) {
  if (s == "L" || s == "l" || s == "Left" || s == "left") return ActionSide::Left;
  if (s == "R" || s == "r" || s == "Right" || s == "right") return ActionSide::Right;
  throw Error(ErrorCode::Parse, "invalid side '" + std::string(s) + "'");
}

Context::Context(double left, double right) : features_{left, right} {}

Context::Context(std::vector<double> features) : features_(std::move(features)) {
  if (features_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "context needs at least two features");
  }
}

ActionSide derive_optimal(const Context& context) {
  if (context.left() == context.right()) {
    throw Error(ErrorCode::EqualStimuli, "left and right stimulus counts are equal");
  }
  return context.left() > context.right() ? ActionSide::Left : ActionSide::Right;
}

std::string_view to_string(Weather w) noexcept {
  switch (w) {
    case Weather::Cold: return "Cold";
    case Weather::Moderate: return "Moderate";
    case Weather::Hot: return "Hot";
    case Weather::Unknown: return "Unknown";
  }
  return "Unknown";
}

Weather parse_weather(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "cold") return Weather::Cold;
  if (lower == "moderate") return Weather::Moderate;
  if (lower == "hot") return Weather::Hot;
  if (lower == "unknown" || lower.empty()) return Weather::Unknown;
  throw Error(ErrorCode::Parse, "invalid weather '" + std::string(s) + "'");
}

std::vector<ActionSide> Trajectory::expert_actions() const {
  std::vector<ActionSide> out;
  out.reserve(trials.size());
  for (const auto& t : trials) out.push_back(t.expert_action);
  return out;
}

std::vector<double> Trajectory::expert_regrets() const {
  std::vector<double> out;
  out.reserve(trials.size());
  for (const auto& t : trials) out.push_back(static_cast<double>(t.expert_regret()));
  return out;
}

Trajectory make_trajectory(std::string expert_id, const std::vector<Context>& contexts,
                           const std::vector<ActionSide>& choices, DatasetMeta meta) {
  if (contexts.size() != choices.size()) {
    throw Error(ErrorCode::LengthMismatch, "contexts and choices differ in length");
  }
  Trajectory traj{std::move(expert_id), {}, std::move(meta)};
  traj.trials.reserve(contexts.size());
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    const int reward = choices[i] == derive_optimal(contexts[i]) ? 1 : 0;
    traj.trials.push_back(Trial{i + 1, contexts[i], choices[i], reward});
  }
  return traj;
}

std::string_view to_string(ViolationKind k) noexcept {
  switch (k) {
    case ViolationKind::EqualStimuli: return "EqualStimuli";
    case ViolationKind::NegativeStimulus: return "NegativeStimulus";
    case ViolationKind::RewardInconsistent: return "RewardInconsistent";
    case ViolationKind::InvalidReward: return "InvalidReward";
    case ViolationKind::NonContiguous: return "NonContiguous";
    case ViolationKind::TooShort: return "TooShort";
    case ViolationKind::HorizonMismatch: return "HorizonMismatch";
    case ViolationKind::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

std::string Violation::describe() const {
  std::string out = expert_id.empty() ? std::string() : expert_id + ": ";
  out += to_string(kind);
  if (trial > 0) out += "@" + std::to_string(trial);
  return out;
}

std::vector<Violation> validate_trajectory(const Trajectory& traj) {
  std::vector<Violation> out;
  const auto flag = [&](std::size_t trial, ViolationKind kind) {
    out.push_back(Violation{traj.expert_id, trial, kind});
  };

  if (traj.trials.size() < 2) flag(0, ViolationKind::TooShort);
  if (traj.meta.horizon != 0 && traj.meta.horizon != traj.trials.size()) {
    flag(0, ViolationKind::HorizonMismatch);
  }

  const std::size_t dim = traj.trials.empty() ? 0 : traj.trials.front().context.dim();
  for (std::size_t pos = 0; pos < traj.trials.size(); ++pos) {
    const Trial& trial = traj.trials[pos];
    const std::size_t expected = pos + 1;
    // Reported at the position where the gap shows up, e.g. 1,2,4 -> @3.
    if (trial.index != expected) flag(expected, ViolationKind::NonContiguous);
    if (trial.context.dim() != dim) flag(expected, ViolationKind::DimensionMismatch);
    if (trial.context.left() < 0.0 || trial.context.right() < 0.0) {
      flag(expected, ViolationKind::NegativeStimulus);
    }
    if (trial.reward != 0 && trial.reward != 1) {
      flag(expected, ViolationKind::InvalidReward);
      continue;
    }
    if (trial.context.left() == trial.context.right()) {
      flag(expected, ViolationKind::EqualStimuli);
      continue;
    }
    const int implied = trial.expert_action == derive_optimal(trial.context) ? 1 : 0;
    if (implied != trial.reward) flag(expected, ViolationKind::RewardInconsistent);
  }
  return out;
}

}  // namespace maya
