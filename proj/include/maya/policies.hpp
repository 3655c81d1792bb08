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
#ifndef MAYA_POLICIES_HPP
#define MAYA_POLICIES_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "maya/domain.hpp"
#include "maya/rng.hpp"

namespace maya {

/// Candidate two-armed bandit strategies. The first four form the production
/// pool; AlwaysOptimal / AlwaysWrong are the degenerate zero- and max-regret
/// policies used only by the worst-case bound harness.
enum class PolicyKind : std::uint8_t {
  EpsilonGreedy = 0,
  UCB1 = 1,
  LinUCB = 2,
  Uniform = 3,
  AlwaysOptimal = 4,
  AlwaysWrong = 5,
};

inline constexpr std::array<PolicyKind, 4> kStandardPool = {
    PolicyKind::EpsilonGreedy, PolicyKind::UCB1, PolicyKind::LinUCB, PolicyKind::Uniform};

std::string_view to_string(PolicyKind kind) noexcept;
/// Accepts the production names (case-insensitive, e.g. "ucb1", "eps", "linucb").
PolicyKind parse_policy_kind(std::string_view name);
bool is_standard(PolicyKind kind) noexcept;

/// pi(a|s) over {Left, Right}.
using ActionDistribution = std::array<double, kNumActions>;

struct Decision {
  ActionSide action;
  ActionDistribution distribution;
};

struct ArmStats {
  std::size_t pulls = 0;
  double reward_sum = 0.0;

  /// Simple average of observed rewards; empty before the first pull.
  std::optional<double> mean() const {
    if (pulls == 0) return std::nullopt;
    return reward_sum / static_cast<double>(pulls);
  }
};

/// Disjoint ridge model of one LinUCB arm: gram = X^T X + lambda I, b = X^T y.
struct LinArmState {
  Eigen::MatrixXd gram;
  Eigen::VectorXd b;
  Eigen::VectorXd theta;
};

struct PolicyParams {
  double epsilon = 0.1;
  double lambda = 1.0;
};

/// 1 iff `action` is the side with more stimuli.
int counterfactual_reward(const Context& context, ActionSide action);

class Policy {
 public:
  Policy(PolicyKind kind, PolicyParams params, std::uint64_t seed);

  PolicyKind kind() const noexcept { return kind_; }
  const PolicyParams& params() const noexcept { return params_; }
  /// Current trial counter; always 1 + total pulls.
  std::size_t t() const noexcept { return t_; }
  const std::array<ArmStats, kNumActions>& arms() const noexcept { return arms_; }
  /// Empty until the first LinUCB context is seen.
  const std::vector<LinArmState>& lin() const noexcept { return lin_; }

  /// Action distribution for this context given the current state. Argmax
  /// ties spread the mass uniformly over the maximisers.
  ActionDistribution distribution(const Context& context) const;

  /// Index scores used by the argmax policies (UCB1, LinUCB, greedy means).
  /// Unpulled arms score +inf for UCB1 and EpsilonGreedy.
  std::array<double, kNumActions> scores(const Context& context) const;

  /// Samples an action from `distribution` with the policy's own stream.
  Decision select_action(const Context& context);

  void update(ActionSide action, int reward, const Context& context);

 private:
  void ensure_lin(std::size_t dim);

  PolicyKind kind_;
  PolicyParams params_;
  std::size_t t_ = 1;
  std::array<ArmStats, kNumActions> arms_{};
  std::vector<LinArmState> lin_;
  Rng rng_;
};

}  // namespace maya

#endif  // MAYA_POLICIES_HPP
