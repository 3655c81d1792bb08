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
#include "maya/policies.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

namespace maya {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Uniform mass over the maximisers of `scores`.
ActionDistribution argmax_distribution(const std::array<double, kNumActions>& scores) {
  const double best = std::max(scores[0], scores[1]);
  ActionDistribution d{scores[0] == best ? 1.0 : 0.0, scores[1] == best ? 1.0 : 0.0};
  const double n = d[0] + d[1];
  d[0] /= n;
  d[1] /= n;
  return d;
}

Eigen::Map<const Eigen::VectorXd> as_vector(const Context& context) {
  return {context.features().data(), static_cast<Eigen::Index>(context.dim())};
}

}  // namespace

std::string_view to_string(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::EpsilonGreedy: return "EpsilonGreedy";
    case PolicyKind::UCB1: return "UCB1";
    case PolicyKind::LinUCB: return "LinUCB";
    case PolicyKind::Uniform: return "Uniform";
    case PolicyKind::AlwaysOptimal: return "AlwaysOptimal";
    case PolicyKind::AlwaysWrong: return "AlwaysWrong";
  }
  return "Unknown";
}

PolicyKind parse_policy_kind(std::string_view name) {
  std::string s;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (s == "epsilongreedy" || s == "egreedy" || s == "eps" || s == "epsilon") {
    return PolicyKind::EpsilonGreedy;
  }
  if (s == "ucb1" || s == "ucb") return PolicyKind::UCB1;
  if (s == "linucb") return PolicyKind::LinUCB;
  if (s == "uniform" || s == "random") return PolicyKind::Uniform;
  throw Error(ErrorCode::InvalidArgument, "unknown policy '" + std::string(name) + "'");
}

bool is_standard(PolicyKind kind) noexcept {
  return std::find(kStandardPool.begin(), kStandardPool.end(), kind) != kStandardPool.end();
}

int counterfactual_reward(const Context& context, ActionSide action) {
  return action == derive_optimal(context) ? 1 : 0;
}

Policy::Policy(PolicyKind kind, PolicyParams params, std::uint64_t seed)
    : kind_(kind), params_(params), rng_(seed) {
  if (!(params_.epsilon >= 0.0 && params_.epsilon <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must lie in [0, 1]");
  }
  if (!(params_.lambda > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  }
}

void Policy::ensure_lin(std::size_t dim) {
  if (!lin_.empty()) {
    if (static_cast<std::size_t>(lin_.front().b.size()) != dim) {
      throw Error(ErrorCode::InvalidArgument, "context dimension changed mid-episode");
    }
    return;
  }
  const auto d = static_cast<Eigen::Index>(dim);
  lin_.resize(kNumActions);
  for (auto& arm : lin_) {
    arm.gram = params_.lambda * Eigen::MatrixXd::Identity(d, d);
    arm.b = Eigen::VectorXd::Zero(d);
    arm.theta = Eigen::VectorXd::Zero(d);
  }
}

std::array<double, kNumActions> Policy::scores(const Context& context) const {
  std::array<double, kNumActions> s{0.0, 0.0};
  switch (kind_) {
    case PolicyKind::EpsilonGreedy:
      for (std::size_t a = 0; a < kNumActions; ++a) s[a] = arms_[a].mean().value_or(kInf);
      break;
    case PolicyKind::UCB1: {
      const double log_t = std::log(static_cast<double>(t_));
      for (std::size_t a = 0; a < kNumActions; ++a) {
        const ArmStats& arm = arms_[a];
        s[a] = arm.pulls == 0
                   ? kInf
                   : *arm.mean() + std::sqrt(log_t / static_cast<double>(arm.pulls));
      }
      break;
    }
    case PolicyKind::LinUCB: {
      const auto x = as_vector(context);
      for (std::size_t a = 0; a < kNumActions; ++a) {
        if (lin_.empty()) {
          // Prior state: theta = 0, gram = lambda I.
          s[a] = std::sqrt(x.squaredNorm() / params_.lambda);
          continue;
        }
        if (lin_[a].b.size() != x.size()) {
          throw Error(ErrorCode::InvalidArgument, "context dimension changed mid-episode");
        }
        const Eigen::VectorXd g_inv_x = lin_[a].gram.ldlt().solve(x);
        s[a] = x.dot(lin_[a].theta) + std::sqrt(x.dot(g_inv_x));
      }
      break;
    }
    case PolicyKind::Uniform:
    case PolicyKind::AlwaysOptimal:
    case PolicyKind::AlwaysWrong:
      break;
  }
  return s;
}

ActionDistribution Policy::distribution(const Context& context) const {
  switch (kind_) {
    case PolicyKind::Uniform:
      return {0.5, 0.5};
    case PolicyKind::AlwaysOptimal: {
      ActionDistribution d{0.0, 0.0};
      d[index_of(derive_optimal(context))] = 1.0;
      return d;
    }
    case PolicyKind::AlwaysWrong: {
      ActionDistribution d{0.0, 0.0};
      d[index_of(other(derive_optimal(context)))] = 1.0;
      return d;
    }
    case PolicyKind::EpsilonGreedy: {
      const ActionDistribution greedy = argmax_distribution(scores(context));
      if (greedy[0] == greedy[1]) return greedy;
      // Unique argmax: exploit with 1 - eps, otherwise take the only other arm.
      const std::size_t best = greedy[0] == 1.0 ? 0 : 1;
      ActionDistribution d{};
      d[best] = 1.0 - params_.epsilon;
      d[1 - best] = params_.epsilon;
      return d;
    }
    case PolicyKind::UCB1:
    case PolicyKind::LinUCB:
      return argmax_distribution(scores(context));
  }
  return {0.5, 0.5};
}

Decision Policy::select_action(const Context& context) {
  const ActionDistribution d = distribution(context);
  return Decision{side_from_index(rng_.categorical(d)), d};
}

void Policy::update(ActionSide action, int reward, const Context& context) {
  ArmStats& arm = arms_[index_of(action)];
  ++arm.pulls;
  arm.reward_sum += static_cast<double>(reward);
  ++t_;
  if (kind_ != PolicyKind::LinUCB) return;

  ensure_lin(context.dim());
  LinArmState& lin = lin_[index_of(action)];
  const auto x = as_vector(context);
  lin.gram.noalias() += x * x.transpose();
  lin.b.noalias() += static_cast<double>(reward) * x;
  lin.theta = lin.gram.ldlt().solve(lin.b);
}

}  // namespace maya
