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
#include "maya/regret.hpp"

#include <string>

#include "maya/policies.hpp"

namespace maya {

void RegretSeries::push_back(double delta) {
  instantaneous.push_back(delta);
  cumulative.push_back(cumulative.empty() ? delta : cumulative.back() + delta);
}

RegretSeries RegretSeries::from_instantaneous(std::span<const double> deltas) {
  RegretSeries out;
  out.instantaneous.reserve(deltas.size());
  out.cumulative.reserve(deltas.size());
  for (double d : deltas) out.push_back(d);
  return out;
}

int instantaneous_regret(const Context& context, ActionSide action) {
  return 1 - counterfactual_reward(context, action);
}

WindowRange decision_window(std::size_t t, std::size_t tau) {
  if (t < 2) throw Error(ErrorCode::IndexOutOfRange, "decisions start at t = 2");
  if (tau < 2) throw Error(ErrorCode::InvalidArgument, "tau must be at least 2");
  if (t < tau) return {1, t - 1};
  return {t > tau ? t - tau : 1, t - 1};
}

double windowed_regret(const RegretSeries& series, std::size_t t, std::size_t tau) {
  if (tau < 2) throw Error(ErrorCode::InvalidArgument, "tau must be at least 2");
  if (t < 1 || t > series.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "t = " + std::to_string(t) + " outside series");
  }
  if (t < tau) return series.cumulative[t - 1];
  const std::size_t first = t > tau ? t - tau : 1;
  double sum = 0.0;
  for (std::size_t j = first; j <= t - 1; ++j) sum += series.instantaneous[j - 1];
  return sum;
}

double tail_regret(const RegretSeries& series, std::size_t tau) {
  if (tau < 1 || tau > series.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "tau outside series");
  }
  double sum = 0.0;
  for (std::size_t t = tau; t <= series.size(); ++t) sum += series.instantaneous[t - 1];
  return sum;
}

CostSeries mismatch_cost(std::span<const ActionSide> imitator, std::span<const ActionSide> expert) {
  if (imitator.size() != expert.size()) {
    throw Error(ErrorCode::LengthMismatch, "imitator and expert sequences differ in length");
  }
  CostSeries out;
  out.costs.reserve(imitator.size());
  for (std::size_t i = 0; i < imitator.size(); ++i) {
    const int c = imitator[i] != expert[i] ? 1 : 0;
    out.costs.push_back(c);
    out.total += c;
  }
  return out;
}

}  // namespace maya
