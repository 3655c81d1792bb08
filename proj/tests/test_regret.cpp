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
#include <algorithm>

#include "doctest.h"
#include "maya/error.hpp"
#include "maya/policies.hpp"
#include "maya/regret.hpp"
#include "maya/rng.hpp"

using namespace maya;

namespace {

RegretSeries series(std::vector<double> d) { return RegretSeries::from_instantaneous(d); }

double window_sum(const std::vector<double>& d, std::size_t first, std::size_t last) {
  double s = 0.0;
  for (std::size_t j = first; j <= last; ++j) s += d[j - 1];
  return s;
}

}  // namespace

TEST_SUITE("regret") {
  TEST_CASE("instantaneous regret is the error indicator") {
    CHECK(instantaneous_regret(Context(2, 4), ActionSide::Right) == 0);
    CHECK(instantaneous_regret(Context(2, 4), ActionSide::Left) == 1);
    for (auto ctx : {Context(2, 4), Context(4, 2), Context(1, 9)}) {
      for (auto a : {ActionSide::Left, ActionSide::Right}) {
        CHECK(instantaneous_regret(ctx, a) + counterfactual_reward(ctx, a) == 1);
      }
    }
  }

  TEST_CASE("all-correct expert has a zero series") {
    RegretSeries s;
    for (int i = 0; i < 10; ++i) s.push_back(instantaneous_regret(Context(4, 2), ActionSide::Left));
    CHECK(std::all_of(s.cumulative.begin(), s.cumulative.end(), [](double v) { return v == 0.0; }));
  }

  TEST_CASE("cumulative series is the running sum") {
    const RegretSeries s = series({1, 0, 1, 1, 0});
    CHECK(s.cumulative == std::vector<double>{1, 1, 2, 3, 3});
  }

  TEST_CASE("windowed regret examples") {
    CHECK(windowed_regret(series({1, 1, 1, 1, 1}), 5, 3) == 3);
    CHECK(windowed_regret(series(std::vector<double>(9, 0.0)), 7, 4) == 0);
    CHECK(windowed_regret(series({1, 0, 1, 0, 1, 0}), 6, 4) == window_sum({1, 0, 1, 0, 1, 0}, 2, 5));
    CHECK(windowed_regret(series({1, 0, 1, 0, 1, 0}), 6, 4) == 2);
  }

  TEST_CASE("warm-up uses the cumulative regret") {
    const RegretSeries s = series({1, 1, 0, 1, 0, 0});
    CHECK(windowed_regret(s, 2, 4) == 2);
    CHECK(windowed_regret(s, 3, 4) == 2);
  }

  TEST_CASE("window at t = tau starts at trial 1") {
    const RegretSeries s = series({1, 0, 1, 1});
    CHECK(windowed_regret(s, 3, 3) == 1);  // trials 1..2
    const WindowRange w = decision_window(3, 3);
    CHECK(w.first == 1);
    CHECK(w.last == 2);
  }

  TEST_CASE("decision windows") {
    WindowRange w = decision_window(2, 7);
    CHECK(w.first == 1);
    CHECK(w.last == 1);
    w = decision_window(6, 7);
    CHECK(w.first == 1);
    CHECK(w.last == 5);
    w = decision_window(10, 7);
    CHECK(w.first == 3);
    CHECK(w.last == 9);
    CHECK(w.length() == 7);
    CHECK_THROWS_AS(decision_window(1, 7), Error);
    CHECK_THROWS_AS(decision_window(5, 1), Error);
  }

  TEST_CASE("windowed regret index errors") {
    const RegretSeries s = series({1, 0, 1});
    CHECK_THROWS_AS(windowed_regret(s, 4, 2), Error);
    CHECK_THROWS_AS(windowed_regret(s, 0, 2), Error);
    CHECK_THROWS_AS(windowed_regret(s, 2, 1), Error);
  }

  TEST_CASE("tail regret sums from tau to T") {
    CHECK(tail_regret(series({1, 1, 0, 1, 1}), 3) == 2);
    CHECK(tail_regret(series({1, 1, 0, 1, 1}), 5) == 1);
  }

  TEST_CASE("windowed regret is bounded by the window") {
    Rng rng(3);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> d(30);
      for (auto& v : d) v = rng.bernoulli(0.4) ? 1.0 : 0.0;
      const RegretSeries s = series(d);
      for (std::size_t tau = 2; tau <= 30; ++tau) {
        for (std::size_t t = tau; t <= 30; ++t) {
          const double w = windowed_regret(s, t, tau);
          CHECK(w >= 0.0);
          CHECK(w <= static_cast<double>(std::min(t - 1, tau)));
        }
      }
      for (std::size_t t = 1; t < 30; ++t) {
        CHECK(s.cumulative[t] - s.cumulative[t - 1] == s.instantaneous[t]);
      }
    }
  }

  TEST_CASE("mismatch cost") {
    using A = ActionSide;
    const std::vector<A> a{A::Left, A::Right, A::Left, A::Left};
    const std::vector<A> b{A::Left, A::Left, A::Left, A::Right};
    const CostSeries c = mismatch_cost(a, b);
    CHECK(c.total == 2);
    CHECK(c.costs == std::vector<int>{0, 1, 0, 1});
    CHECK(mismatch_cost(a, a).total == 0);
    std::vector<A> flipped;
    for (A x : a) flipped.push_back(other(x));
    CHECK(mismatch_cost(a, flipped).total == 4);
    try {
      (void)mismatch_cost(a, std::vector<A>{A::Left});
      FAIL("expected LengthMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LengthMismatch);
    }
  }
}
