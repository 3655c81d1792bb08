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
#include "maya/domain.hpp"
#include "maya/error.hpp"

using namespace maya;

namespace {

Trajectory well_formed(std::size_t horizon) {
  std::vector<Context> contexts;
  std::vector<ActionSide> choices;
  for (std::size_t t = 0; t < horizon; ++t) {
    contexts.push_back(t % 3 == 0 ? Context(2, 4) : Context(4, 2));
    choices.push_back(t % 2 == 0 ? ActionSide::Left : ActionSide::Right);
  }
  return make_trajectory("bee", contexts, choices);
}

}  // namespace

TEST_SUITE("domain") {
  TEST_CASE("optimal side follows the larger stimulus count") {
    CHECK(derive_optimal(Context(2, 4)) == ActionSide::Right);
    CHECK(derive_optimal(Context(4, 2)) == ActionSide::Left);
    CHECK(derive_optimal(Context(std::vector<double>{5, 1, 0.3})) == ActionSide::Left);
  }

  TEST_CASE("equal stimuli have no optimal side") {
    try {
      (void)derive_optimal(Context(3, 3));
      FAIL("expected EqualStimuli");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::EqualStimuli);
    }
  }

  TEST_CASE("contexts need at least two features") {
    CHECK_THROWS_AS(Context(std::vector<double>{1.0}), Error);
  }

  TEST_CASE("action helpers") {
    CHECK(other(ActionSide::Left) == ActionSide::Right);
    CHECK(ActionSide::Left < ActionSide::Right);
    CHECK(parse_side("L") == ActionSide::Left);
    CHECK(parse_side("right") == ActionSide::Right);
    CHECK(to_char(ActionSide::Right) == 'R');
    CHECK_THROWS_AS(parse_side("up"), Error);
  }

  TEST_CASE("weather names parse case-insensitively") {
    CHECK(parse_weather("hot") == Weather::Hot);
    CHECK(parse_weather("Cold") == Weather::Cold);
    CHECK(to_string(Weather::Moderate) == "Moderate");
  }

  TEST_CASE("make_trajectory derives rewards from the stimuli") {
    const Trajectory traj = well_formed(22);
    REQUIRE(traj.horizon() == 22);
    for (const Trial& t : traj.trials) {
      CHECK(t.reward == (t.expert_action == derive_optimal(t.context) ? 1 : 0));
      CHECK(t.expert_regret() == 1 - t.reward);
    }
    CHECK(traj.trials.front().index == 1);
    CHECK(traj.trials.back().index == 22);
  }

  TEST_CASE("well-formed trajectory has no violations") {
    CHECK(validate_trajectory(well_formed(22)).empty());
  }

  TEST_CASE("a reward on the wrong side is reported at its trial") {
    Trajectory traj = well_formed(8);
    traj.trials[4].reward = 1 - traj.trials[4].reward;
    const auto v = validate_trajectory(traj);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::RewardInconsistent);
    CHECK(v[0].trial == 5);
    CHECK(v[0].describe() == "bee: RewardInconsistent@5");
  }

  TEST_CASE("a gap in trial numbering is reported where it starts") {
    Trajectory traj = well_formed(3);
    traj.trials[2].index = 4;
    const auto v = validate_trajectory(traj);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::NonContiguous);
    CHECK(v[0].trial == 3);
  }

  TEST_CASE("stimulus and reward problems are all reported") {
    Trajectory traj = well_formed(4);
    traj.trials[0].context = Context(3, 3);
    traj.trials[1].context = Context(-1, 2);
    traj.trials[2].reward = 7;
    const auto v = validate_trajectory(traj);
    auto has = [&](ViolationKind k, std::size_t t) {
      return std::any_of(v.begin(), v.end(),
                         [&](const Violation& x) { return x.kind == k && x.trial == t; });
    };
    CHECK(has(ViolationKind::EqualStimuli, 1));
    CHECK(has(ViolationKind::NegativeStimulus, 2));
    CHECK(has(ViolationKind::InvalidReward, 3));
  }

  TEST_CASE("declared horizon must match") {
    Trajectory traj = well_formed(5);
    traj.meta.horizon = 6;
    const auto v = validate_trajectory(traj);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0].kind == ViolationKind::HorizonMismatch);
  }

  TEST_CASE("single-trial trajectories are too short") {
    const auto v = validate_trajectory(well_formed(1));
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::TooShort);
  }

  TEST_CASE("mixed context dimensions are rejected") {
    Trajectory traj = well_formed(3);
    traj.trials[1].context = Context(std::vector<double>{4, 2, 1});
    const auto v = validate_trajectory(traj);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::DimensionMismatch);
    CHECK(v[0].trial == 2);
  }
}
