# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import maya


def test_optimal_side_follows_more_stimuli():
    assert maya.derive_optimal(4, 2) == "L"
    assert maya.derive_optimal(1, 3) == "R"
    with pytest.raises(maya.MayaError):
        maya.derive_optimal(2, 2)


def test_distances_small_cases():
    assert maya.dtw([0, 1, 1], [0, 1]) == 0.0
    assert maya.dtw([0, 0], [1, 1]) == 2.0
    assert maya.wasserstein1([0, 0, 1, 1], [1, 1, 1, 1]) == pytest.approx(0.5)
    # smoothed rates (0.5/2, 1.5/2) against each other
    p, q = 0.25, 0.75
    expected = p * math.log(p / q) + (1 - p) * math.log((1 - p) / (1 - q))
    assert maya.kl_bernoulli([0], [1]) == pytest.approx(expected)


def test_run_maya_shapes_and_determinism():
    traj = maya.make_trajectory("bee", [(4, 2), (2, 4)] * 10, "LR" * 5 + "RL" * 5)
    assert traj.horizon == 20
    run = maya.run_maya(traj, tau=5, seed=3)
    assert len(run["actions"]) == 19
    assert run["total_cost"] == sum(run["cost"])
    assert maya.run_maya(traj, tau=5, seed=3) == run


def test_fit_dataset_and_single_policy_pool():
    pop = maya.mixed_population(4, 20, seed=1)
    fit = maya.fit_dataset(pop, tau=5, reps=5, candidates=["Uniform"], workers=1)
    assert fit["alignment"]["proportions"] == {"Uniform": 1.0}
    assert len(fit["experts"]) == 4
    assert fit["cost"]["mse"] >= fit["cost"]["mae"] ** 2 - 1e-9


def test_aggregate_cost_moments():
    m = maya.aggregate_cost([1.0, 3.0])
    assert m["mae"] == pytest.approx(2.0)
    assert m["mse"] == pytest.approx(5.0)
    assert m["mae_std"] == pytest.approx(1.0)


def test_bound_classification():
    b = maya.theoretical_bound("cyclic", 40, 10, 40)
    assert b["tau_class"] == "no_window"
    assert b["bound"] == pytest.approx(40 * (5 * 40 + 6) / 16)
    assert maya.theoretical_bound("zero_regret", 20, 5, 7)["bound"] == pytest.approx(20 * 22 / 8)


def test_clustering_separates_archetypes():
    low = [[0.0 * t for t in range(10)] for _ in range(3)]
    high = [[float(t) for t in range(10)] for _ in range(3)]
    model = maya.fit_clusters(low + high, method="euclidean", k=2)
    assert len(set(model["labels"][:3])) == 1
    assert model["labels"][0] != model["labels"][3]
    hist = model["objective_history"]
    assert all(b <= a for a, b in zip(hist, hist[1:]))
    assert maya.cluster_acc(low + high, low + high, method="dba") == 1.0
