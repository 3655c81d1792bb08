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

"""Windowed regret matching: imitate an expert's choice sequence with a pool
of bandit policies and measure how well the imitation tracks it."""

from ._maya import (
    MayaError,
    Trajectory,
    aggregate_cost,
    cluster_acc,
    derive_optimal,
    dtw,
    fit_clusters,
    fit_dataset,
    kl_bernoulli,
    load_dataset,
    make_trajectory,
    mixed_population,
    run_maya,
    theoretical_bound,
    wasserstein1,
)

__all__ = [
    "MayaError",
    "Trajectory",
    "aggregate_cost",
    "cluster_acc",
    "derive_optimal",
    "dtw",
    "fit_clusters",
    "fit_dataset",
    "kl_bernoulli",
    "load_dataset",
    "make_trajectory",
    "mixed_population",
    "run_maya",
    "theoretical_bound",
    "wasserstein1",
]
