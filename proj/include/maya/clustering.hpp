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
#ifndef MAYA_CLUSTERING_HPP
#define MAYA_CLUSTERING_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maya/error.hpp"

namespace maya {

enum class ClusterMethod { EuclideanKMeans, DBAKMeans };

std::string_view to_string(ClusterMethod method) noexcept;
/// "euclid" / "euclidean" or "dba".
ClusterMethod parse_cluster_method(std::string_view name);

struct ClusterOptions {
  std::size_t max_iterations = 50;
  double tolerance = 1e-6;
};

/// k-means over cumulative-regret curves.
///
/// EuclideanKMeans truncates every series to the shortest length (`max_len`)
/// and uses squared Euclidean distance. DBAKMeans keeps full lengths, assigns
/// by DTW with squared local cost and moves each centroid by one DTW
/// barycenter averaging step per iteration; both steps never increase the
/// objective, which is recorded in `objective_history` and checked on every
/// fit.
struct ClusterModel {
  ClusterMethod method = ClusterMethod::EuclideanKMeans;
  std::size_t k = 2;
  std::vector<std::vector<double>> centroids;
  std::vector<std::size_t> labels;  // index-aligned with the fitted series
  std::vector<std::string> ids;     // optional, index-aligned with labels
  std::size_t max_len = 0;          // truncation length, Euclidean only
  std::vector<double> objective_history;
  std::size_t iterations = 0;
  /// Set when two centroids coincide or a cluster ends up empty.
  bool degenerate = false;

  std::map<std::string, std::size_t> assignments() const;
};

std::vector<double> truncate(std::span<const double> series, std::size_t len);

ClusterModel fit_clusters(std::span<const std::vector<double>> series, ClusterMethod method,
                          std::size_t k, std::uint64_t seed, const ClusterOptions& options = {});

/// Distance used by the model's assignment step.
double cluster_distance(const ClusterModel& model, std::span<const double> a,
                        std::span<const double> b);
std::size_t nearest_centroid(const ClusterModel& model, std::span<const double> series);

/// Fraction of index pairs whose simulated series lands in the same cluster
/// as the real one, simulated series being assigned to the real centroids.
/// Euclidean models require every simulated series to have length max_len.
double cluster_acc(const ClusterModel& real, std::span<const std::vector<double>> simulated);

/// Label agreement between two independently fitted models after matching
/// their centroids one-to-one by minimal total centroid distance.
double cluster_acc_separate(const ClusterModel& real, const ClusterModel& simulated);

struct DiffRow {
  std::size_t cluster = 0;
  std::size_t t = 0;  // 1-based trial
  double mean_diff = 0.0;
  double std_diff = 0.0;
  std::size_t count = 0;
};

/// Per real-cluster mean and std of simulated[i][t] - real[i][t], t = 1..max
/// length, over the members whose series both reach t.
std::vector<DiffRow> difference_surface(const ClusterModel& real,
                                        std::span<const std::vector<double>> real_series,
                                        std::span<const std::vector<double>> simulated_series);

}  // namespace maya

#endif  // MAYA_CLUSTERING_HPP
