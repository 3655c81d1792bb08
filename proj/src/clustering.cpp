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
#include "maya/clustering.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "maya/rng.hpp"
#include "maya/similarity.hpp"

namespace maya {

namespace {

double squared_euclidean(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "series lengths differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

std::size_t argmin_centroid(const ClusterModel& model, std::span<const double> series,
                            double* best_distance = nullptr) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < model.centroids.size(); ++c) {
    const double d = cluster_distance(model, series, model.centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (best_distance) *best_distance = best_d;
  return best;
}

// k-means++: first centre uniform, later ones proportional to the distance
// to the nearest chosen centre.
std::vector<std::vector<double>> seed_centroids(const ClusterModel& model,
                                                std::span<const std::vector<double>> data,
                                                Rng& rng) {
  std::vector<std::vector<double>> centres;
  centres.push_back(data[rng.index(data.size())]);
  std::vector<double> weight(data.size());
  while (centres.size() < model.k) {
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      double d = std::numeric_limits<double>::infinity();
      for (const auto& c : centres) d = std::min(d, cluster_distance(model, data[i], c));
      weight[i] = d;
      total += d;
    }
    if (total <= 0.0) {
      centres.push_back(data[rng.index(data.size())]);
      continue;
    }
    for (double& w : weight) w /= total;
    centres.push_back(data[rng.categorical(weight)]);
  }
  return centres;
}

std::vector<double> mean_update(const std::vector<double>& current,
                                std::span<const std::vector<double>> members) {
  std::vector<double> out(current.size(), 0.0);
  for (const auto& m : members) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += m[i];
  }
  for (double& v : out) v /= static_cast<double>(members.size());
  return out;
}

// One DTW barycenter averaging step: every centroid coordinate moves to the
// mean of the member values aligned to it.
std::vector<double> dba_update(const std::vector<double>& current,
                               std::span<const std::vector<double>> members) {
  std::vector<double> sum(current.size(), 0.0);
  std::vector<std::size_t> count(current.size(), 0);
  for (const auto& m : members) {
    const WarpingPath path = dtw_path(current, m, LocalCost::Squared);
    for (const auto& [i, j] : path.steps) {
      sum[i] += m[j];
      ++count[i];
    }
  }
  std::vector<double> out(current.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = count[i] == 0 ? current[i] : sum[i] / static_cast<double>(count[i]);
  }
  return out;
}

}  // namespace

std::string_view to_string(ClusterMethod method) noexcept {
  return method == ClusterMethod::EuclideanKMeans ? "euclidean" : "dba";
}

ClusterMethod parse_cluster_method(std::string_view name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "euclid" || s == "euclidean" || s == "kmeans") return ClusterMethod::EuclideanKMeans;
  if (s == "dba") return ClusterMethod::DBAKMeans;
  throw Error(ErrorCode::InvalidArgument, "unknown cluster method '" + std::string(name) + "'");
}

std::map<std::string, std::size_t> ClusterModel::assignments() const {
  std::map<std::string, std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i < ids.size() ? ids[i] : std::to_string(i)] = labels[i];
  }
  return out;
}

std::vector<double> truncate(std::span<const double> series, std::size_t len) {
  if (series.size() < len) throw Error(ErrorCode::LengthMismatch, "series shorter than requested");
  return {series.begin(), series.begin() + static_cast<std::ptrdiff_t>(len)};
}

double cluster_distance(const ClusterModel& model, std::span<const double> a,
                        std::span<const double> b) {
  if (model.method == ClusterMethod::EuclideanKMeans) return squared_euclidean(a, b);
  return dtw_cost(a, b, LocalCost::Squared);
}

std::size_t nearest_centroid(const ClusterModel& model, std::span<const double> series) {
  if (model.centroids.empty()) throw Error(ErrorCode::InvalidArgument, "model has no centroids");
  if (model.method == ClusterMethod::EuclideanKMeans && series.size() != model.max_len) {
    throw Error(ErrorCode::LengthMismatch, "series length differs from the model's max_len");
  }
  return argmin_centroid(model, series);
}

ClusterModel fit_clusters(std::span<const std::vector<double>> series, ClusterMethod method,
                          std::size_t k, std::uint64_t seed, const ClusterOptions& options) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
  if (series.size() < k) {
    throw Error(ErrorCode::TooFewSeries, std::to_string(series.size()) + " series for k = " +
                                             std::to_string(k));
  }
  for (const auto& s : series) {
    if (s.empty()) throw Error(ErrorCode::EmptySequence, "cannot cluster an empty series");
  }

  ClusterModel model;
  model.method = method;
  model.k = k;

  std::vector<std::vector<double>> data;
  if (method == ClusterMethod::EuclideanKMeans) {
    model.max_len = std::min_element(series.begin(), series.end(), [](const auto& a, const auto& b) {
                      return a.size() < b.size();
                    })->size();
    for (const auto& s : series) data.push_back(truncate(s, model.max_len));
  } else {
    data.assign(series.begin(), series.end());
  }

  Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(StreamPurpose::Clustering), k,
                             static_cast<std::uint64_t>(method)}));
  model.centroids = seed_centroids(model, data, rng);
  model.labels.assign(data.size(), 0);

  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    double objective = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      double d = 0.0;
      model.labels[i] = argmin_centroid(model, data[i], &d);
      objective += d;
    }
    if (!model.objective_history.empty() &&
        objective > previous + 1e-9 * (1.0 + std::abs(previous))) {
      throw std::logic_error("k-means objective increased between iterations");
    }
    model.objective_history.push_back(objective);
    model.iterations = iter + 1;
    if (previous - objective <= options.tolerance) break;
    previous = objective;

    for (std::size_t c = 0; c < k; ++c) {
      std::vector<std::vector<double>> members;
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (model.labels[i] == c) members.push_back(data[i]);
      }
      if (members.empty()) continue;
      model.centroids[c] = method == ClusterMethod::EuclideanKMeans
                               ? mean_update(model.centroids[c], members)
                               : dba_update(model.centroids[c], members);
    }
  }

  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t label : model.labels) ++sizes[label];
  for (std::size_t c = 0; c < k; ++c) {
    if (sizes[c] == 0) model.degenerate = true;
    for (std::size_t d = c + 1; d < k; ++d) {
      if (model.centroids[c] == model.centroids[d]) model.degenerate = true;
    }
  }
  return model;
}

double cluster_acc(const ClusterModel& real, std::span<const std::vector<double>> simulated) {
  if (simulated.size() != real.labels.size()) {
    throw Error(ErrorCode::LengthMismatch, "simulated set is not index-aligned with the model");
  }
  if (simulated.empty()) throw Error(ErrorCode::EmptyInput, "no simulated series");
  std::size_t agree = 0;
  for (std::size_t i = 0; i < simulated.size(); ++i) {
    if (nearest_centroid(real, simulated[i]) == real.labels[i]) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(simulated.size());
}

double cluster_acc_separate(const ClusterModel& real, const ClusterModel& simulated) {
  if (real.k != simulated.k || real.method != simulated.method) {
    throw Error(ErrorCode::InvalidArgument, "models differ in k or method");
  }
  if (real.labels.size() != simulated.labels.size() || real.labels.empty()) {
    throw Error(ErrorCode::LengthMismatch, "models are not index-aligned");
  }
  if (real.k > 8) throw Error(ErrorCode::InvalidArgument, "centroid matching supports k <= 8");

  // perm[s] = real cluster matched to simulated cluster s.
  std::vector<std::size_t> perm(real.k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::size_t> best_perm = perm;
  double best_cost = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t s = 0; s < real.k; ++s) {
      cost += real.method == ClusterMethod::EuclideanKMeans
                  ? squared_euclidean(truncate(real.centroids[perm[s]],
                                               std::min(real.max_len, simulated.max_len)),
                                      truncate(simulated.centroids[s],
                                               std::min(real.max_len, simulated.max_len)))
                  : dtw_cost(real.centroids[perm[s]], simulated.centroids[s], LocalCost::Squared);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::size_t agree = 0;
  for (std::size_t i = 0; i < real.labels.size(); ++i) {
    if (best_perm[simulated.labels[i]] == real.labels[i]) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(real.labels.size());
}

std::vector<DiffRow> difference_surface(const ClusterModel& real,
                                        std::span<const std::vector<double>> real_series,
                                        std::span<const std::vector<double>> simulated_series) {
  if (real_series.size() != real.labels.size() || simulated_series.size() != real.labels.size()) {
    throw Error(ErrorCode::LengthMismatch, "series are not index-aligned with the model");
  }
  std::size_t longest = 0;
  for (std::size_t i = 0; i < real_series.size(); ++i) {
    longest = std::max(longest, std::min(real_series[i].size(), simulated_series[i].size()));
  }
  std::vector<DiffRow> rows;
  for (std::size_t c = 0; c < real.k; ++c) {
    for (std::size_t t = 0; t < longest; ++t) {
      std::vector<double> diffs;
      for (std::size_t i = 0; i < real_series.size(); ++i) {
        if (real.labels[i] != c) continue;
        if (t >= real_series[i].size() || t >= simulated_series[i].size()) continue;
        diffs.push_back(simulated_series[i][t] - real_series[i][t]);
      }
      if (diffs.empty()) continue;
      double mean = 0.0;
      for (double d : diffs) mean += d;
      mean /= static_cast<double>(diffs.size());
      double var = 0.0;
      for (double d : diffs) var += (d - mean) * (d - mean);
      rows.push_back(DiffRow{c, t + 1, mean, std::sqrt(var / static_cast<double>(diffs.size())),
                             diffs.size()});
    }
  }
  return rows;
}

}  // namespace maya
