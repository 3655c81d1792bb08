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
#include <cmath>

#include "doctest.h"
#include "maya/clustering.hpp"
#include "maya/error.hpp"
#include "maya/rng.hpp"

using namespace maya;
using Series = std::vector<std::vector<double>>;

namespace {

/// Cumulative regret of always-right (flat) and always-wrong (slope one)
/// experts, with a little jitter so the fit is not trivial.
Series archetypes(std::size_t per_group, std::uint64_t seed, bool ragged) {
  Rng rng(seed);
  Series out;
  for (std::size_t i = 0; i < 2 * per_group; ++i) {
    const bool wrong = i % 2 == 1;
    const std::size_t len = ragged ? 22 + rng.index(19) : 30;
    std::vector<double> s(len);
    double acc = 0.0;
    for (std::size_t t = 0; t < len; ++t) {
      const double p = wrong ? 0.95 : 0.05;
      acc += rng.bernoulli(p) ? 1.0 : 0.0;
      s[t] = acc;
    }
    out.push_back(s);
  }
  return out;
}

bool non_increasing(const std::vector<double>& h) {
  for (std::size_t i = 1; i < h.size(); ++i) {
    if (h[i] > h[i - 1] + 1e-9 * std::max(1.0, std::abs(h[i - 1]))) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("clustering") {
  TEST_CASE("separable archetypes split perfectly") {
    for (ClusterMethod m : {ClusterMethod::EuclideanKMeans, ClusterMethod::DBAKMeans}) {
      const Series data = archetypes(10, 3, m == ClusterMethod::DBAKMeans);
      const ClusterModel model = fit_clusters(data, m, 2, 7);
      REQUIRE(model.labels.size() == data.size());
      for (std::size_t i = 2; i < data.size(); ++i) CHECK(model.labels[i] == model.labels[i % 2]);
      CHECK(model.labels[0] != model.labels[1]);
      CHECK(non_increasing(model.objective_history));
      CHECK_FALSE(model.degenerate);

      // slopes of the centroids are close to 0 and 1
      std::vector<double> slopes;
      for (const auto& c : model.centroids) slopes.push_back((c.back() - c.front()) / (c.size() - 1.0));
      std::sort(slopes.begin(), slopes.end());
      CHECK(slopes[0] < 0.2);
      CHECK(slopes[1] > 0.8);
    }
  }

  TEST_CASE("euclidean model truncates to the shortest series") {
    const Series data = archetypes(5, 4, true);
    const ClusterModel model = fit_clusters(data, ClusterMethod::EuclideanKMeans, 2, 1);
    std::size_t shortest = data[0].size();
    for (const auto& s : data) shortest = std::min(shortest, s.size());
    CHECK(model.max_len == shortest);
    for (const auto& c : model.centroids) CHECK(c.size() == shortest);
    try {
      (void)nearest_centroid(model, std::vector<double>(shortest + 1, 0.0));
      FAIL("expected LengthMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::LengthMismatch);
    }
  }

  TEST_CASE("objective never increases on random data") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      Series data;
      for (int i = 0; i < 12; ++i) {
        std::vector<double> s(10 + rng.index(10));
        double acc = 0.0;
        for (auto& v : s) v = acc += rng.uniform();
        data.push_back(s);
      }
      for (ClusterMethod m : {ClusterMethod::EuclideanKMeans, ClusterMethod::DBAKMeans}) {
        const ClusterModel model = fit_clusters(data, m, 3, trial);
        CHECK(non_increasing(model.objective_history));
        CHECK(model.iterations <= ClusterOptions{}.max_iterations);
      }
    }
  }

  TEST_CASE("too few series") {
    const Series one{{0, 1, 2}};
    try {
      (void)fit_clusters(one, ClusterMethod::DBAKMeans, 2, 0);
      FAIL("expected TooFewSeries");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TooFewSeries);
    }
  }

  TEST_CASE("identical copies give a degenerate model") {
    const Series copies(4, std::vector<double>{0, 1, 1, 2, 3});
    for (ClusterMethod m : {ClusterMethod::EuclideanKMeans, ClusterMethod::DBAKMeans}) {
      const ClusterModel model = fit_clusters(copies, m, 2, 0);
      CHECK(model.degenerate);
    }
  }

  TEST_CASE("copies of the real series agree fully") {
    for (ClusterMethod m : {ClusterMethod::EuclideanKMeans, ClusterMethod::DBAKMeans}) {
      const Series data = archetypes(6, 8, m == ClusterMethod::DBAKMeans);
      Series sim = data;
      const ClusterModel model = fit_clusters(data, m, 2, 2);
      if (m == ClusterMethod::EuclideanKMeans) {
        for (auto& s : sim) s = truncate(s, model.max_len);
      }
      CHECK(cluster_acc(model, sim) == 1.0);
    }
  }

  TEST_CASE("swapped simulated archetypes disagree fully") {
    const Series data = archetypes(6, 9, false);
    Series sim = data;
    for (std::size_t i = 0; i + 1 < sim.size(); i += 2) std::swap(sim[i], sim[i + 1]);
    const ClusterModel model = fit_clusters(data, ClusterMethod::DBAKMeans, 2, 2);
    CHECK(cluster_acc(model, sim) == 0.0);
  }

  TEST_CASE("agreement between separate fits ignores label order") {
    const Series data = archetypes(8, 10, true);
    const ClusterModel a = fit_clusters(data, ClusterMethod::DBAKMeans, 2, 1);
    bool seen_swap = false;
    for (std::uint64_t seed = 2; seed < 12; ++seed) {
      const ClusterModel b = fit_clusters(data, ClusterMethod::DBAKMeans, 2, seed);
      seen_swap = seen_swap || b.labels[0] != a.labels[0];
      CHECK(cluster_acc_separate(a, b) == 1.0);
    }
    ClusterModel relabelled = a;
    for (auto& l : relabelled.labels) l = 1 - l;
    std::swap(relabelled.centroids[0], relabelled.centroids[1]);
    CHECK(cluster_acc_separate(a, relabelled) == 1.0);
  }

  TEST_CASE("cluster_acc input checks") {
    const Series data = archetypes(3, 11, false);
    const ClusterModel model = fit_clusters(data, ClusterMethod::EuclideanKMeans, 2, 0);
    const Series fewer(data.begin(), data.begin() + 2);
    CHECK_THROWS_AS(cluster_acc(model, fewer), Error);
  }

  TEST_CASE("difference surface") {
    const Series real = archetypes(4, 12, false);
    Series sim = real;
    for (auto& s : sim) {
      for (auto& v : s) v += 1.0;
    }
    const ClusterModel model = fit_clusters(real, ClusterMethod::DBAKMeans, 2, 0);
    const auto rows = difference_surface(model, real, sim);
    REQUIRE(rows.size() == 2 * 30);
    for (const auto& r : rows) {
      CHECK(r.mean_diff == doctest::Approx(1.0));
      CHECK(r.std_diff == doctest::Approx(0.0));
      CHECK(r.count == 4);
    }
    CHECK(rows.front().t == 1);
  }

  TEST_CASE("method names") {
    CHECK(parse_cluster_method("dba") == ClusterMethod::DBAKMeans);
    CHECK(parse_cluster_method("Euclidean") == ClusterMethod::EuclideanKMeans);
    CHECK_THROWS_AS(parse_cluster_method("spectral"), Error);
  }
}
