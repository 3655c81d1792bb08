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
#include "maya/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace maya {

namespace {

void require_nonempty(std::span<const double> x, std::span<const double> y) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::EmptySequence, "sequence is empty");
}

double local(double a, double b, LocalCost cost) {
  const double d = a - b;
  return cost == LocalCost::Absolute ? std::abs(d) : d * d;
}

// Full accumulated-cost matrix, row-major (n x m).
std::vector<double> accumulate(std::span<const double> x, std::span<const double> y, LocalCost cost) {
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  std::vector<double> acc(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double c = local(x[i], y[j], cost);
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else if (i == 0) {
        best = acc[j - 1];
      } else if (j == 0) {
        best = acc[(i - 1) * m];
      } else {
        best = std::min({acc[(i - 1) * m + j - 1], acc[(i - 1) * m + j], acc[i * m + j - 1]});
      }
      acc[i * m + j] = c + best;
    }
  }
  return acc;
}

double bernoulli_kl(double p, double q) {
  double out = 0.0;
  if (p > 0.0) out += p * std::log(p / q);
  if (p < 1.0) out += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return std::max(out, 0.0);
}

std::vector<double> running_sum(std::span<const double> x) {
  std::vector<double> out(x.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = acc += x[i];
  return out;
}

}  // namespace

std::string_view to_string(SimilarityKind kind) noexcept {
  switch (kind) {
    case SimilarityKind::KL: return "KL";
    case SimilarityKind::Wasserstein1: return "Wass";
    case SimilarityKind::DTW: return "DTW";
  }
  return "Unknown";
}

std::string_view short_name(SimilarityKind kind) noexcept {
  switch (kind) {
    case SimilarityKind::KL: return "kl";
    case SimilarityKind::Wasserstein1: return "wass";
    case SimilarityKind::DTW: return "dtw";
  }
  return "unknown";
}

SimilarityKind parse_similarity_kind(std::string_view name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "kl") return SimilarityKind::KL;
  if (s == "wass" || s == "wasserstein" || s == "wasserstein1" || s == "w1") {
    return SimilarityKind::Wasserstein1;
  }
  if (s == "dtw") return SimilarityKind::DTW;
  throw Error(ErrorCode::InvalidArgument, "unknown metric '" + std::string(name) + "'");
}

double dtw_cost(std::span<const double> x, std::span<const double> y, LocalCost cost) {
  require_nonempty(x, y);
  // Two-row version of `accumulate`.
  const std::size_t m = y.size();
  std::vector<double> prev(m), cur(m);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double c = local(x[i], y[j], cost);
      double best;
      if (i == 0 && j == 0) {
        best = 0.0;
      } else if (i == 0) {
        best = cur[j - 1];
      } else if (j == 0) {
        best = prev[0];
      } else {
        best = std::min({prev[j - 1], prev[j], cur[j - 1]});
      }
      cur[j] = c + best;
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

double dtw(std::span<const double> x, std::span<const double> y) {
  return dtw_cost(x, y, LocalCost::Absolute);
}

WarpingPath dtw_path(std::span<const double> x, std::span<const double> y, LocalCost cost) {
  require_nonempty(x, y);
  const std::size_t n = x.size();
  const std::size_t m = y.size();
  const std::vector<double> acc = accumulate(x, y, cost);

  WarpingPath path;
  path.cost = acc[n * m - 1];
  std::size_t i = n - 1;
  std::size_t j = m - 1;
  path.steps.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double diag = acc[(i - 1) * m + j - 1];
      const double up = acc[(i - 1) * m + j];
      const double left = acc[i * m + j - 1];
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    }
    path.steps.emplace_back(i, j);
  }
  std::reverse(path.steps.begin(), path.steps.end());
  return path;
}

double kl_bernoulli(std::span<const double> x, std::span<const double> y, double smoothing) {
  require_nonempty(x, y);
  if (!(smoothing > 0.0)) throw Error(ErrorCode::InvalidArgument, "smoothing must be positive");
  const auto rate = [smoothing](std::span<const double> s) {
    double sum = 0.0;
    for (double v : s) sum += v;
    return (sum + smoothing) / (static_cast<double>(s.size()) + 2.0 * smoothing);
  };
  return bernoulli_kl(rate(x), rate(y));
}

double wasserstein1(std::span<const double> x, std::span<const double> y) {
  require_nonempty(x, y);
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> b(y.begin(), y.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::uint64_t n = a.size();
  const std::uint64_t m = b.size();

  if (n == m) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::abs(a[i] - b[i]);
    return sum / static_cast<double>(n);
  }

  // Integrate |F_a^-1(u) - F_b^-1(u)| over u in [0, 1]. Quantile breakpoints
  // sit at i/n and j/m; in units of 1/(n m) they are i*m and j*n (exact).
  double sum = 0.0;
  std::uint64_t i = 0, j = 0, u = 0;
  while (i < n && j < m) {
    const std::uint64_t next_a = (i + 1) * m;
    const std::uint64_t next_b = (j + 1) * n;
    const std::uint64_t next = std::min(next_a, next_b);
    sum += static_cast<double>(next - u) * std::abs(a[i] - b[j]);
    u = next;
    if (next_a == next) ++i;
    if (next_b == next) ++j;
  }
  return sum / static_cast<double>(n * m);
}

double distance(SimilarityKind kind, std::span<const double> expert, std::span<const double> policy,
                const DistanceOptions& options) {
  if (options.on_cumulative) {
    if (kind == SimilarityKind::KL) {
      throw Error(ErrorCode::InvalidArgument,
                  "KL compares Bernoulli rates and is not defined on cumulative curves");
    }
    const std::vector<double> ce = running_sum(expert);
    const std::vector<double> cp = running_sum(policy);
    return distance(kind, ce, cp, DistanceOptions{options.kl_smoothing, false});
  }
  switch (kind) {
    case SimilarityKind::KL: return kl_bernoulli(expert, policy, options.kl_smoothing);
    case SimilarityKind::Wasserstein1: return wasserstein1(expert, policy);
    case SimilarityKind::DTW: return dtw(expert, policy);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double policy_distance(SimilarityKind kind, std::span<const double> expert_regrets,
                       std::span<const double> policy_regrets, WindowRange window,
                       const DistanceOptions& options) {
  if (window.first < 1 || window.last < window.first || window.last > expert_regrets.size() ||
      window.last > policy_regrets.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "window not covered by both regret series");
  }
  const std::size_t offset = window.first - 1;
  return distance(kind, expert_regrets.subspan(offset, window.length()),
                  policy_regrets.subspan(offset, window.length()), options);
}

}  // namespace maya
