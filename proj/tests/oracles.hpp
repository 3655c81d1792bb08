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
#ifndef MAYA_TESTS_ORACLES_HPP
#define MAYA_TESTS_ORACLES_HPP

// Straightforward reference computations the library results are compared
// against. They are written for clarity, not speed, and share no code with
// the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

/// Enumerates every monotone warping path from (0, 0) to (n - 1, m - 1)
/// with steps (1,0), (0,1), (1,1) and returns the cheapest |x - y| sum.
inline double brute_force_dtw(const std::vector<double>& x, const std::vector<double>& y) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, double)> walk = [&](std::size_t i, std::size_t j,
                                                                  double acc) {
    acc += std::abs(x[i] - y[j]);
    if (i + 1 == x.size() && j + 1 == y.size()) {
      best = std::min(best, acc);
      return;
    }
    if (i + 1 < x.size()) walk(i + 1, j, acc);
    if (j + 1 < y.size()) walk(i, j + 1, acc);
    if (i + 1 < x.size() && j + 1 < y.size()) walk(i + 1, j + 1, acc);
  };
  walk(0, 0, 0.0);
  return best;
}

inline double sorted_l1_mean(std::vector<double> x, std::vector<double> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - y[i]);
  return s / static_cast<double>(x.size());
}

inline double ecdf(const std::vector<double>& v, double s) {
  std::size_t n = 0;
  for (double a : v) n += a <= s ? 1 : 0;
  return static_cast<double>(n) / static_cast<double>(v.size());
}

/// Midpoint-rule integral of |F_x - F_y| over [lo, hi] with `cells` cells.
inline double cdf_integral(const std::vector<double>& x, const std::vector<double>& y, double lo,
                           double hi, std::size_t cells) {
  const double h = (hi - lo) / static_cast<double>(cells);
  double s = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    const double mid = lo + (static_cast<double>(c) + 0.5) * h;
    s += std::abs(ecdf(x, mid) - ecdf(y, mid));
  }
  return s * h;
}

inline double bernoulli_kl(double p, double q) {
  return p * std::log(p / q) + (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
}

/// Solves A z = r by Gaussian elimination with partial pivoting.
inline std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> r) {
  const std::size_t n = r.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
    }
    std::swap(a[col], a[piv]);
    std::swap(r[col], r[piv]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      r[row] -= f * r[col];
    }
  }
  std::vector<double> z(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = r[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * z[k];
    z[i] = s / a[i][i];
  }
  return z;
}

/// Ridge estimate (X^T X + lambda I)^-1 X^T y from the full design matrix.
inline std::vector<double> batch_ridge(const std::vector<std::vector<double>>& rows,
                                       const std::vector<double>& targets, std::size_t dim,
                                       double lambda) {
  std::vector<std::vector<double>> g(dim, std::vector<double>(dim, 0.0));
  std::vector<double> b(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) g[i][i] = lambda;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < dim; ++i) {
      b[i] += targets[r] * rows[r][i];
      for (std::size_t j = 0; j < dim; ++j) g[i][j] += rows[r][i] * rows[r][j];
    }
  }
  return solve(g, b);
}

inline double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace oracle

#endif  // MAYA_TESTS_ORACLES_HPP
