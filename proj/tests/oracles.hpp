// Test-only reference implementations, independent of the library paths they
// cross-check.
#pragma once

#include <Eigen/SVD>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "pwa/types.hpp"

namespace oracle {

// Closed-form simple linear regression for d = 1: slope, intercept, and the
// residual sum of squares.
struct SimpleLinReg {
  double slope = 0;
  double intercept = 0;
  double sse = 0;
};

inline SimpleLinReg simple_linreg_1d(const std::vector<double>& x,
                                     const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double cov = 0, var = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (x[i] - mx) * (y[i] - my);
    var += (x[i] - mx) * (x[i] - mx);
  }
  SimpleLinReg out;
  out.slope = var > 0 ? cov / var : 0;
  out.intercept = my - out.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - out.slope * x[i] - out.intercept;
    out.sse += e * e;
  }
  return out;
}

// Minimum-norm least squares through an SVD pseudoinverse; a second route
// against the library's orthogonal-decomposition fit.
inline pwa::Vector pinv_fit(const pwa::Matrix& X, const pwa::Vector& y) {
  pwa::Matrix Xb(X.rows(), X.cols() + 1);
  Xb.leftCols(X.cols()) = X;
  Xb.col(X.cols()).setOnes();
  Eigen::JacobiSVD<pwa::Matrix> svd(Xb, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const pwa::Vector& sv = svd.singularValues();
  const double cut = sv.size() ? sv(0) * 1e-12 : 0;
  pwa::Vector t = svd.matrixU().transpose() * y;
  for (Eigen::Index i = 0; i < t.size(); ++i) t(i) = sv(i) > cut ? t(i) / sv(i) : 0;
  return svd.matrixV() * t;
}

// All labelings of collinear points realizable by a signed threshold: sort
// by coordinate, then every prefix/suffix split in both orientations.
inline std::set<std::vector<int>> threshold_labelings_1d(
    const std::vector<double>& points) {
  const int N = static_cast<int>(points.size());
  std::vector<int> order(N);
  for (int i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return points[a] < points[b]; });

  std::set<std::vector<int>> out;
  for (int cut = 0; cut <= N; ++cut) {
    std::vector<int> low_minus(N), low_plus(N);
    for (int r = 0; r < N; ++r) {
      low_minus[order[r]] = r < cut ? 2 : 1;
      low_plus[order[r]] = r < cut ? 1 : 2;
    }
    out.insert(low_minus);
    out.insert(low_plus);
  }
  return out;
}

inline std::vector<int> to_vec(const pwa::Labeling& q) {
  return {q.data(), q.data() + q.size()};
}

// Integer-grid regressors with a small deterministic perturbation, redrawn
// until the points are in general position.
inline pwa::Dataset random_gp_dataset(int N, int d, std::mt19937_64& rng,
                                      bool integer_targets = true) {
  std::uniform_int_distribution<int> grid(-5, 5);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  std::uniform_int_distribution<int> target(-4, 4);
  std::uniform_real_distribution<double> real_target(-4, 4);

  pwa::Dataset data;
  data.X.resize(N, d);
  data.y.resize(N);
  for (;;) {
    for (int i = 0; i < N; ++i) {
      for (int c = 0; c < d; ++c) data.X(i, c) = grid(rng) + jitter(rng);
      data.y(i) = integer_targets ? target(rng) : real_target(rng);
    }
    bool ok = true;
    // Inline affine-independence check over all (d+1)-subsets.
    std::vector<int> idx(d + 1);
    for (int i = 0; i <= d; ++i) idx[i] = i;
    for (;;) {
      pwa::Matrix diffs(d, d);
      for (int r = 1; r <= d; ++r)
        diffs.row(r - 1) = data.X.row(idx[r]) - data.X.row(idx[0]);
      Eigen::JacobiSVD<pwa::Matrix> svd(diffs);
      if (svd.singularValues()(d - 1) <= 1e-8) {
        ok = false;
        break;
      }
      int t = d;
      while (t >= 0 && idx[t] == N - (d + 1) + t) --t;
      if (t < 0) break;
      ++idx[t];
      for (int u = t + 1; u <= d; ++u) idx[u] = idx[u - 1] + 1;
    }
    if (ok) return data;
  }
}

}  // namespace oracle
