#pragma once

// Test-side helpers: an RNG independent of the library's, and brute-force
// oracles that recompute quantities from their definitions.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace testing_support {

class Draws {
 public:
  explicit Draws(unsigned seed) : gen_(seed) {}
  std::vector<double> normal(std::size_t n, double sd = 1.0) {
    std::normal_distribution<double> d(0.0, sd);
    std::vector<double> v(n);
    for (double& e : v) e = d(gen_);
    return v;
  }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }
  std::vector<double> shuffled(std::vector<double> v) {
    std::shuffle(v.begin(), v.end(), gen_);
    return v;
  }

 private:
  std::mt19937 gen_;
};

// k-th largest by full sort, k counted from 1.
inline double kth_largest(std::vector<double> v, std::size_t k) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v[k - 1];
}

inline double mean_of_top(std::vector<double> v, std::size_t k) {
  std::sort(v.begin(), v.end(), std::greater<>());
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += v[i];
  return s / static_cast<double>(k);
}

// Distance correlation from the textbook definition with explicit matrices.
inline double dcor_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  auto centred = [n](const std::vector<double>& v) {
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::fabs(v[i] - v[j]);
    std::vector<double> rm(n, 0.0), cm(n, 0.0);
    double gm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        rm[i] += d[i][j] / n;
        cm[j] += d[i][j] / n;
        gm += d[i][j] / (n * n);
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = d[i][j] - rm[i] - cm[j] + gm;
    return d;
  };
  const auto A = centred(a), B = centred(b);
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ab += A[i][j] * B[i][j];
      aa += A[i][j] * A[i][j];
      bb += B[i][j] * B[i][j];
    }
  return std::sqrt(ab / std::sqrt(aa * bb));
}

// Root of an increasing scalar function by plain bisection on a fixed bracket.
inline double bisect_increasing(const std::function<double(double)>& f, double lo, double hi) {
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Minimum of f over a fine grid, then refined by golden section.
inline double grid_minimum(const std::function<double(double)>& f, double lo, double hi) {
  const int steps = 20000;
  double best = lo, fbest = f(lo);
  for (int i = 1; i <= steps; ++i) {
    const double x = lo + (hi - lo) * i / steps;
    if (const double fx = f(x); fx < fbest) {
      fbest = fx;
      best = x;
    }
  }
  double a = best - (hi - lo) / steps, b = best + (hi - lo) / steps;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int i = 0; i < 200; ++i) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    (f(c) < f(d) ? b : a) = (f(c) < f(d) ? d : c);
  }
  return std::min(fbest, f(0.5 * (a + b)));
}

}  // namespace testing_support
