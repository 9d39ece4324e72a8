#include "submod/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "submod/errors.hpp"
#include "submod/root_finding.hpp"

namespace submod {

namespace {

void require_confidence(double p, bool allow_zero) {
  const bool ok = allow_zero ? (p >= 0.0 && p < 1.0) : (p > 0.0 && p < 1.0);
  if (!ok)
    throw DomainError("confidence level " + std::to_string(p) + (allow_zero ? " outside [0,1)" : " outside (0,1)"));
}

}  // namespace

std::size_t tail_count(std::size_t n, double p) {
  const double raw = static_cast<double>(n) * (1.0 - p);
  const double k = std::ceil(raw - 1e-9 * std::max(1.0, raw));
  return static_cast<std::size_t>(std::clamp(k, 1.0, static_cast<double>(n)));
}

double var_historical(const EmpiricalSample& sample, double p) {
  require_confidence(p, false);
  std::vector<double> v = sample.vector();
  const std::size_t k = tail_count(v.size(), p);
  std::ranges::nth_element(v, v.begin() + static_cast<std::ptrdiff_t>(k - 1), std::greater<>());
  return v[k - 1];
}

double es_historical(const EmpiricalSample& sample, double p) {
  require_confidence(p, true);
  std::vector<double> v = sample.vector();
  const std::size_t k = tail_count(v.size(), p);
  const auto tail_end = v.begin() + static_cast<std::ptrdiff_t>(k);
  std::partial_sort(v.begin(), tail_end, v.end(), std::greater<>());
  // summing the sorted tail keeps the result independent of input order
  return std::accumulate(v.begin(), tail_end, 0.0) / static_cast<double>(k);
}

double aes(const EmpiricalSample& sample, const AdjustmentGrid& grid) {
  if (grid.size() == 0) throw DomainError("AES needs a nonempty adjustment grid");
  const std::vector<double> sorted = sample.sorted_descending();
  const std::size_t n = sorted.size();
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const std::size_t k = tail_count(n, grid.levels()[j]);
    const double es = std::accumulate(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), 0.0) /
                      static_cast<double>(k);
    best = std::max(best, es - grid.penalties()[j]);
  }
  return best;
}

double distortion_rho(const EmpiricalSample& sample, const DistortionFunction& phi) {
  const std::vector<double> sorted = sample.sorted_descending();
  const double n = static_cast<double>(sorted.size());
  double total = 0.0;
  double prev = phi(0.0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cur = (i + 1 == sorted.size()) ? phi(1.0) : phi(static_cast<double>(i + 1) / n);
    const double weight = cur - prev;
    if (weight != 0.0) total += sorted[i] * weight;
    prev = cur;
  }
  return total;
}

double expected_loss(const EmpiricalSample& sample, const LossFunction& ell) {
  double total = 0.0;
  for (double x : sample.values()) total += ell(x);
  return total / static_cast<double>(sample.size());
}

double certainty_equivalent(const EmpiricalSample& sample, const LossFunction& ell) {
  if (!ell.strictly_increasing)
    throw DomainError("certainty equivalent needs a strictly increasing loss ('" + ell.name + "')");
  if (sample.size() == 1) return sample[0];
  const double target = expected_loss(sample, ell);
  BisectionOptions opts;
  const auto r = generalized_inverse(ell.eval, target, sample.min() - 1.0, sample.max() + 1.0, opts);
  return r.root;
}

double shortfall_rho(const EmpiricalSample& sample, const LossFunction& ell) {
  if (!ell.strictly_increasing || !ell.convex)
    throw DomainError("shortfall risk needs a strictly increasing convex loss ('" + ell.name + "')");
  if (sample.size() == 1) return sample[0];
  const LossFunction loss = ell.normalized_copy();
  const auto xs = sample.values();
  auto g = [&](double m) {
    double s = 0.0;
    for (double x : xs) s += loss(x - m);
    return s;
  };
  BisectionOptions opts;
  opts.residual_tolerance = static_cast<double>(xs.size()) * 1e-10;
  return bisect_decreasing(g, sample.min() - 1.0, sample.max() + 1.0, opts).root;
}

double oce(const EmpiricalSample& sample, const LossFunction& ell) {
  if (!ell.convex) throw DomainError("OCE needs a convex loss ('" + ell.name + "')");
  const auto xs = sample.values();
  const double n = static_cast<double>(xs.size());
  auto f = [&](double m) {
    double s = 0.0;
    for (double x : xs) s += ell(x - m);
    return m + s / n;
  };
  return ternary_minimize(f, sample.min() - 1.0, sample.max() + 1.0).value;
}

double mmd_rho(const EmpiricalSample& sample, const DeviationWeight& g, const DistortionFunction& phi) {
  if (!phi.concave)
    throw DomainError("mean-deviation measure needs a concave distortion ('" + phi.name + "')");
  const double mean = sample.mean();
  double deviation = distortion_rho(sample, phi) - mean;
  const double scale = 1.0 + std::max(std::abs(sample.min()), std::abs(sample.max()));
  if (deviation < -1e-12 * scale)
    throw DomainError("negative deviation " + std::to_string(deviation) + " for distortion '" + phi.name +
                      "' (not concave?)");
  deviation = std::max(deviation, 0.0);
  return g(deviation) + mean;
}

}  // namespace submod
