#include "submod/sample.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "submod/errors.hpp"

namespace submod {

EmpiricalSample::EmpiricalSample(std::vector<double> losses) : losses_(std::move(losses)) {
  if (losses_.empty()) throw DomainError("empirical sample must contain at least one atom");
  for (std::size_t i = 0; i < losses_.size(); ++i) {
    if (!std::isfinite(losses_[i]))
      throw DomainError("empirical sample entry " + std::to_string(i) + " is not finite");
  }
}

EmpiricalSample::EmpiricalSample(std::initializer_list<double> losses)
    : EmpiricalSample(std::vector<double>(losses)) {}

double EmpiricalSample::min() const { return *std::ranges::min_element(losses_); }

double EmpiricalSample::max() const { return *std::ranges::max_element(losses_); }

double EmpiricalSample::mean() const {
  return std::accumulate(losses_.begin(), losses_.end(), 0.0) / static_cast<double>(losses_.size());
}

std::vector<double> EmpiricalSample::sorted_descending() const {
  std::vector<double> out = losses_;
  std::ranges::sort(out, std::greater<>());
  return out;
}

EmpiricalSample EmpiricalSample::shifted(double c) const {
  std::vector<double> out = losses_;
  for (double& v : out) v += c;
  return EmpiricalSample(std::move(out));
}

EmpiricalSample EmpiricalSample::scaled(double lambda) const {
  std::vector<double> out = losses_;
  for (double& v : out) v *= lambda;
  return EmpiricalSample(std::move(out));
}

namespace {
void require_same_space(const EmpiricalSample& x, const EmpiricalSample& y) {
  if (x.size() != y.size())
    throw DimensionError("samples live on different atom spaces (" + std::to_string(x.size()) +
                         " vs " + std::to_string(y.size()) + " atoms)");
}
}  // namespace

std::pair<EmpiricalSample, EmpiricalSample> pointwise_meet_join(const EmpiricalSample& x,
                                                                const EmpiricalSample& y) {
  require_same_space(x, y);
  std::vector<double> meet(x.size()), join(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    meet[i] = std::min(x[i], y[i]);
    join[i] = std::max(x[i], y[i]);
  }
  return {EmpiricalSample(std::move(meet)), EmpiricalSample(std::move(join))};
}

EmpiricalSample pointwise_sum(const EmpiricalSample& x, const EmpiricalSample& y) {
  require_same_space(x, y);
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return EmpiricalSample(std::move(out));
}

}  // namespace submod
