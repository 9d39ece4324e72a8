#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace submod {

/// Losses on a space of n equally weighted atoms (positive = loss).
///
/// Every law-invariant functional in this library sees an EmpiricalSample as
/// the uniform distribution on its entries. Construction rejects empty input
/// and non-finite entries.
class EmpiricalSample {
 public:
  explicit EmpiricalSample(std::vector<double> losses);
  EmpiricalSample(std::initializer_list<double> losses);

  std::size_t size() const noexcept { return losses_.size(); }
  double operator[](std::size_t i) const { return losses_[i]; }
  std::span<const double> values() const noexcept { return losses_; }
  const std::vector<double>& vector() const noexcept { return losses_; }

  double min() const;
  double max() const;
  double mean() const;

  /// Copy of the losses sorted from largest to smallest.
  std::vector<double> sorted_descending() const;

  /// Entrywise x + c.
  EmpiricalSample shifted(double c) const;
  /// Entrywise lambda * x.
  EmpiricalSample scaled(double lambda) const;

  friend bool operator==(const EmpiricalSample&, const EmpiricalSample&) = default;

 private:
  std::vector<double> losses_;
};

/// Pointwise (x ∧ y, x ∨ y). Throws DimensionError on length mismatch.
std::pair<EmpiricalSample, EmpiricalSample> pointwise_meet_join(const EmpiricalSample& x,
                                                                const EmpiricalSample& y);

/// Pointwise x + y. Throws DimensionError on length mismatch.
EmpiricalSample pointwise_sum(const EmpiricalSample& x, const EmpiricalSample& y);

}  // namespace submod
