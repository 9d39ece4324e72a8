#pragma once

#include <span>
#include <vector>

#include "submod/rolling.hpp"

namespace submod {

struct CorrelationResult {
  double pearson = 0.0;
  double spearman = 0.0;
  double dcor = 0.0;
  std::size_t n = 0;
  /// One input was constant: pearson and spearman are reported as 0, and dcor
  /// too when its distance variance vanishes.
  bool degenerate = false;
};

/// Ranks starting at 1 with ties given their average rank.
std::vector<double> average_ranks(std::span<const double> v);

double pearson(std::span<const double> a, std::span<const double> b);
double spearman(std::span<const double> a, std::span<const double> b);
/// Exact double-centred distance correlation, O(n²) time and memory.
double distance_correlation(std::span<const double> a, std::span<const double> b);

/// All three statistics on two equal-length vectors (n ≥ 3).
CorrelationResult correlations(std::span<const double> a, std::span<const double> b);
/// Aligns on common dates first. Throws DomainError with fewer than 3.
CorrelationResult correlations(const DatedSeries& a, const DatedSeries& b);

}  // namespace submod
