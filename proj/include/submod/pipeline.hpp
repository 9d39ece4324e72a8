#pragma once

#include <string>
#include <vector>

#include "submod/config.hpp"
#include "submod/correlation.hpp"
#include "submod/losses.hpp"
#include "submod/prices.hpp"
#include "submod/rolling.hpp"

namespace submod {

struct CorrelationRow {
  std::string series_a;
  std::string series_b;
  CorrelationResult result;
};

struct PipelineResult {
  PipelineConfig config;
  std::string source;  // free text echoed into the summary
  std::vector<std::string> tickers;
  std::size_t price_dates = 0;
  std::size_t loss_dates = 0;
  std::size_t duplicate_rows = 0;
  std::vector<ViolationRecord> records;
  std::vector<DailyViolationSeries> series;  // one per measure label, label order
  DatedSeries stress;                        // cross-sectional mean rolling volatility
  std::vector<CorrelationRow> correlations;
  std::vector<std::string> warnings;
};

inline constexpr std::string_view kStressLabel = "realized_vol";

/// Mean over tickers of the sample standard deviation of each trailing window.
/// Stands in for an external stress index such as an implied-volatility index.
DatedSeries realized_volatility(const LossPanel& losses, std::size_t window);

/// Loss panel, pairwise day tests, daily violation rates, and for each VaR
/// level the correlations between submodularity rates, subadditivity rates
/// and the stress series.
PipelineResult run_pipeline(const PricePanel& prices, const PipelineConfig& config, std::string source = {});

}  // namespace submod
