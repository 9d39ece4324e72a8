#include "submod/pipeline.hpp"

#include <cmath>

#include "submod/errors.hpp"

namespace submod {

DatedSeries realized_volatility(const LossPanel& losses, std::size_t window) {
  if (window < 2) throw DomainError("window must be at least 2");
  DatedSeries out;
  out.label = std::string(kStressLabel);
  if (losses.rows() < window) {
    out.warning = "insufficient history for " + out.label;
    return out;
  }
  const double n = static_cast<double>(window);
  for (std::size_t r = window - 1; r < losses.rows(); ++r) {
    double total = 0.0;
    for (std::size_t j = 0; j < losses.cols(); ++j) {
      double mean = 0.0;
      for (std::size_t k = r + 1 - window; k <= r; ++k) mean += losses.at(k, j);
      mean /= n;
      double ss = 0.0;
      for (std::size_t k = r + 1 - window; k <= r; ++k) ss += (losses.at(k, j) - mean) * (losses.at(k, j) - mean);
      total += std::sqrt(ss / (n - 1.0));
    }
    out.dates.push_back(losses.dates[r]);
    out.values.push_back(total / static_cast<double>(losses.cols()));
  }
  return out;
}

namespace {

const DailyViolationSeries* find_series(const std::vector<DailyViolationSeries>& all, std::string_view label) {
  for (const auto& s : all)
    if (s.measure == label) return &s;
  return nullptr;
}

}  // namespace

PipelineResult run_pipeline(const PricePanel& prices, const PipelineConfig& config, std::string source) {
  PipelineResult out;
  out.config = config;
  out.source = std::move(source);
  out.price_dates = prices.n_dates();
  out.duplicate_rows = prices.duplicate_rows;
  if (prices.duplicate_rows > 0)
    out.warnings.push_back(std::to_string(prices.duplicate_rows) + " duplicate (date, ticker) rows; last value kept");

  const RollingConfig rolling = config.rolling();
  const LossPanel losses = build_loss_panel(prices, config.tickers);
  out.tickers = losses.tickers;
  out.loss_dates = losses.rows();
  if (losses.rows() < config.window)
    out.warnings.push_back("only " + std::to_string(losses.rows()) + " loss dates for window " +
                           std::to_string(config.window) + "; no tests run");

  out.records = pairwise_day_tests(losses, rolling);
  for (const std::string& label : measure_labels(out.records))
    out.series.push_back(daily_violation_rate(out.records, label));
  out.stress = realized_volatility(losses, config.window);
  if (!out.stress.warning.empty()) out.warnings.push_back(out.stress.warning);

  const auto add = [&](const DatedSeries& a, const DatedSeries& b) {
    try {
      out.correlations.push_back({a.label, b.label, correlations(a, b)});
    } catch (const DomainError& e) {
      out.warnings.push_back("correlation " + a.label + " vs " + b.label + " skipped: " + e.what());
    }
  };
  for (const RiskMeasureSpec& spec : rolling.measures) {
    if (!spec.is_var()) continue;
    const auto* submod = find_series(out.series, spec.label);
    const auto* subadd = find_series(out.series, std::string(kSubadditivityPrefix) + spec.label);
    if (!submod || !subadd) continue;
    add(out.stress, submod->as_series());
    add(out.stress, subadd->as_series());
    add(submod->as_series(), subadd->as_series());
  }
  return out;
}

}  // namespace submod
