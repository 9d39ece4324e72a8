#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "submod/lattice.hpp"
#include "submod/losses.hpp"
#include "submod/risk_spec.hpp"

namespace submod {

struct RollingConfig {
  std::size_t window = 250;
  std::vector<RiskMeasureSpec> measures;
  double epsilon = kDefaultEpsilon;
  /// Also test ρ(x) + ρ(y) ≥ ρ(x + y) for VaR measures.
  bool var_subadditivity = true;
  /// Assert meet + join == x + y entrywise on every tested window pair.
#ifdef NDEBUG
  bool verify_lattice_identity = false;
#else
  bool verify_lattice_identity = true;
#endif
  unsigned threads = 1;

  void validate() const;
};

/// A labelled real series indexed by date.
struct DatedSeries {
  std::string label;
  std::vector<Date> dates;
  std::vector<double> values;
  std::string warning;  // set instead of throwing when history is too short
};

/// ρ over the trailing window ending at (and including) each date. The first
/// window − 1 dates have no value.
DatedSeries rolling_eval(const LossPanel& losses, std::string_view ticker, const RollingConfig& config,
                         const RiskMeasureSpec& spec);

enum class TestKind { submodularity, subadditivity };

struct ViolationRecord {
  Date date;
  std::string ticker_a;  // ticker_a < ticker_b
  std::string ticker_b;
  std::string measure;   // spec label; subadditivity tests carry a "subadd:" prefix
  std::string params;
  TestKind test = TestKind::submodularity;
  double gap = 0.0;
  bool violated = false;

  std::string pair() const { return ticker_a + "/" + ticker_b; }
};

inline constexpr std::string_view kSubadditivityPrefix = "subadd:";

/// Every (date with a full window) × (unordered ticker pair) × (measure) test,
/// sorted by date, pair, then measure label. Independent of config.threads.
std::vector<ViolationRecord> pairwise_day_tests(const LossPanel& losses, const RollingConfig& config);

struct DailyViolationSeries {
  std::string measure;
  std::vector<Date> dates;
  std::vector<double> rate;
  std::vector<std::size_t> violations;
  std::vector<std::size_t> tests;

  DatedSeries as_series() const { return {measure, dates, rate, {}}; }
};

/// Per-date violation fraction for one measure label. Records must be sorted
/// by date (as pairwise_day_tests returns them). Throws DomainError when the
/// label has no records.
DailyViolationSeries daily_violation_rate(std::span<const ViolationRecord> records, std::string_view measure);

/// Distinct measure labels in the records, sorted.
std::vector<std::string> measure_labels(std::span<const ViolationRecord> records);

}  // namespace submod
