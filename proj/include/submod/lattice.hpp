#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "submod/risk_spec.hpp"
#include "submod/sample.hpp"

namespace submod {

inline constexpr double kDefaultEpsilon = 1e-8;

/// Outcome of one lattice or additivity test. violated ⇔ gap < −epsilon.
struct GapResult {
  double gap = 0.0;
  bool violated = false;
  double epsilon = kDefaultEpsilon;
};

/// ρ(x) + ρ(y) − ρ(x∧y) − ρ(x∨y). Negative beyond ε is a submodularity violation.
GapResult submodularity_gap(const RiskMeasureSpec& spec, const EmpiricalSample& x, const EmpiricalSample& y,
                            double epsilon = kDefaultEpsilon);

/// ρ(x) + ρ(y) − ρ(x+y). Negative beyond ε is a subadditivity violation.
GapResult subadditivity_gap(const RiskMeasureSpec& spec, const EmpiricalSample& x, const EmpiricalSample& y,
                            double epsilon = kDefaultEpsilon);

/// Fraction of results flagged as violations. Throws DomainError when empty.
double violation_rate(std::span<const GapResult> results);

enum class PairGenerator {
  gaussian,    // i.i.d. standard normal entries
  heavy_tail,  // normal / sqrt(uniform)
  two_point,   // sum of two random indicators, values in {0, 1, 2}
  binary,      // single random indicator, values in {0, 1}
};

PairGenerator parse_generator(std::string_view name);
std::string to_string(PairGenerator g);

struct SweepOptions {
  std::size_t n_atoms = 10;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  PairGenerator generator = PairGenerator::gaussian;
  double epsilon = kDefaultEpsilon;
  /// Probability that y is partially re-sorted into x's order before testing.
  double comonotone_probability = 0.25;
  unsigned threads = 1;
};

struct SweepReport {
  std::string label;
  PairGenerator generator = PairGenerator::gaussian;
  std::size_t n_atoms = 0;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_gap = 0.0;
  std::size_t worst_trial = 0;
  std::optional<std::pair<EmpiricalSample, EmpiricalSample>> worst_pair;
  std::uint64_t seed = 0;
  double epsilon = kDefaultEpsilon;
};

/// The pair tested at `trial` of a sweep; a pure function of (options, trial).
std::pair<EmpiricalSample, EmpiricalSample> sweep_pair(const SweepOptions& options, std::size_t trial);

/// Tests submodularity on `trials` random pairs. Deterministic given the
/// options; the thread count does not change the report.
SweepReport random_pair_sweep(const RiskMeasureSpec& spec, const SweepOptions& options);

}  // namespace submod
