#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace submod {

using RealFn = std::function<double(double)>;

/// Shortest round-trip text form of a double; used in labels and reports.
std::string format_number(double v);

/// A loss function ℓ with optional analytic derivatives and declared shape.
///
/// The shape flags are promises made by whoever built the function; the
/// measures that depend on them (CE, shortfall, OCE) check the flags and
/// `validate()` spot-checks them on a grid.
struct LossFunction {
  std::string name;
  RealFn eval;
  std::optional<RealFn> deriv1;  // S = ℓ′
  std::optional<RealFn> deriv2;  // ℓ″
  bool strictly_increasing = false;
  bool convex = false;
  bool normalized = false;  // ℓ(0) = 0

  double operator()(double x) const { return eval(x); }

  /// Grid spot check of the declared flags on [lo, hi]. Throws DomainError.
  void validate(double lo = -10.0, double hi = 10.0, int points = 401) const;

  /// ℓ(x) − ℓ(0); a no-op copy when already normalized.
  LossFunction normalized_copy() const;

  // Named losses. Every ℓ the characterization examples mention is here.
  static LossFunction exponential(double gamma);      // e^{γx} − 1
  static LossFunction exponential_raw(double gamma);  // e^{γx}
  static LossFunction poly2exp();                     // e^{2x} + e^x − 2
  static LossFunction linear();                       // x
  static LossFunction expectile(double a);            // x + a·max{x,0}
  static LossFunction piecewise(double s_minus, double s_plus);  // s₋x (x≤0), s₊x (x>0)
  static LossFunction quadratic_linear();             // x + x²/4 for x ≥ −2, −1 below
  static LossFunction square();                       // x² (not monotone; expected-loss use only)
  static LossFunction arctan_mixed();                 // x + arctan(x), increasing, not convex
};

/// Parses `exp:γ`, `expraw:γ`, `poly2exp`, `linear`, `expectile:a`,
/// `piecewise:s−,s+`, `quadlin`, `square`, `arctan`.
LossFunction parse_loss(std::string_view text);

/// A distortion function φ: [0,1] → [0,1] with φ(0)=0, φ(1)=1.
struct DistortionFunction {
  std::string name;
  RealFn eval;
  bool concave = false;

  double operator()(double t) const { return eval(t); }
  void validate(int points = 1001) const;

  static DistortionFunction identity();
  static DistortionFunction expected_shortfall(double p);  // min{t/(1−p), 1}
  static DistortionFunction value_at_risk(double p);       // 𝟙{t ≥ 1−p}
  static DistortionFunction power(double r);               // t^r, concave for r ≤ 1
};

/// Parses `identity`, `es:p`, `var:p`, `power:r`.
DistortionFunction parse_distortion(std::string_view text);

/// The increasing convex weight g: [0,∞) → [0,∞), g(0)=0, of a mean-deviation measure.
struct DeviationWeight {
  std::string name;
  RealFn eval;
  bool convex = true;
  bool linear = false;

  double operator()(double t) const { return eval(t); }
  void validate(double hi = 10.0, int points = 401) const;

  static DeviationWeight linear_weight(double slope);  // c·t
  static DeviationWeight square();                      // t²
  static DeviationWeight power(double r);               // t^r, r ≥ 1
};

/// Parses `linear:c`, `square`, `power:r`.
DeviationWeight parse_deviation_weight(std::string_view text);

/// Penalty g of an adjusted ES restricted to a finite level grid.
class AdjustmentGrid {
 public:
  AdjustmentGrid(std::vector<double> levels, std::vector<double> penalties);

  /// max{ES_q, ES_p − c}: levels (q, p), penalties (0, c). Requires q < p.
  static AdjustmentGrid two_level(double q, double p, double c);

  const std::vector<double>& levels() const noexcept { return levels_; }
  const std::vector<double>& penalties() const noexcept { return penalties_; }
  std::size_t size() const noexcept { return levels_.size(); }

 private:
  std::vector<double> levels_;
  std::vector<double> penalties_;
};

}  // namespace submod
