#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "submod/functions.hpp"
#include "submod/sample.hpp"

namespace submod {

/// Arrow–Pratt curvature of a loss on a finite grid.
///
/// R = ℓ″/ℓ′, L = min R over the grid, h = ℓ′·(R − 2L). The grid holds every
/// multiple of `step` inside [lo, hi] plus both endpoints, so x = 0 is on it
/// whenever lo ≤ 0 ≤ hi.
struct CurvatureProfile {
  std::vector<double> grid;
  std::vector<double> ell_values;  // normalized ℓ(x) − ℓ(0)
  std::vector<double> S_values;    // ℓ′
  std::vector<double> R_values;
  std::vector<double> h_values;
  double L = 0.0;
  double lo = 0.0, hi = 0.0, step = 0.0;
  bool analytic_first = false;   // false: central differences were used for ℓ′
  bool analytic_second = false;  // false: central differences were used for ℓ″
  std::size_t clamped_second = 0;        // negative finite-difference ℓ″ set to 0 for a convex ℓ
  std::size_t effectively_infinite = 0;  // grid points with |R| > 1e6
};

inline constexpr double kFiniteDifferenceStep = 1e-5;
inline constexpr double kInfiniteCurvature = 1e6;

/// Throws DomainError when lo >= hi, step <= 0, or ℓ′ <= 0 somewhere on the grid.
CurvatureProfile curvature_profile(const LossFunction& ell, double lo = -20.0, double hi = 20.0,
                                   double step = 1e-3);

/// Grid-relative verdict on h(x) ≤ λℓ(x) for all x.
struct DominanceVerdict {
  bool feasible = false;
  /// [α⁺, α⁻] of admissible λ when feasible; either end may be infinite when
  /// the grid has no point with ℓ > 0 (α⁺ = −∞) or ℓ < 0 (α⁻ = +∞).
  std::optional<std::pair<double, double>> lambda_interval;
  bool sufficient_condition_holds = false;  // max R ≤ 2·min R on the grid
  std::vector<double> witnesses;            // up to 3 grid points breaking every λ
  double alpha_plus = 0.0;
  double alpha_minus = 0.0;
  bool one_sided = false;
  double h_at_zero = 0.0;
  double R_min = 0.0, R_max = 0.0;
  double grid_lo = 0.0, grid_hi = 0.0;
};

DominanceVerdict linear_dominance_check(const CurvatureProfile& profile, const LossFunction& ell);

/// Discretized pair X = 2aU + b − a, Y = 2aV + b − a with V the reflection of
/// U below q, on atoms uᵢ = (i − ½)/n.
struct AesCounterexample {
  EmpiricalSample x;
  EmpiricalSample y;
  double predicted_gap = 0.0;  // a(q − p1)² / (2(1 − p1))
  double measured_gap = 0.0;   // ES_{p1}(x∨y) − ES_{p1}(x)
  AdjustmentGrid grid;         // penalties tracking p ↦ ES_p(x) at (p1, q)
};

AesCounterexample aes_counterexample(double a, double b, double q, double p1, std::size_t n_atoms);

/// X = m(𝟙_A + 𝟙_C)/2 and Y = m𝟙_B with nested A ⊆ B ⊆ C of mass p < q < r.
struct MmdCounterexample {
  EmpiricalSample x;
  EmpiricalSample y;
  double p = 0.0, q = 0.0, r = 0.0;
  double deviation_point = 0.0;  // the x > 0 at which g is nonlinear
  double scale = 0.0;            // m = deviation_point / ψ(q)
};

/// Searches the atom grid for the (p, q, r) triple and builds the pair.
MmdCounterexample mmd_counterexample(const DistortionFunction& phi, const DeviationWeight& g,
                                     std::size_t n_atoms);

/// Same construction at a caller-chosen triple (validated).
MmdCounterexample mmd_counterexample_at(const DistortionFunction& phi, const DeviationWeight& g,
                                        std::size_t n_atoms, double p, double q, double r);

/// Three-atom jump construction for ℓ(x) = s₋x (x ≤ 0), s₊x (x > 0).
struct JumpDeficit {
  double measured_ratio = 0.0;  // Δ_h / h from four shortfall evaluations
  double limit_ratio = 0.0;     // s₋(s₋ − s₊) / ((s₋ + 2s₊)(2s₋ + s₊))
  double alpha_h = 0.0, beta_h = 0.0, gamma_h = 0.0;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
};

JumpDeficit shortfall_jump_deficit(double s_minus, double s_plus, double h);

/// Two-point pair X = a𝟙_A + b𝟙_Aᶜ, Y = b𝟙_A + a𝟙_Aᶜ with P(A) = ½.
struct CeCounterexample {
  EmpiricalSample x;
  EmpiricalSample y;
  double gap = 0.0;
};

/// Scans a > b on an even grid of [lo, hi] and returns the most negative CE
/// submodularity gap when it is below −epsilon.
std::optional<CeCounterexample> ce_two_point_counterexample(const LossFunction& ell, double lo = -5.0,
                                                            double hi = 5.0, std::size_t steps = 40,
                                                            std::size_t n_atoms = 4,
                                                            double epsilon = 1e-8);

}  // namespace submod
