#pragma once

#include <cstddef>

#include "submod/functions.hpp"
#include "submod/sample.hpp"

namespace submod {

/// Number of tail atoms used at confidence p: k = ⌈n(1−p)⌉, clamped to [1, n].
///
/// A relative slack of 1e−9 absorbs the rounding in 1−p so that n(1−p)
/// values that are integers in exact arithmetic are not bumped up by one.
std::size_t tail_count(std::size_t n, double p);

/// Historical VaR: the k-th largest loss, k = tail_count(n, p). p in (0,1).
double var_historical(const EmpiricalSample& sample, double p);

/// Historical ES: mean of the k largest losses. p in [0,1); p = 0 gives the mean.
double es_historical(const EmpiricalSample& sample, double p);

/// Adjusted ES on a finite level grid: max over levels of ES_level − penalty.
double aes(const EmpiricalSample& sample, const AdjustmentGrid& grid);

/// Exact Choquet integral of the empirical law with respect to φ∘P:
/// Σᵢ L₍ᵢ₎·[φ(i/n) − φ((i−1)/n)] over descending order statistics.
double distortion_rho(const EmpiricalSample& sample, const DistortionFunction& phi);

/// E[ℓ(X)] = (1/n)Σℓ(xᵢ).
double expected_loss(const EmpiricalSample& sample, const LossFunction& ell);

/// ℓ⁻¹(E[ℓ(X)]) with the generalized inverse found by monotone bisection.
/// Requires ℓ strictly increasing.
double certainty_equivalent(const EmpiricalSample& sample, const LossFunction& ell);

/// Shortfall risk: the unique m with Σℓ(xₖ − m) = ℓ(0).
/// Requires ℓ strictly increasing and convex; ℓ is normalized internally.
double shortfall_rho(const EmpiricalSample& sample, const LossFunction& ell);

/// Optimized certainty equivalent inf_m {m + E[ℓ(X − m)]}. Requires ℓ convex.
double oce(const EmpiricalSample& sample, const LossFunction& ell);

/// Monotone mean-deviation measure g(ρ_φ(X) − E[X]) + E[X]. Requires φ concave.
double mmd_rho(const EmpiricalSample& sample, const DeviationWeight& g, const DistortionFunction& phi);

}  // namespace submod
