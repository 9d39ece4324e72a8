#pragma once

#include <functional>

namespace submod {

struct BisectionOptions {
  double x_tolerance = 1e-12;
  double residual_tolerance = 1e-10;
  int max_iterations = 200;
  int max_expansions = 60;
};

struct RootResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
  int expansions = 0;
};

/// Root of a monotonically decreasing f starting from the bracket [lo, hi].
///
/// The bracket is widened by doubling its half-width until f(lo) >= 0 >= f(hi),
/// at most `max_expansions` times, then bisected until the width is below
/// x_tolerance and |f| <= residual_tolerance, or the interval can no longer be
/// split in double precision. Throws NumericError if no bracket is found or f
/// is not finite at a probe.
RootResult bisect_decreasing(const std::function<double(double)>& f, double lo, double hi,
                             const BisectionOptions& options = {});

/// Smallest x with f(x) >= target for an increasing f (generalized inverse).
RootResult generalized_inverse(const std::function<double(double)>& f, double target, double lo,
                               double hi, const BisectionOptions& options = {});

struct MinimizeOptions {
  double width = 1e-12;
  int max_iterations = 400;
  int max_expansions = 60;
};

struct MinimumResult {
  double argmin = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Minimum of a convex f by ternary section after bracket expansion.
///
/// The bracket grows in whichever direction f still decreases. Throws
/// DomainError when f keeps decreasing after `max_expansions` doublings or
/// returns a non-finite value (objective unbounded below).
MinimumResult ternary_minimize(const std::function<double(double)>& f, double lo, double hi,
                               const MinimizeOptions& options = {});

}  // namespace submod
