#include "submod/root_finding.hpp"

#include <cmath>
#include <string>

#include "submod/errors.hpp"

namespace submod {

namespace {

double probe(const std::function<double(double)>& f, double x, const char* who) {
  const double v = f(x);
  if (!std::isfinite(v))
    throw NumericError(std::string(who) + ": objective is not finite at x = " + std::to_string(x));
  return v;
}

}  // namespace

RootResult bisect_decreasing(const std::function<double(double)>& f, double lo, double hi,
                             const BisectionOptions& options) {
  if (!(lo < hi)) throw NumericError("bisection: empty initial bracket");
  double flo = probe(f, lo, "bisection");
  double fhi = probe(f, hi, "bisection");
  RootResult result;
  while (!(flo >= 0.0 && fhi <= 0.0)) {
    if (result.expansions == options.max_expansions)
      throw NumericError("bisection: no sign change after " + std::to_string(options.max_expansions) +
                         " bracket expansions (function not decreasing through zero?)");
    const double width = hi - lo;
    if (flo < 0.0) {
      lo -= width;
      flo = probe(f, lo, "bisection");
    }
    if (fhi > 0.0) {
      hi += width;
      fhi = probe(f, hi, "bisection");
    }
    ++result.expansions;
  }
  if (flo == 0.0) return {lo, 0.0, 0, result.expansions};
  if (fhi == 0.0) return {hi, 0.0, 0, result.expansions};

  while (result.iterations < options.max_iterations) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // interval exhausted in double precision
    const double fm = probe(f, mid, "bisection");
    ++result.iterations;
    if (fm > 0.0) {
      lo = mid;
      flo = fm;
    } else if (fm < 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      result.root = mid;
      result.residual = 0.0;
      return result;
    }
    if (hi - lo <= options.x_tolerance &&
        std::min(std::abs(flo), std::abs(fhi)) <= options.residual_tolerance)
      break;
  }
  if (std::abs(flo) <= std::abs(fhi)) {
    result.root = lo;
    result.residual = flo;
  } else {
    result.root = hi;
    result.residual = fhi;
  }
  return result;
}

RootResult generalized_inverse(const std::function<double(double)>& f, double target, double lo,
                               double hi, const BisectionOptions& options) {
  if (!(lo < hi)) throw NumericError("inverse: empty initial bracket");
  double flo = probe(f, lo, "inverse");
  double fhi = probe(f, hi, "inverse");
  RootResult result;
  while (!(flo < target && fhi >= target)) {
    if (result.expansions == options.max_expansions)
      throw NumericError("inverse: value " + std::to_string(target) +
                         " is outside the range of the function on the expanded bracket");
    const double width = hi - lo;
    if (flo >= target) {
      lo -= width;
      flo = probe(f, lo, "inverse");
    }
    if (fhi < target) {
      hi += width;
      fhi = probe(f, hi, "inverse");
    }
    ++result.expansions;
  }
  while (result.iterations < options.max_iterations && hi - lo > options.x_tolerance) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double fm = probe(f, mid, "inverse");
    ++result.iterations;
    if (fm >= target) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
    }
  }
  result.root = hi;
  result.residual = fhi - target;
  return result;
}

MinimumResult ternary_minimize(const std::function<double(double)>& f, double lo, double hi,
                               const MinimizeOptions& options) {
  if (!(lo < hi)) throw DomainError("minimize: empty initial bracket");
  auto eval = [&](double x) {
    const double v = f(x);
    if (!std::isfinite(v))
      throw DomainError("minimize: objective is not finite at m = " + std::to_string(x) +
                        " (unbounded below?)");
    return v;
  };

  // Grow to the right while the objective still decreases there.
  double step = hi - lo;
  double f_hi = eval(hi);
  for (int k = 0;; ++k) {
    const double next = hi + step;
    const double f_next = eval(next);
    if (!(f_next < f_hi)) break;
    if (k == options.max_expansions)
      throw DomainError("minimize: objective keeps decreasing as m -> +inf (unbounded below)");
    lo = hi;
    hi = next;
    f_hi = f_next;
    step *= 2.0;
  }
  step = hi - lo;
  double f_lo = eval(lo);
  for (int k = 0;; ++k) {
    const double next = lo - step;
    const double f_next = eval(next);
    if (!(f_next < f_lo)) break;
    if (k == options.max_expansions)
      throw DomainError("minimize: objective keeps decreasing as m -> -inf (unbounded below)");
    hi = lo;
    lo = next;
    f_lo = f_next;
    step *= 2.0;
  }

  MinimumResult result;
  while (hi - lo > options.width && result.iterations < options.max_iterations) {
    const double third = (hi - lo) / 3.0;
    const double m1 = lo + third, m2 = hi - third;
    if (!(m1 > lo && m2 < hi && m1 < m2)) break;
    const double f1 = eval(m1), f2 = eval(m2);
    ++result.iterations;
    if (f1 < f2) {
      hi = m2;
    } else if (f1 > f2) {
      lo = m1;
    } else {
      lo = m1;
      hi = m2;
    }
  }
  const double mid = lo + 0.5 * (hi - lo);
  result.argmin = mid;
  result.value = eval(mid);
  for (double x : {lo, hi}) {
    const double v = eval(x);
    if (v < result.value) {
      result.value = v;
      result.argmin = x;
    }
  }
  return result;
}

}  // namespace submod
