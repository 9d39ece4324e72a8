#include "submod/functions.hpp"

#include <algorithm>
#include <cmath>

#include "submod/errors.hpp"
#include "text.hpp"

namespace submod {

namespace {

std::string num(double v) { return format_number(v); }

std::vector<double> grid(double lo, double hi, int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (points - 1);
  return g;
}

}  // namespace

void LossFunction::validate(double lo, double hi, int points) const {
  if (!eval) throw DomainError("loss function '" + name + "' has no evaluator");
  const auto xs = grid(lo, hi, points);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = xs[i], b = xs[i + 1];
    const double fa = eval(a), fb = eval(b);
    if (strictly_increasing && !(fa < fb))
      throw DomainError("loss '" + name + "' declared strictly increasing but ℓ(" + num(a) +
                        ") >= ℓ(" + num(b) + ")");
    if (convex) {
      const double mid = eval(0.5 * (a + b));
      const double tol = 1e-12 * (1.0 + std::abs(fa) + std::abs(fb));
      if (mid > 0.5 * (fa + fb) + tol)
        throw DomainError("loss '" + name + "' declared convex but fails midpoint test at " + num(a));
    }
  }
  if (convex) {
    // wider chords catch concavity that adjacent points can hide
    for (std::size_t i = 0; i + 2 * 20 < xs.size(); i += 20) {
      const double a = xs[i], b = xs[i + 40];
      const double fa = eval(a), fb = eval(b);
      const double tol = 1e-12 * (1.0 + std::abs(fa) + std::abs(fb));
      if (eval(0.5 * (a + b)) > 0.5 * (fa + fb) + tol)
        throw DomainError("loss '" + name + "' declared convex but fails midpoint test on [" +
                          num(a) + ", " + num(b) + "]");
    }
  }
  if (normalized && std::abs(eval(0.0)) > 1e-12)
    throw DomainError("loss '" + name + "' declared normalized but ℓ(0) = " + num(eval(0.0)));
}

LossFunction LossFunction::normalized_copy() const {
  if (normalized) return *this;
  LossFunction out = *this;
  const double offset = eval(0.0);
  out.eval = [f = eval, offset](double x) { return f(x) - offset; };
  out.normalized = true;
  return out;
}

LossFunction LossFunction::exponential(double gamma) {
  if (!(gamma > 0.0)) throw DomainError("exponential loss needs gamma > 0");
  return {"exp:" + num(gamma),
          [gamma](double x) { return std::expm1(gamma * x); },
          [gamma](double x) { return gamma * std::exp(gamma * x); },
          [gamma](double x) { return gamma * gamma * std::exp(gamma * x); },
          true, true, true};
}

LossFunction LossFunction::exponential_raw(double gamma) {
  if (!(gamma > 0.0)) throw DomainError("exponential loss needs gamma > 0");
  return {"expraw:" + num(gamma),
          [gamma](double x) { return std::exp(gamma * x); },
          [gamma](double x) { return gamma * std::exp(gamma * x); },
          [gamma](double x) { return gamma * gamma * std::exp(gamma * x); },
          true, true, false};
}

LossFunction LossFunction::poly2exp() {
  return {"poly2exp",
          [](double x) { return std::exp(2.0 * x) + std::exp(x) - 2.0; },
          [](double x) { return 2.0 * std::exp(2.0 * x) + std::exp(x); },
          [](double x) { return 4.0 * std::exp(2.0 * x) + std::exp(x); },
          true, true, true};
}

LossFunction LossFunction::linear() {
  return {"linear", [](double x) { return x; }, [](double) { return 1.0; },
          [](double) { return 0.0; }, true, true, true};
}

LossFunction LossFunction::expectile(double a) {
  if (!(a >= 0.0)) throw DomainError("expectile loss needs a >= 0");
  // kink at 0: no analytic second derivative
  return {"expectile:" + num(a),
          [a](double x) { return x + a * std::max(x, 0.0); },
          std::nullopt,
          std::nullopt,
          true, true, true};
}

LossFunction LossFunction::piecewise(double s_minus, double s_plus) {
  if (!(s_minus >= 0.0) || !(s_plus >= s_minus) || !(s_plus > 0.0))
    throw DomainError("piecewise loss needs 0 <= s- <= s+ and s+ > 0");
  return {"piecewise:" + num(s_minus) + "," + num(s_plus),
          [s_minus, s_plus](double x) { return x <= 0.0 ? s_minus * x : s_plus * x; },
          std::nullopt,
          std::nullopt,
          s_minus > 0.0, true, true};
}

LossFunction LossFunction::quadratic_linear() {
  return {"quadlin",
          [](double x) { return x >= -2.0 ? x + 0.25 * x * x : -1.0; },
          [](double x) { return x >= -2.0 ? 1.0 + 0.5 * x : 0.0; },
          [](double x) { return x >= -2.0 ? 0.5 : 0.0; },
          false, true, true};
}

LossFunction LossFunction::square() {
  return {"square", [](double x) { return x * x; }, [](double x) { return 2.0 * x; },
          [](double) { return 2.0; }, false, true, true};
}

LossFunction LossFunction::arctan_mixed() {
  return {"arctan",
          [](double x) { return x + std::atan(x); },
          [](double x) { return 1.0 + 1.0 / (1.0 + x * x); },
          [](double x) { return -2.0 * x / ((1.0 + x * x) * (1.0 + x * x)); },
          true, false, true};
}

LossFunction parse_loss(std::string_view spec) {
  const auto [head, tail] = text::head_tail(text::trim(spec));
  if (head == "exp") return LossFunction::exponential(text::to_double(tail, "exp gamma"));
  if (head == "expraw") return LossFunction::exponential_raw(text::to_double(tail, "expraw gamma"));
  if (head == "poly2exp" && tail.empty()) return LossFunction::poly2exp();
  if (head == "linear" && tail.empty()) return LossFunction::linear();
  if (head == "expectile") return LossFunction::expectile(text::to_double(tail, "expectile a"));
  if (head == "piecewise") {
    const auto s = text::to_doubles(tail, ',', "piecewise slope");
    if (s.size() != 2) throw DomainError("piecewise loss needs two slopes: piecewise:s-,s+");
    return LossFunction::piecewise(s[0], s[1]);
  }
  if (head == "quadlin" && tail.empty()) return LossFunction::quadratic_linear();
  if (head == "square" && tail.empty()) return LossFunction::square();
  if (head == "arctan" && tail.empty()) return LossFunction::arctan_mixed();
  throw DomainError("unknown loss function '" + std::string(spec) + "'");
}

void DistortionFunction::validate(int points) const {
  if (!eval) throw DomainError("distortion '" + name + "' has no evaluator");
  if (eval(0.0) != 0.0 || eval(1.0) != 1.0)
    throw DomainError("distortion '" + name + "' must satisfy φ(0)=0 and φ(1)=1");
  const auto ts = grid(0.0, 1.0, points);
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double a = eval(ts[i]), b = eval(ts[i + 1]);
    if (b < a) throw DomainError("distortion '" + name + "' is not increasing near t=" + num(ts[i]));
    if (a < 0.0 || a > 1.0) throw DomainError("distortion '" + name + "' leaves [0,1]");
  }
  if (concave) {
    for (std::size_t i = 0; i + 2 < ts.size(); ++i) {
      const double mid = eval(ts[i + 1]);
      if (mid + 1e-12 < 0.5 * (eval(ts[i]) + eval(ts[i + 2])))
        throw DomainError("distortion '" + name + "' declared concave but fails midpoint test");
    }
  }
}

DistortionFunction DistortionFunction::identity() {
  return {"identity", [](double t) { return t; }, true};
}

DistortionFunction DistortionFunction::expected_shortfall(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("ES distortion needs p in [0,1)");
  return {"es:" + num(p), [p](double t) { return std::min(t / (1.0 - p), 1.0); }, true};
}

DistortionFunction DistortionFunction::value_at_risk(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("VaR distortion needs p in (0,1)");
  return {"var:" + num(p), [p](double t) { return t >= 1.0 - p - 1e-9 ? 1.0 : 0.0; }, false};
}

DistortionFunction DistortionFunction::power(double r) {
  if (!(r > 0.0)) throw DomainError("power distortion needs r > 0");
  return {"power:" + num(r), [r](double t) { return t <= 0.0 ? 0.0 : (t >= 1.0 ? 1.0 : std::pow(t, r)); },
          r <= 1.0};
}

DistortionFunction parse_distortion(std::string_view spec) {
  const auto [head, tail] = text::head_tail(text::trim(spec));
  if (head == "identity" && tail.empty()) return DistortionFunction::identity();
  if (head == "es") return DistortionFunction::expected_shortfall(text::to_double(tail, "ES level"));
  if (head == "var") return DistortionFunction::value_at_risk(text::to_double(tail, "VaR level"));
  if (head == "power") return DistortionFunction::power(text::to_double(tail, "power exponent"));
  throw DomainError("unknown distortion '" + std::string(spec) + "'");
}

void DeviationWeight::validate(double hi, int points) const {
  if (!eval) throw DomainError("deviation weight '" + name + "' has no evaluator");
  if (eval(0.0) != 0.0) throw DomainError("deviation weight '" + name + "' must satisfy g(0)=0");
  const auto ts = grid(0.0, hi, points);
  bool moved = false;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double a = eval(ts[i]), b = eval(ts[i + 1]);
    if (b < a) throw DomainError("deviation weight '" + name + "' is not increasing");
    if (b > a) moved = true;
    if (i + 2 < ts.size() && eval(ts[i + 1]) > 0.5 * (a + eval(ts[i + 2])) + 1e-12)
      throw DomainError("deviation weight '" + name + "' is not convex");
  }
  if (!moved) throw DomainError("deviation weight '" + name + "' is constant");
}

DeviationWeight DeviationWeight::linear_weight(double slope) {
  if (!(slope > 0.0)) throw DomainError("linear deviation weight needs a positive slope");
  return {"linear:" + num(slope), [slope](double t) { return slope * t; }, true, true};
}

DeviationWeight DeviationWeight::square() {
  return {"square", [](double t) { return t * t; }, true, false};
}

DeviationWeight DeviationWeight::power(double r) {
  if (!(r >= 1.0)) throw DomainError("power deviation weight needs r >= 1");
  return {"power:" + num(r), [r](double t) { return t <= 0.0 ? 0.0 : std::pow(t, r); }, true, r == 1.0};
}

DeviationWeight parse_deviation_weight(std::string_view spec) {
  const auto [head, tail] = text::head_tail(text::trim(spec));
  if (head == "linear") return DeviationWeight::linear_weight(tail.empty() ? 1.0 : text::to_double(tail, "slope"));
  if (head == "square" && tail.empty()) return DeviationWeight::square();
  if (head == "power") return DeviationWeight::power(text::to_double(tail, "power exponent"));
  throw DomainError("unknown deviation weight '" + std::string(spec) + "'");
}

AdjustmentGrid::AdjustmentGrid(std::vector<double> levels, std::vector<double> penalties)
    : levels_(std::move(levels)), penalties_(std::move(penalties)) {
  if (levels_.empty()) throw DomainError("adjustment grid is empty");
  if (levels_.size() != penalties_.size())
    throw DomainError("adjustment grid needs one penalty per level");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (!(levels_[i] >= 0.0 && levels_[i] < 1.0)) throw DomainError("adjustment level outside [0,1)");
    if (!(penalties_[i] >= 0.0) || !std::isfinite(penalties_[i]))
      throw DomainError("adjustment penalties must be finite and nonnegative");
    if (i > 0 && !(levels_[i] > levels_[i - 1]))
      throw DomainError("adjustment levels must be strictly increasing");
    if (i > 0 && penalties_[i] < penalties_[i - 1])
      throw DomainError("adjustment penalties must be increasing along levels");
  }
}

AdjustmentGrid AdjustmentGrid::two_level(double q, double p, double c) {
  if (!(q < p)) throw DomainError("two-level adjustment needs q < p");
  return AdjustmentGrid({q, p}, {0.0, c});
}

}  // namespace submod
