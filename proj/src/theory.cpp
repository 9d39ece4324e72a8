#include "submod/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "submod/errors.hpp"
#include "submod/lattice.hpp"
#include "submod/measures.hpp"
#include "submod/risk_spec.hpp"
#include "submod/root_finding.hpp"

namespace submod {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> lattice_grid(double lo, double hi, double step) {
  const double first = std::ceil(lo / step), last = std::floor(hi / step);
  if (last - first > 5e7) throw DomainError("curvature grid too fine (more than 5e7 points)");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(std::max(0.0, last - first)) + 3);
  if (first * step > lo) g.push_back(lo);
  for (double k = first; k <= last; k += 1.0) g.push_back(k * step);
  if (g.empty() || g.back() < hi) g.push_back(hi);
  return g;
}

bool on_atom_grid(double t, std::size_t n) {
  const double scaled = t * static_cast<double>(n);
  return std::abs(scaled - std::round(scaled)) <= 1e-9 * std::max(1.0, scaled);
}

}  // namespace

CurvatureProfile curvature_profile(const LossFunction& ell, double lo, double hi, double step) {
  if (!(lo < hi)) throw DomainError("curvature grid needs lo < hi");
  if (!(step > 0.0)) throw DomainError("curvature grid needs step > 0");
  CurvatureProfile prof;
  prof.lo = lo;
  prof.hi = hi;
  prof.step = step;
  prof.grid = lattice_grid(lo, hi, step);
  prof.analytic_first = ell.deriv1.has_value();
  prof.analytic_second = ell.deriv2.has_value();

  const double d = kFiniteDifferenceStep;
  const double ell0 = ell(0.0);
  const std::size_t n = prof.grid.size();
  prof.ell_values.resize(n);
  prof.S_values.resize(n);
  prof.R_values.resize(n);
  prof.h_values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = prof.grid[i];
    const double fx = ell(x);
    prof.ell_values[i] = fx - ell0;
    const double s = prof.analytic_first ? (*ell.deriv1)(x) : (ell(x + d) - ell(x - d)) / (2.0 * d);
    double s2 = prof.analytic_second ? (*ell.deriv2)(x) : (ell(x + d) - 2.0 * fx + ell(x - d)) / (d * d);
    if (!(s > 0.0))
      throw DomainError("loss '" + ell.name + "' has ℓ′(" + std::to_string(x) + ") = " + std::to_string(s) +
                        " <= 0; it is not strictly increasing on the grid");
    if (ell.convex && s2 < 0.0) {
      // differencing noise on a convex loss
      s2 = 0.0;
      ++prof.clamped_second;
    }
    prof.S_values[i] = s;
    prof.R_values[i] = s2 / s;
    if (std::abs(prof.R_values[i]) > kInfiniteCurvature) ++prof.effectively_infinite;
  }
  prof.L = *std::ranges::min_element(prof.R_values);
  for (std::size_t i = 0; i < n; ++i) prof.h_values[i] = prof.S_values[i] * (prof.R_values[i] - 2.0 * prof.L);
  return prof;
}

DominanceVerdict linear_dominance_check(const CurvatureProfile& profile, const LossFunction& ell) {
  const auto& xs = profile.grid;
  const auto zero = std::ranges::find(xs, 0.0);
  if (zero == xs.end()) throw DomainError("linear dominance check needs x = 0 on the grid");
  if (profile.ell_values.size() != xs.size())
    throw DomainError("profile for '" + ell.name + "' is inconsistent");

  DominanceVerdict v;
  v.grid_lo = profile.lo;
  v.grid_hi = profile.hi;
  v.h_at_zero = profile.h_values[static_cast<std::size_t>(zero - xs.begin())];
  v.R_min = *std::ranges::min_element(profile.R_values);
  v.R_max = *std::ranges::max_element(profile.R_values);
  v.sufficient_condition_holds = v.R_max <= 2.0 * v.R_min + 1e-12 * (1.0 + std::abs(v.R_min));

  v.alpha_plus = -kInf;
  v.alpha_minus = kInf;
  std::size_t arg_plus = xs.size(), arg_minus = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double l = profile.ell_values[i];
    if (l > 0.0) {
      const double ratio = profile.h_values[i] / l;
      if (ratio > v.alpha_plus) {
        v.alpha_plus = ratio;
        arg_plus = i;
      }
    } else if (l < 0.0) {
      const double ratio = profile.h_values[i] / l;
      if (ratio < v.alpha_minus) {
        v.alpha_minus = ratio;
        arg_minus = i;
      }
    }
  }
  v.one_sided = arg_plus == xs.size() || arg_minus == xs.size();

  constexpr double tol = 1e-9;
  const bool zero_ok = v.h_at_zero <= tol;
  const bool interval_ok = v.alpha_plus <= v.alpha_minus + tol;
  v.feasible = zero_ok && interval_ok;
  if (v.feasible) {
    v.lambda_interval = std::pair{v.alpha_plus, v.alpha_minus};
  } else {
    if (!zero_ok) v.witnesses.push_back(0.0);
    if (!interval_ok) {
      if (arg_plus < xs.size()) v.witnesses.push_back(xs[arg_plus]);
      if (arg_minus < xs.size()) v.witnesses.push_back(xs[arg_minus]);
    }
  }
  return v;
}

AesCounterexample aes_counterexample(double a, double b, double q, double p1, std::size_t n_atoms) {
  if (!(a > 0.0)) throw DomainError("AES counterexample needs a > 0");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("AES counterexample needs q in (0,1)");
  if (!(p1 >= 0.0 && p1 <= q)) throw DomainError("AES counterexample needs p1 in [0, q]");
  const double n = static_cast<double>(n_atoms);
  if (q * n < 2.0 || (1.0 - q) * n < 2.0 || (p1 > 0.0 && p1 * n < 2.0))
    throw DomainError("AES counterexample needs at least 2 atoms below p1, below q and above q");
  if (!on_atom_grid(q, n_atoms)) throw DomainError("AES counterexample needs q·n_atoms to be an integer");

  std::vector<double> xs(n_atoms), ys(n_atoms);
  for (std::size_t i = 0; i < n_atoms; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / n;
    const double v = u >= q ? u : q - u;
    xs[i] = 2.0 * a * u + b - a;
    ys[i] = 2.0 * a * v + b - a;
  }
  EmpiricalSample x(std::move(xs)), y(std::move(ys));
  const EmpiricalSample join = pointwise_meet_join(x, y).second;

  std::vector<double> levels, penalties;
  if (p1 < q) {
    levels = {p1, q};
    penalties = {es_historical(x, p1), es_historical(x, q)};
  } else {
    levels = {q};
    penalties = {es_historical(x, q)};
  }
  const double shift = std::max(0.0, -*std::ranges::min_element(penalties));
  for (double& c : penalties) c += shift;

  const double predicted = a * (q - p1) * (q - p1) / (2.0 * (1.0 - p1));
  const double measured = es_historical(join, p1) - es_historical(x, p1);
  return {std::move(x), std::move(y), predicted, measured, AdjustmentGrid(std::move(levels), std::move(penalties))};
}

namespace {

double psi(const DistortionFunction& phi, double t) { return phi(t) - t; }

void require_mmd_inputs(const DistortionFunction& phi, const DeviationWeight& g) {
  if (!phi.concave) throw DomainError("MMD counterexample needs a concave distortion");
  double spread = 0.0;
  for (int i = 1; i < 1000; ++i) spread = std::max(spread, std::abs(psi(phi, i / 1000.0)));
  if (spread < 1e-12)
    throw DomainError("distortion '" + phi.name + "' is the identity; the measure is the mean and is modular");
  if (g.linear) throw DomainError("deviation weight '" + g.name + "' is linear; the measure is submodular");
}

std::vector<double> nonlinearity_candidates() {
  std::vector<double> xs{1.0};
  for (int k = 1; k <= 20; ++k) {
    xs.push_back(std::ldexp(1.0, k));
    xs.push_back(std::ldexp(1.0, -k));
  }
  return xs;
}

bool nonlinear_at(const DeviationWeight& g, double x) {
  const double lhs = g(0.5 * x) + g(1.5 * x);
  return lhs > 2.0 * g(x) + 1e-12 * (1.0 + std::abs(g(x)));
}

MmdCounterexample build_mmd(const DistortionFunction& phi, std::size_t n, double p, double q, double r,
                            double point) {
  const double m = point / psi(phi, q);
  const auto count = [n](double t) { return static_cast<std::size_t>(std::llround(t * static_cast<double>(n))); };
  const std::size_t na = count(p), nb = count(q), nc = count(r);
  std::vector<double> xs(n, 0.0), ys(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double ia = i < na ? 1.0 : 0.0, ic = i < nc ? 1.0 : 0.0;
    xs[i] = m * (ia + ic) / 2.0;
    ys[i] = i < nb ? m : 0.0;
  }
  return {EmpiricalSample(std::move(xs)), EmpiricalSample(std::move(ys)), p, q, r, point, m};
}

// The construction is valid at any x where g is locally nonlinear; try
// candidates until the pair actually exhibits the deficit.
MmdCounterexample finish_mmd(const DistortionFunction& phi, const DeviationWeight& g, std::size_t n, double p,
                             double q, double r) {
  const RiskMeasureSpec spec = make_mmd(g, phi);
  for (double point : nonlinearity_candidates()) {
    if (!nonlinear_at(g, point)) continue;
    MmdCounterexample ce = build_mmd(phi, n, p, q, r, point);
    if (submodularity_gap(spec, ce.x, ce.y, 0.0).gap < 0.0) return ce;
  }
  throw DomainError("deviation weight '" + g.name + "' shows no usable nonlinearity point");
}

}  // namespace

MmdCounterexample mmd_counterexample_at(const DistortionFunction& phi, const DeviationWeight& g,
                                        std::size_t n_atoms, double p, double q, double r) {
  require_mmd_inputs(phi, g);
  if (!(0.0 < p && p < q && q < r && r < 1.0)) throw DomainError("MMD triple needs 0 < p < q < r < 1");
  if (!on_atom_grid(p, n_atoms) || !on_atom_grid(q, n_atoms) || !on_atom_grid(r, n_atoms))
    throw DomainError("MMD triple must consist of multiples of 1/n_atoms");
  const double pp = psi(phi, p), pq = psi(phi, q), pr = psi(phi, r);
  if (!(pp > pq && pq > pr)) throw DomainError("MMD triple needs ψ(p) > ψ(q) > ψ(r)");
  if (std::abs(pp + pr - 2.0 * pq) > 1e-12) throw DomainError("MMD triple needs ψ(p) + ψ(r) = 2ψ(q)");
  return finish_mmd(phi, g, n_atoms, p, q, r);
}

MmdCounterexample mmd_counterexample(const DistortionFunction& phi, const DeviationWeight& g,
                                     std::size_t n_atoms) {
  require_mmd_inputs(phi, g);
  if (n_atoms < 3) throw DomainError("MMD counterexample needs at least 3 atoms");
  const double n = static_cast<double>(n_atoms);
  BisectionOptions opts;
  opts.x_tolerance = 1e-15;
  opts.residual_tolerance = 1e-15;
  for (std::size_t qi = 2; qi + 1 < n_atoms; ++qi) {
    const double q = static_cast<double>(qi) / n;
    const double pq = psi(phi, q);
    for (std::size_t pi = 1; pi < qi; ++pi) {
      const double p = static_cast<double>(pi) / n;
      const double pp = psi(phi, p);
      if (!(pp > pq + 1e-12)) continue;
      const double target = 2.0 * pq - pp;
      if (!(target > 1e-12)) continue;
      // ψ is concave and already falling at q, so it is decreasing on [q, 1]
      const auto root = bisect_decreasing([&](double t) { return psi(phi, t) - target; }, q, 1.0, opts);
      const double r = root.root;
      if (!on_atom_grid(r, n_atoms)) continue;
      const double r_snapped = std::round(r * n) / n;
      if (!(r_snapped > q && r_snapped < 1.0)) continue;
      if (std::abs(pp + psi(phi, r_snapped) - 2.0 * pq) > 1e-12) continue;
      return finish_mmd(phi, g, n_atoms, p, q, r_snapped);
    }
  }
  throw DomainError("no (p, q, r) triple with ψ(p) + ψ(r) = 2ψ(q) on the " + std::to_string(n_atoms) +
                    "-atom grid for distortion '" + phi.name + "'; try a different n_atoms");
}

JumpDeficit shortfall_jump_deficit(double s_minus, double s_plus, double h) {
  if (!(s_minus > 0.0)) throw DomainError("jump deficit needs s- > 0");
  if (!(s_plus >= s_minus)) throw DomainError("jump deficit needs s+ >= s-");
  if (!(h > 0.0)) throw DomainError("jump deficit needs h > 0");
  const LossFunction ell = LossFunction::piecewise(s_minus, s_plus);
  const EmpiricalSample x{-2.0 * h, -h, 0.0};
  const EmpiricalSample y{-h, -h, -h};
  const auto [meet, join] = pointwise_meet_join(x, y);

  const double mx = shortfall_rho(x, ell), my = shortfall_rho(y, ell);
  const double mjoin = shortfall_rho(join, ell), mmeet = shortfall_rho(meet, ell);

  JumpDeficit out;
  out.alpha_h = -mx / h;
  out.beta_h = -mjoin / h;
  out.gamma_h = -mmeet / h;
  out.measured_ratio = (mx + my - mjoin - mmeet) / h;
  out.alpha = 3.0 * s_minus / (2.0 * s_minus + s_plus);
  out.beta = 2.0 * s_minus / (2.0 * s_minus + s_plus);
  out.gamma = 2.0 * (s_minus + s_plus) / (s_minus + 2.0 * s_plus);
  out.limit_ratio = s_minus * (s_minus - s_plus) / ((s_minus + 2.0 * s_plus) * (2.0 * s_minus + s_plus));
  return out;
}

std::optional<CeCounterexample> ce_two_point_counterexample(const LossFunction& ell, double lo, double hi,
                                                            std::size_t steps, std::size_t n_atoms,
                                                            double epsilon) {
  if (n_atoms < 2 || n_atoms % 2 != 0) throw DomainError("two-point search needs an even atom count");
  if (!(lo < hi) || steps < 1) throw DomainError("two-point search needs lo < hi and steps >= 1");
  const RiskMeasureSpec spec = make_ce(ell);
  std::optional<CeCounterexample> best;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double a = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
    for (std::size_t j = 0; j < i; ++j) {
      const double b = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(steps);
      std::vector<double> xs(n_atoms), ys(n_atoms);
      for (std::size_t k = 0; k < n_atoms; ++k) {
        const bool in_a = k < n_atoms / 2;
        xs[k] = in_a ? a : b;
        ys[k] = in_a ? b : a;
      }
      EmpiricalSample x(std::move(xs)), y(std::move(ys));
      const GapResult r = submodularity_gap(spec, x, y, epsilon);
      if (r.violated && (!best || r.gap < best->gap)) best = CeCounterexample{std::move(x), std::move(y), r.gap};
    }
  }
  return best;
}

}  // namespace submod
