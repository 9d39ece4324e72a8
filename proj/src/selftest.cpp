#include "submod/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "submod/correlation.hpp"
#include "submod/lattice.hpp"
#include "submod/measures.hpp"
#include "submod/pipeline.hpp"
#include "submod/rng.hpp"
#include "submod/theory.hpp"

namespace submod {

namespace {

// Returns an empty string on success, otherwise what went wrong.
using Check = std::function<std::string()>;

std::vector<double> gaussian(StreamRng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& e : v) e = rng.normal();
  return v;
}

std::vector<RiskMeasureSpec> monetary_measures() {
  return {make_var(0.9),
          make_es(0.8),
          make_aes(AdjustmentGrid({0.5, 0.8}, {0.0, 0.1})),
          make_distortion(DistortionFunction::power(0.5)),
          make_ce(LossFunction::exponential_raw(1.0)),
          make_shortfall(LossFunction::exponential(1.0)),
          make_oce(LossFunction::quadratic_linear()),
          make_mmd(DeviationWeight::square(), DistortionFunction::expected_shortfall(0.5))};
}

std::string near(const std::string& what, double a, double b, double tol) {
  if (std::abs(a - b) <= tol) return {};
  return what + ": " + format_number(a) + " vs " + format_number(b);
}

std::vector<std::pair<std::string, Check>> checks(unsigned threads) {
  std::vector<std::pair<std::string, Check>> out;

  out.emplace_back("law invariance", [] {
    StreamRng rng(11, 0);
    for (int t = 0; t < 50; ++t) {
      std::vector<double> v = gaussian(rng, 12);
      const EmpiricalSample x(v);
      std::ranges::reverse(v);
      std::rotate(v.begin(), v.begin() + 5, v.end());
      const EmpiricalSample px(v);
      for (const auto& m : monetary_measures())
        if (auto e = near(m.label, m(x), m(px), 1e-12); !e.empty()) return e;
    }
    return std::string{};
  });

  out.emplace_back("cash invariance", [] {
    StreamRng rng(12, 0);
    for (int t = 0; t < 50; ++t) {
      const EmpiricalSample x(gaussian(rng, 10));
      const double c = 4.0 * rng.uniform() - 2.0;
      for (const auto& m : monetary_measures()) {
        if (m.family() == "CE") continue;  // CE is not cash invariant in general
        if (auto e = near(m.label, m(x.shifted(c)), m(x) + c, 1e-9); !e.empty()) return e;
      }
    }
    return std::string{};
  });

  out.emplace_back("positive homogeneity", [] {
    StreamRng rng(13, 0);
    for (int t = 0; t < 50; ++t) {
      const EmpiricalSample x(gaussian(rng, 10));
      const double lambda = 0.1 + 5.0 * rng.uniform();
      for (const auto& m : {make_var(0.9), make_es(0.7), make_distortion(DistortionFunction::power(0.5))})
        if (auto e = near(m.label, m(x.scaled(lambda)), lambda * m(x), 1e-12 * (1.0 + std::abs(lambda * m(x))));
            !e.empty())
          return e;
    }
    return std::string{};
  });

  out.emplace_back("monotonicity", [] {
    StreamRng rng(14, 0);
    for (int t = 0; t < 50; ++t) {
      // small scale: g(t) = t² keeps the MMD monotone only while g′ stays below 1
      std::vector<double> a = gaussian(rng, 10), b;
      for (double& e : a) e *= 0.25;
      b = a;
      for (double& e : b) e += 0.25 * std::abs(rng.normal());
      const EmpiricalSample x(a), y(b);
      for (const auto& m : monetary_measures())
        if (m(x) > m(y) + 1e-9) return m.label + " decreased";
    }
    return std::string{};
  });

  out.emplace_back("ES dominates VaR", [] {
    StreamRng rng(15, 0);
    for (int t = 0; t < 100; ++t) {
      const EmpiricalSample x(gaussian(rng, 20));
      for (double p : {0.5, 0.9, 0.95})
        if (es_historical(x, p) < var_historical(x, p)) return "ES below VaR at p=" + format_number(p);
    }
    return std::string{};
  });

  out.emplace_back("distortion comonotonic additivity", [] {
    StreamRng rng(16, 0);
    const auto phi = DistortionFunction::power(0.7);
    for (int t = 0; t < 50; ++t) {
      std::vector<double> a = gaussian(rng, 10), b = gaussian(rng, 10);
      std::ranges::sort(a);
      std::ranges::sort(b);
      const EmpiricalSample x(a), y(b);
      if (auto e = near("distortion", distortion_rho(pointwise_sum(x, y), phi),
                        distortion_rho(x, phi) + distortion_rho(y, phi), 1e-12);
          !e.empty())
        return e;
    }
    return std::string{};
  });

  out.emplace_back("expected loss modularity", [] {
    StreamRng rng(17, 0);
    for (const auto& ell : {LossFunction::linear(), LossFunction::square(), LossFunction::exponential_raw(1.0)}) {
      const auto m = make_expected_loss(ell);
      for (int t = 0; t < 100; ++t) {
        const EmpiricalSample x(gaussian(rng, 10)), y(gaussian(rng, 10));
        if (const double g = submodularity_gap(m, x, y).gap; std::abs(g) > 1e-12)
          return ell.name + " gap " + format_number(g);
      }
    }
    return std::string{};
  });

  out.emplace_back("shortfall(exp-1) equals CE(exp)", [] {
    StreamRng rng(18, 0);
    for (int t = 0; t < 50; ++t) {
      const EmpiricalSample x(gaussian(rng, 10));
      if (auto e = near("shortfall vs CE", shortfall_rho(x, LossFunction::exponential(1.0)),
                        certainty_equivalent(x, LossFunction::exponential_raw(1.0)), 1e-8);
          !e.empty())
        return e;
    }
    return std::string{};
  });

  out.emplace_back("single atom", [] {
    const EmpiricalSample x{0.37};
    for (const auto& m : monetary_measures())
      if (auto e = near(m.label, m(x), 0.37, 1e-9); !e.empty()) return e;
    return std::string{};
  });

  out.emplace_back("lattice identity and symmetry", [] {
    StreamRng rng(19, 0);
    const auto es = make_es(0.8), var = make_var(0.8);
    for (int t = 0; t < 100; ++t) {
      const EmpiricalSample x(gaussian(rng, 10)), y(gaussian(rng, 10));
      const auto [meet, join] = pointwise_meet_join(x, y);
      for (std::size_t i = 0; i < x.size(); ++i)
        if (meet[i] + join[i] != x[i] + y[i]) return std::string("meet + join != x + y");
      for (const auto& m : {es, var})
        if (submodularity_gap(m, x, y).gap != submodularity_gap(m, y, x).gap) return m.label + " gap asymmetric";
    }
    return std::string{};
  });

  out.emplace_back("ordered pairs have zero gap", [] {
    StreamRng rng(20, 0);
    for (int t = 0; t < 50; ++t) {
      std::vector<double> a = gaussian(rng, 10), b = a;
      for (double& e : b) e += std::abs(rng.normal());
      const EmpiricalSample x(a), y(b);
      for (const auto& m : monetary_measures())
        if (submodularity_gap(m, x, y).gap != 0.0) return m.label + " nonzero gap on ordered pair";
    }
    return std::string{};
  });

  out.emplace_back("sweep determinism", [threads] {
    SweepOptions o;
    o.trials = 400;
    o.seed = 5;
    o.threads = 1;
    const auto spec = make_var(0.8);
    const SweepReport a = random_pair_sweep(spec, o);
    o.threads = std::max(2u, threads);
    const SweepReport b = random_pair_sweep(spec, o);
    if (a.violations != b.violations || a.worst_gap != b.worst_gap || a.worst_trial != b.worst_trial ||
        a.worst_pair != b.worst_pair)
      return std::string("thread count changed the report");
    return std::string{};
  });

  out.emplace_back("ES sweeps never violate", [threads] {
    for (std::size_t n : {10u, 50u})
      for (double p : {0.9, 0.95, 0.99}) {
        SweepOptions o;
        o.n_atoms = n;
        o.trials = 1000;
        o.seed = 7;
        o.threads = threads;
        const auto r = random_pair_sweep(make_es(p), o);
        if (r.violations != 0) return r.label + " violated at n=" + std::to_string(n);
      }
    return std::string{};
  });

  out.emplace_back("OCE sweeps never violate", [threads] {
    for (const char* loss : {"exp:1", "piecewise:0,4", "quadlin"}) {
      SweepOptions o;
      o.trials = 300;
      o.seed = 8;
      o.threads = threads;
      const auto r = random_pair_sweep(make_oce(parse_loss(loss)), o);
      if (r.violations != 0) return r.label + " violated";
    }
    return std::string{};
  });

  out.emplace_back("dominance verdicts", [] {
    for (const char* loss : {"exp:1", "poly2exp"}) {
      const auto ell = parse_loss(loss);
      if (!linear_dominance_check(curvature_profile(ell), ell).feasible) return std::string(loss) + " infeasible";
    }
    const auto ex = LossFunction::expectile(1.0);
    if (linear_dominance_check(curvature_profile(ex), ex).feasible) return std::string("expectile:1 feasible");
    return std::string{};
  });

  out.emplace_back("feasible shortfall sweeps never violate", [threads] {
    for (const char* loss : {"exp:1", "poly2exp"}) {
      SweepOptions o;
      o.trials = 300;
      o.seed = 9;
      o.threads = threads;
      const auto r = random_pair_sweep(make_shortfall(parse_loss(loss)), o);
      if (r.violations != 0) return r.label + " violated";
    }
    return std::string{};
  });

  out.emplace_back("expectile sweep finds a violation", [threads] {
    SweepOptions o;
    o.n_atoms = 4;
    o.trials = 50000;
    o.seed = 1;
    o.generator = PairGenerator::two_point;
    o.threads = threads;
    const auto r = random_pair_sweep(make_shortfall(LossFunction::expectile(1.0)), o);
    return r.violations > 0 ? std::string{} : std::string("no violation found");
  });

  out.emplace_back("AES counterexample", [] {
    const auto c = aes_counterexample(1.0, 0.0, 0.5, 0.25, 1000);
    if (auto e = near("ES max gap", c.measured_gap, c.predicted_gap, 1e-2); !e.empty()) return e;
    const double gap = submodularity_gap(make_aes(c.grid), c.x, c.y).gap;
    return gap < -kDefaultEpsilon ? std::string{} : "AES gap " + format_number(gap) + " not negative";
  });

  out.emplace_back("shortfall jump deficit", [] {
    double prev = 0.0;
    for (double h : {0.1, 0.01, 0.001}) {
      const auto j = shortfall_jump_deficit(1.0, 2.0, h);
      if (h != 0.1 && j.measured_ratio > prev + 1e-6) return "ratio increased at h=" + format_number(h);
      prev = j.measured_ratio;
    }
    return near("ratio", prev, -0.05, 5e-3);
  });

  out.emplace_back("MMD counterexample", [] {
    const auto phi = DistortionFunction::expected_shortfall(0.5);
    const auto g = DeviationWeight::square();
    const auto c = mmd_counterexample_at(phi, g, 10, 0.6, 0.7, 0.8);
    const double gap = submodularity_gap(make_mmd(g, phi), c.x, c.y).gap;
    return gap < -kDefaultEpsilon ? std::string{} : "MMD gap " + format_number(gap) + " not negative";
  });

  out.emplace_back("CE characterization", [] {
    if (ce_two_point_counterexample(LossFunction::exponential_raw(1.0))) return std::string("exp CE violated");
    if (!ce_two_point_counterexample(LossFunction::arctan_mixed())) return std::string("no non-convex witness");
    return std::string{};
  });

  out.emplace_back("correlation bounds", [] {
    StreamRng rng(21, 0);
    for (int t = 0; t < 20; ++t) {
      const auto a = gaussian(rng, 30), b = gaussian(rng, 30);
      const auto r = correlations(a, b);
      if (std::abs(r.pearson) > 1.0 || std::abs(r.spearman) > 1.0 || r.dcor < 0.0 || r.dcor > 1.0)
        return std::string("statistic out of bounds");
      if (auto e = near("dcor(a,a)", distance_correlation(a, a), 1.0, 1e-12); !e.empty()) return e;
    }
    return std::string{};
  });

  out.emplace_back("pipeline: ES never violates, thread-independent", [threads] {
    const PricePanel prices = synth_prices(3, 80, 4, 0.02, 0.05);
    PipelineConfig cfg;
    cfg.window = 20;
    cfg.threads = 1;
    const auto a = run_pipeline(prices, cfg);
    cfg.threads = std::max(2u, threads);
    const auto b = run_pipeline(prices, cfg);
    if (a.records.size() != b.records.size()) return std::string("record counts differ");
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      const auto &x = a.records[i], &y = b.records[i];
      if (x.date != y.date || x.pair() != y.pair() || x.measure != y.measure || x.gap != y.gap)
        return std::string("records differ between thread counts");
      if (x.measure.starts_with("es:") && x.violated) return "ES violation on " + x.pair();
    }
    return std::string{};
  });

  return out;
}

}  // namespace

std::vector<SelftestCheck> run_selftest(unsigned threads) {
  std::vector<SelftestCheck> results;
  for (auto& [name, fn] : checks(threads)) {
    SelftestCheck c{name, false, {}};
    try {
      c.detail = fn();
      c.passed = c.detail.empty();
    } catch (const std::exception& e) {
      c.detail = std::string("threw: ") + e.what();
    }
    results.push_back(std::move(c));
  }
  return results;
}

}  // namespace submod
