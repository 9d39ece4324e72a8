#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "submod/config.hpp"
#include "submod/errors.hpp"
#include "submod/lattice.hpp"
#include "submod/measures.hpp"
#include "submod/pipeline.hpp"
#include "submod/report.hpp"
#include "submod/selftest.hpp"
#include "submod/theory.hpp"

namespace py = pybind11;
using namespace submod;

namespace {

EmpiricalSample sample(const std::vector<double>& v) { return EmpiricalSample(v); }

py::dict verdict_dict(const std::string& loss, double lo, double hi, double step) {
  const LossFunction ell = parse_loss(loss);
  const CurvatureProfile p = curvature_profile(ell, lo, hi, step);
  const DominanceVerdict v = linear_dominance_check(p, ell);
  py::dict d;
  d["loss"] = ell.name;
  d["feasible"] = v.feasible;
  d["sufficient_condition"] = v.sufficient_condition_holds;
  d["lambda_interval"] = v.lambda_interval ? py::cast(*v.lambda_interval) : py::none();
  d["alpha_plus"] = v.alpha_plus;
  d["alpha_minus"] = v.alpha_minus;
  d["L"] = p.L;
  d["R_min"] = v.R_min;
  d["R_max"] = v.R_max;
  d["h_at_zero"] = v.h_at_zero;
  d["witnesses"] = v.witnesses;
  d["grid"] = py::make_tuple(v.grid_lo, v.grid_hi);
  return d;
}

py::dict sweep(const std::string& measure, std::size_t atoms, std::size_t trials, std::uint64_t seed,
               const std::string& generator, double epsilon, unsigned threads) {
  SweepOptions o;
  o.n_atoms = atoms;
  o.trials = trials;
  o.seed = seed;
  o.generator = parse_generator(generator);
  o.epsilon = epsilon;
  o.threads = threads;
  const RiskMeasureSpec spec = RiskMeasureSpec::parse(measure);
  SweepReport r;
  {
    py::gil_scoped_release release;
    r = random_pair_sweep(spec, o);
  }
  py::dict d;
  d["measure"] = r.label;
  d["trials"] = r.trials;
  d["violations"] = r.violations;
  d["worst_gap"] = r.worst_gap;
  d["worst_trial"] = r.worst_trial;
  if (r.worst_pair) d["worst_pair"] = py::make_tuple(r.worst_pair->first.vector(), r.worst_pair->second.vector());
  return d;
}

py::dict pipeline(const std::string& prices_csv, const std::string& out_dir, std::size_t window, double epsilon,
                  unsigned threads, const std::string& config_path) {
  PipelineConfig cfg = config_path.empty() ? PipelineConfig{} : load_config(config_path);
  cfg.window = window;
  cfg.epsilon = epsilon;
  cfg.threads = threads;
  const PricePanel prices = load_prices_csv(prices_csv);
  const PipelineResult r = run_pipeline(prices, cfg, "prices");
  export_report(r, out_dir);
  py::dict d;
  for (const DailyViolationSeries& s : r.series) {
    std::size_t tests = 0, bad = 0;
    for (std::size_t i = 0; i < s.dates.size(); ++i) {
      tests += s.tests[i];
      bad += s.violations[i];
    }
    d[py::str(s.measure)] = py::make_tuple(bad, tests);
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Risk measures on equally weighted samples and their submodularity checks";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def("var", [](const std::vector<double>& x, double p) { return var_historical(sample(x), p); }, py::arg("x"),
        py::arg("p"));
  m.def("es", [](const std::vector<double>& x, double p) { return es_historical(sample(x), p); }, py::arg("x"),
        py::arg("p"));
  m.def("aes",
        [](const std::vector<double>& x, std::vector<double> levels, std::vector<double> penalties) {
          return aes(sample(x), AdjustmentGrid(std::move(levels), std::move(penalties)));
        },
        py::arg("x"), py::arg("levels"), py::arg("penalties"));
  m.def("distortion", [](const std::vector<double>& x, const std::string& phi) {
    return distortion_rho(sample(x), parse_distortion(phi));
  }, py::arg("x"), py::arg("phi"));
  m.def("expected_loss", [](const std::vector<double>& x, const std::string& loss) {
    return expected_loss(sample(x), parse_loss(loss));
  }, py::arg("x"), py::arg("loss"));
  m.def("certainty_equivalent", [](const std::vector<double>& x, const std::string& loss) {
    return certainty_equivalent(sample(x), parse_loss(loss));
  }, py::arg("x"), py::arg("loss"));
  m.def("shortfall", [](const std::vector<double>& x, const std::string& loss) {
    return shortfall_rho(sample(x), parse_loss(loss));
  }, py::arg("x"), py::arg("loss"));
  m.def("oce", [](const std::vector<double>& x, const std::string& loss) { return oce(sample(x), parse_loss(loss)); },
        py::arg("x"), py::arg("loss"));
  m.def("mmd", [](const std::vector<double>& x, const std::string& g, const std::string& phi) {
    return mmd_rho(sample(x), parse_deviation_weight(g), parse_distortion(phi));
  }, py::arg("x"), py::arg("g"), py::arg("phi"));

  m.def("evaluate", [](const std::string& measure, const std::vector<double>& x) {
    return RiskMeasureSpec::parse(measure)(sample(x));
  }, py::arg("measure"), py::arg("x"), "Evaluate a measure given in spec text, e.g. 'shortfall:exp:1'.");
  m.def("submodularity_gap",
        [](const std::string& measure, const std::vector<double>& x, const std::vector<double>& y, double eps) {
          const GapResult r = submodularity_gap(RiskMeasureSpec::parse(measure), sample(x), sample(y), eps);
          return py::make_tuple(r.gap, r.violated);
        },
        py::arg("measure"), py::arg("x"), py::arg("y"), py::arg("epsilon") = kDefaultEpsilon);
  m.def("subadditivity_gap",
        [](const std::string& measure, const std::vector<double>& x, const std::vector<double>& y, double eps) {
          const GapResult r = subadditivity_gap(RiskMeasureSpec::parse(measure), sample(x), sample(y), eps);
          return py::make_tuple(r.gap, r.violated);
        },
        py::arg("measure"), py::arg("x"), py::arg("y"), py::arg("epsilon") = kDefaultEpsilon);

  m.def("sweep", &sweep, py::arg("measure"), py::arg("atoms") = 10, py::arg("trials") = 1000, py::arg("seed") = 0,
        py::arg("generator") = "gaussian", py::arg("epsilon") = kDefaultEpsilon, py::arg("threads") = 1);
  m.def("check_loss", &verdict_dict, py::arg("loss"), py::arg("lo") = -20.0, py::arg("hi") = 20.0,
        py::arg("step") = 1e-3);

  m.def("aes_counterexample", [](double a, double b, double q, double p1, std::size_t n) {
    const auto c = aes_counterexample(a, b, q, p1, n);
    py::dict d;
    d["x"] = c.x.vector();
    d["y"] = c.y.vector();
    d["predicted_gap"] = c.predicted_gap;
    d["measured_gap"] = c.measured_gap;
    d["levels"] = c.grid.levels();
    d["penalties"] = c.grid.penalties();
    return d;
  }, py::arg("a") = 1.0, py::arg("b") = 0.0, py::arg("q") = 0.5, py::arg("p1") = 0.25, py::arg("atoms") = 10000);
  m.def("mmd_counterexample",
        [](const std::string& phi, const std::string& g, std::size_t n, double p, double q, double r) {
          const auto c = mmd_counterexample_at(parse_distortion(phi), parse_deviation_weight(g), n, p, q, r);
          return py::make_tuple(c.x.vector(), c.y.vector());
        },
        py::arg("phi"), py::arg("g"), py::arg("atoms"), py::arg("p"), py::arg("q"), py::arg("r"));
  m.def("shortfall_jump_deficit", [](double s_minus, double s_plus, double h) {
    const auto d = shortfall_jump_deficit(s_minus, s_plus, h);
    return py::make_tuple(d.measured_ratio, d.limit_ratio);
  }, py::arg("s_minus"), py::arg("s_plus"), py::arg("h"), "Returns (measured Δ_h/h, limit).");

  m.def("write_synthetic_prices",
        [](const std::filesystem::path& path, std::uint64_t seed, std::size_t days, std::size_t assets, double vol,
           double jump_prob) { write_prices_csv(synth_prices(seed, days, assets, vol, jump_prob), path); },
        py::arg("path"), py::arg("seed") = 0, py::arg("days") = 60, py::arg("assets") = 4, py::arg("vol") = 0.02,
        py::arg("jump_prob") = 0.05);
  m.def("pipeline", &pipeline, py::arg("prices_csv"), py::arg("out_dir"), py::arg("window") = 250,
        py::arg("epsilon") = kDefaultEpsilon, py::arg("threads") = 1, py::arg("config") = "",
        "Run the rolling pairwise tests and write the report. Returns {measure: (violations, tests)}.");

  m.def("selftest", [](unsigned threads) {
    std::vector<py::tuple> out;
    for (const auto& c : run_selftest(threads)) out.push_back(py::make_tuple(c.name, c.passed, c.detail));
    return out;
  }, py::arg("threads") = 1);
}
