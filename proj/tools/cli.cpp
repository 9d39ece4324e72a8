#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "submod/config.hpp"
#include "submod/errors.hpp"
#include "submod/lattice.hpp"
#include "submod/measures.hpp"
#include "submod/pipeline.hpp"
#include "submod/report.hpp"
#include "submod/selftest.hpp"
#include "submod/theory.hpp"

namespace submod::cli {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { text, csv, json };

Json num(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

Json values(const EmpiricalSample& s) {
  Json a = Json::array();
  for (double v : s.values()) a.push_back(num(v));
  return a;
}

std::string plain(const Json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + plain(v[i]);
    return s + "]";
  }
  return v.dump();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void emit(const Json& doc, Format format, std::ostream& out) {
  switch (format) {
    case Format::json:
      out << doc.dump(2) << '\n';
      return;
    case Format::csv:
      out << "key,value\n";
      for (const auto& [k, v] : doc.items()) out << csv_quote(k) << ',' << csv_quote(plain(v)) << '\n';
      return;
    case Format::text:
      for (const auto& [k, v] : doc.items()) out << k << ": " << plain(v) << '\n';
      return;
  }
}

/// Whether the characterization results promise zero submodularity violations.
std::optional<std::string> promise_for(const RiskMeasureSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::optional<std::string> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, spec::ES>) {
          return "ES is submodular";
        } else if constexpr (std::is_same_v<T, spec::ExpectedLoss>) {
          return "expected loss is modular";
        } else if constexpr (std::is_same_v<T, spec::OCE>) {
          return "OCE is submodular";
        } else if constexpr (std::is_same_v<T, spec::Distortion>) {
          if (s.phi.concave) return "concave distortion is submodular";
        } else if constexpr (std::is_same_v<T, spec::CE>) {
          if (s.ell.convex) return "CE with convex loss is submodular";
        } else if constexpr (std::is_same_v<T, spec::MMD>) {
          if (s.g.linear) return "MMD with linear g is a concave distortion";
        } else if constexpr (std::is_same_v<T, spec::Shortfall>) {
          try {
            if (linear_dominance_check(curvature_profile(s.ell), s.ell).feasible)
              return "loss passes the linear dominance check";
          } catch (const DomainError&) {
          }
        }
        return std::nullopt;
      },
      spec.kind);
}

Json verdict_json(const LossFunction& ell, const CurvatureProfile& p, const DominanceVerdict& v) {
  Json j;
  j["loss"] = ell.name;
  j["grid"] = Json::array({num(v.grid_lo), num(v.grid_hi)});
  j["step"] = num(p.step);
  j["points"] = p.grid.size();
  j["derivatives"] = std::string(p.analytic_first ? "analytic" : "finite-difference") + "/" +
                     (p.analytic_second ? "analytic" : "finite-difference");
  j["L"] = num(p.L);
  j["R_range"] = Json::array({num(v.R_min), num(v.R_max)});
  j["effectively_infinite_R"] = p.effectively_infinite;
  j["h_at_zero"] = num(v.h_at_zero);
  j["alpha_plus"] = num(v.alpha_plus);
  j["alpha_minus"] = num(v.alpha_minus);
  j["sufficient_condition"] = v.sufficient_condition_holds;
  j["feasible"] = v.feasible;
  if (v.lambda_interval)
    j["lambda_interval"] = Json::array({num(v.lambda_interval->first), num(v.lambda_interval->second)});
  if (!v.witnesses.empty()) {
    Json w = Json::array();
    for (double x : v.witnesses) w.push_back(num(x));
    j["witnesses"] = w;
  }
  j["verdict"] = v.feasible ? "submodular shortfall (on this grid)" : "not submodular";
  return j;
}

struct Globals {
  unsigned threads = 1;
  std::string format = "text";
};

Format parse_format(const std::string& f) {
  if (f == "csv") return Format::csv;
  if (f == "json") return Format::json;
  return Format::text;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Submodularity checks for risk measures on finite samples", "submod"};
  app.require_subcommand(1, 1);
  Globals g;
  app.add_option("--threads", g.threads, "Worker threads for sweeps and pipeline tests")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));

  // check
  auto* check = app.add_subcommand("check", "Curvature profile and linear dominance verdict for a loss");
  std::string check_loss;
  double lo = -20.0, hi = 20.0, step = 1e-3;
  check->add_option("--loss", check_loss, "Loss spec, e.g. exp:1, poly2exp, expectile:1")->required();
  check->add_option("--lo", lo, "Grid lower end");
  check->add_option("--hi", hi, "Grid upper end");
  check->add_option("--step", step, "Grid spacing");
  check->fallthrough();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Random-pair submodularity sweep");
  std::string measure, generator = "gaussian";
  SweepOptions so;
  bool expect_violations = false;
  sweep->add_option("--measure", measure, "Measure spec, e.g. es:0.95, shortfall:exp:1")->required();
  sweep->add_option("--atoms", so.n_atoms, "Atoms per sample")->check(CLI::PositiveNumber);
  sweep->add_option("--trials", so.trials, "Number of random pairs")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", so.seed, "Base seed");
  sweep->add_option("--generator", generator, "gaussian | heavy_tail | two_point | binary");
  sweep->add_option("--epsilon", so.epsilon, "Violation threshold");
  sweep->add_option("--comonotone", so.comonotone_probability, "Probability of a partial comonotone re-sort")
      ->check(CLI::Range(0.0, 1.0));
  sweep->add_flag("--expect-violations", expect_violations, "Exit 1 unless at least one violation is found");
  sweep->fallthrough();

  // counterexample
  auto* cex = app.add_subcommand("counterexample", "Build a pair from a non-submodularity proof and measure it");
  cex->set_help_flag("--help", "Print this help message and exit");  // frees --h for the jump size
  std::string family;
  double a = 1.0, b = 0.0, q = 0.5, p1 = 0.25;
  std::size_t atoms = 0;
  std::string phi_text = "es:0.5", g_text = "square", ce_loss = "arctan";
  std::optional<double> mp, mr;
  double s_minus = 1.0, s_plus = 2.0, h = 1e-3;
  bool show_pair = false;
  cex->add_option("--family", family, "aes | mmd | shortfall-jump | ce")
      ->required()
      ->check(CLI::IsMember({"aes", "mmd", "shortfall-jump", "ce"}));
  cex->add_option("--a", a, "aes: half-width of the uniform law");
  cex->add_option("--b", b, "aes: centre of the uniform law");
  cex->add_option("--q", q, "aes: reflection level; mmd: middle mass");
  cex->add_option("--p1", p1, "aes: lower level");
  cex->add_option("--atoms", atoms, "Atoms (default 10000 for aes, 10 for mmd, 4 for ce)");
  cex->add_option("--phi", phi_text, "mmd: distortion spec");
  cex->add_option("--g", g_text, "mmd: deviation weight spec");
  cex->add_option("--p", mp, "mmd: smallest mass (with --q and --r; searched when omitted)");
  cex->add_option("--r", mr, "mmd: largest mass");
  cex->add_option("--sminus", s_minus, "shortfall-jump: slope below 0");
  cex->add_option("--splus", s_plus, "shortfall-jump: slope above 0");
  cex->add_option("--h", h, "shortfall-jump: jump size");
  cex->add_option("--loss", ce_loss, "ce: strictly increasing loss spec");
  cex->add_flag("--show-pair", show_pair, "Print the pair even when it is long");
  cex->fallthrough();

  // pipeline
  auto* pipe = app.add_subcommand("pipeline", "Rolling pairwise tests on a price panel");
  std::string prices_path, config_path, out_dir, write_prices;
  std::optional<std::size_t> window;
  std::optional<double> epsilon;
  std::size_t synth_days = 0, synth_assets = 4;
  double synth_vol = 0.02, synth_jump = 0.05;
  std::uint64_t synth_seed = 0;
  auto* prices_opt = pipe->add_option("--prices", prices_path, "CSV with date,ticker,adj_close");
  auto* synth_opt = pipe->add_option("--synth-days", synth_days, "Generate a synthetic panel with this many days");
  prices_opt->excludes(synth_opt);
  pipe->add_option("--synth-assets", synth_assets, "Synthetic assets")->check(CLI::PositiveNumber);
  pipe->add_option("--synth-vol", synth_vol, "Synthetic daily log-return volatility");
  pipe->add_option("--synth-jump", synth_jump, "Synthetic common-jump probability per day");
  pipe->add_option("--seed", synth_seed, "Synthetic panel seed");
  pipe->add_option("--config", config_path, "key = value configuration file");
  pipe->add_option("--window", window, "Override the configured window");
  pipe->add_option("--epsilon", epsilon, "Override the configured epsilon");
  pipe->add_option("--out", out_dir, "Report directory")->required();
  pipe->add_option("--write-prices", write_prices, "Also save the price panel used");
  pipe->fallthrough();

  // selftest
  auto* self = app.add_subcommand("selftest", "Run the built-in invariant checks");
  self->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const Format format = parse_format(g.format);

  try {
    if (*check) {
      const LossFunction ell = parse_loss(check_loss);
      const CurvatureProfile profile = curvature_profile(ell, lo, hi, step);
      const DominanceVerdict verdict = linear_dominance_check(profile, ell);
      emit(verdict_json(ell, profile, verdict), format, out);
      return kExitOk;
    }

    if (*sweep) {
      const RiskMeasureSpec spec = RiskMeasureSpec::parse(measure);
      so.generator = parse_generator(generator);
      so.threads = g.threads;
      const auto promise = promise_for(spec);
      const SweepReport r = random_pair_sweep(spec, so);
      bool ok = true;
      std::string expectation = "none";
      if (expect_violations) {
        expectation = "at least one violation";
        ok = r.violations > 0;
      } else if (promise) {
        expectation = "zero violations (" + *promise + ")";
        ok = r.violations == 0;
      }
      Json j;
      j["measure"] = spec.label;
      j["family"] = spec.family();
      j["generator"] = to_string(r.generator);
      j["atoms"] = r.n_atoms;
      j["trials"] = r.trials;
      j["seed"] = r.seed;
      j["epsilon"] = num(r.epsilon);
      j["violations"] = r.violations;
      j["violation_rate"] = num(static_cast<double>(r.violations) / static_cast<double>(r.trials));
      j["worst_gap"] = num(r.worst_gap);
      j["worst_trial"] = r.worst_trial;
      if (r.violations > 0 && r.worst_pair && r.n_atoms <= 50) {
        j["worst_x"] = values(r.worst_pair->first);
        j["worst_y"] = values(r.worst_pair->second);
      }
      j["expectation"] = expectation;
      j["status"] = ok ? "ok" : "expectation failed";
      emit(j, format, out);
      if (!ok) err << "sweep: expected " << expectation << ", found " << r.violations << " violation(s)\n";
      return ok ? kExitOk : kExitExpectation;
    }

    if (*cex) {
      Json j;
      j["family"] = family;
      bool ok = true;
      std::optional<std::pair<EmpiricalSample, EmpiricalSample>> pair;
      if (family == "aes") {
        const auto c = aes_counterexample(a, b, q, p1, atoms ? atoms : 10000);
        const double gap = submodularity_gap(make_aes(c.grid), c.x, c.y).gap;
        j["atoms"] = c.x.size();
        j["grid_levels"] = c.grid.levels();
        j["grid_penalties"] = c.grid.penalties();
        j["predicted_es_gap"] = num(c.predicted_gap);
        j["measured_es_gap"] = num(c.measured_gap);
        j["aes_submodularity_gap"] = num(gap);
        ok = gap < -kDefaultEpsilon;
        pair.emplace(c.x, c.y);
      } else if (family == "mmd") {
        const auto phi = parse_distortion(phi_text);
        const auto gw = parse_deviation_weight(g_text);
        const std::size_t n = atoms ? atoms : 10;
        const bool explicit_triple = mp || mr || cex->count("--q") > 0;
        if (explicit_triple && !(mp && mr && cex->count("--q") > 0))
          throw DomainError("give all of --p, --q, --r or none of them");
        const auto c = explicit_triple ? mmd_counterexample_at(phi, gw, n, *mp, q, *mr) : mmd_counterexample(phi, gw, n);
        const double gap = submodularity_gap(make_mmd(gw, phi), c.x, c.y).gap;
        j["phi"] = phi.name;
        j["g"] = gw.name;
        j["atoms"] = n;
        j["masses"] = Json::array({num(c.p), num(c.q), num(c.r)});
        j["deviation_point"] = num(c.deviation_point);
        j["scale"] = num(c.scale);
        j["mmd_submodularity_gap"] = num(gap);
        ok = gap < -kDefaultEpsilon;
        pair.emplace(c.x, c.y);
      } else if (family == "shortfall-jump") {
        const auto d = shortfall_jump_deficit(s_minus, s_plus, h);
        j["s_minus"] = num(s_minus);
        j["s_plus"] = num(s_plus);
        j["h"] = num(h);
        j["alpha_h"] = num(d.alpha_h);
        j["beta_h"] = num(d.beta_h);
        j["gamma_h"] = num(d.gamma_h);
        j["ratio"] = num(d.measured_ratio);
        j["limit_ratio"] = num(d.limit_ratio);
        ok = d.measured_ratio < 0.0;
      } else {
        const auto ell = parse_loss(ce_loss);
        const auto c = ce_two_point_counterexample(ell, -5.0, 5.0, 40, atoms ? atoms : 4);
        j["loss"] = ell.name;
        j["convex"] = ell.convex;
        if (c) {
          j["ce_submodularity_gap"] = num(c->gap);
          pair.emplace(c->x, c->y);
        } else {
          j["ce_submodularity_gap"] = "no violating two-point pair on the grid";
        }
        ok = c.has_value();
      }
      if (pair && (show_pair || pair->first.size() <= 100)) {
        j["x"] = values(pair->first);
        j["y"] = values(pair->second);
      }
      j["status"] = ok ? "deficit confirmed" : "no deficit";
      emit(j, format, out);
      return ok ? kExitOk : kExitExpectation;
    }

    if (*pipe) {
      PipelineConfig cfg = config_path.empty() ? PipelineConfig{} : load_config(config_path);
      if (window) cfg.window = *window;
      if (epsilon) cfg.epsilon = *epsilon;
      cfg.threads = g.threads;
      PricePanel prices;
      std::string source;
      if (!prices_path.empty()) {
        prices = load_prices_csv(prices_path);
        source = "prices:" + std::filesystem::path(prices_path).filename().string();
      } else {
        if (synth_days < 2) throw DomainError("give --prices or --synth-days of at least 2");
        prices = synth_prices(synth_seed, synth_days, synth_assets, synth_vol, synth_jump);
        cfg.seed = synth_seed;
        source = "synthetic:days=" + std::to_string(synth_days) + ";assets=" + std::to_string(synth_assets) +
                 ";vol=" + format_number(synth_vol) + ";jump=" + format_number(synth_jump) +
                 ";seed=" + std::to_string(synth_seed);
      }
      if (!write_prices.empty()) write_prices_csv(prices, write_prices);
      const PipelineResult r = run_pipeline(prices, cfg, source);
      export_report(r, out_dir);
      for (const std::string& w : r.warnings) err << "warning: " << w << '\n';

      bool es_clean = true;
      for (const ViolationRecord& rec : r.records)
        if (rec.measure.starts_with("es:") && rec.violated) es_clean = false;

      if (format == Format::json) {
        out << summary_json(r);
      } else {
        if (format == Format::csv) out << "measure,tests,violations,mean_daily_rate\n";
        for (const DailyViolationSeries& s : r.series) {
          std::size_t tests = 0, bad = 0;
          double mean = 0.0;
          for (std::size_t i = 0; i < s.dates.size(); ++i) {
            tests += s.tests[i];
            bad += s.violations[i];
            mean += s.rate[i];
          }
          mean /= static_cast<double>(s.dates.size());
          if (format == Format::csv)
            out << csv_quote(s.measure) << ',' << tests << ',' << bad << ',' << format_number(mean) << '\n';
          else
            out << s.measure << ": " << bad << "/" << tests << " violations, mean daily rate "
                << format_number(mean) << '\n';
        }
        if (format == Format::text) out << "report: " << out_dir << '\n';
      }
      if (!es_clean) err << "pipeline: ES submodularity violation recorded\n";
      return es_clean ? kExitOk : kExitExpectation;
    }

    if (*self) {
      bool all = true;
      Json j = Json::array();
      if (format == Format::csv) out << "check,result,detail\n";
      for (const SelftestCheck& c : run_selftest(g.threads)) {
        all = all && c.passed;
        if (format == Format::json)
          j.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        else if (format == Format::csv)
          out << csv_quote(c.name) << ',' << (c.passed ? "pass" : "fail") << ',' << csv_quote(c.detail) << '\n';
        else
          out << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
      }
      if (format == Format::json) out << j.dump(2) << '\n';
      return all ? kExitOk : kExitExpectation;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace submod::cli
