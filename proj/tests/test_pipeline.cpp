#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "submod/config.hpp"
#include "submod/correlation.hpp"
#include "submod/errors.hpp"
#include "submod/losses.hpp"
#include "submod/measures.hpp"
#include "submod/pipeline.hpp"
#include "submod/prices.hpp"
#include "submod/report.hpp"
#include "submod/rolling.hpp"
#include "submod/theory.hpp"
#include "support.hpp"

using namespace submod;
namespace fs = std::filesystem;

namespace {

PricePanel parse(const std::string& text) {
  std::istringstream in(text);
  return parse_prices_csv(in);
}

Date day(int offset) {
  return Date{std::chrono::sys_days{std::chrono::year{2021} / 3 / 1} + std::chrono::days{offset}};
}

// Prices whose log losses are exactly the given columns, starting from 100.
PricePanel panel_from_losses(const std::vector<std::vector<double>>& columns) {
  PricePanel p;
  const std::size_t rows = columns.front().size() + 1;
  for (std::size_t j = 0; j < columns.size(); ++j) p.tickers.push_back(std::string(1, static_cast<char>('A' + j)));
  std::vector<double> level(columns.size(), 100.0);
  for (std::size_t r = 0; r < rows; ++r) {
    p.dates.push_back(day(static_cast<int>(r)));
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (r > 0) level[j] *= std::exp(-columns[j][r - 1]);
      p.closes.emplace_back(level[j]);
    }
  }
  return p;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("price CSV parsing") {
  const auto p = parse("date,ticker,adj_close\n2020-01-02,MSFT,160.5\n2020-01-02,AAPL,75\n2020-01-03,AAPL,74.5\n");
  CHECK(p.tickers == std::vector<std::string>{"AAPL", "MSFT"});
  REQUIRE(p.n_dates() == 2);
  CHECK(format_date(p.dates[1]) == "2020-01-03");
  CHECK(*p.at(0, 0) == 75.0);
  CHECK(*p.at(0, 1) == 160.5);
  CHECK(*p.at(1, 0) == 74.5);
  CHECK_FALSE(p.at(1, 1).has_value());
  CHECK(p.duplicate_rows == 0);
}

TEST_CASE("price CSV duplicates keep the last value") {
  const auto p = parse("date,ticker,adj_close\n2020-01-02,X,1\n2020-01-02,X,2\n\n2020-01-02,X,3\n");
  CHECK(p.duplicate_rows == 2);
  CHECK(*p.at(0, 0) == 3.0);
}

TEST_CASE("price CSV errors") {
  CHECK_THROWS_AS(parse(""), NoDataError);
  CHECK_THROWS_AS(parse("date,ticker,adj_close\n"), NoDataError);
  CHECK_THROWS_AS(parse("day,ticker,price\n2020-01-02,X,1\n"), ParseError);
  try {
    parse("date,ticker,adj_close\n2020-01-02,X,1\n2020-01-03,X,abc\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse("date,ticker,adj_close\n2020-01-02,X,0\n"), ParseError);
  CHECK_THROWS_AS(parse("date,ticker,adj_close\n2020-01-02,X,-4\n"), ParseError);
  CHECK_THROWS_AS(parse("date,ticker,adj_close\n2020-02-30,X,4\n"), ParseError);
  CHECK_THROWS_AS(load_prices_csv("/nonexistent/prices.csv"), ParseError);
}

TEST_CASE("log losses") {
  const auto p = parse("date,ticker,adj_close\n2020-01-02,X,100\n2020-01-03,X,110\n2020-01-06,X,110\n");
  const auto l = build_loss_panel(p);
  REQUIRE(l.rows() == 2);
  CHECK(format_date(l.dates[0]) == "2020-01-03");
  CHECK(l.at(0, 0) == doctest::Approx(-std::log(1.1)).epsilon(1e-15));
  CHECK(l.at(1, 0) == 0.0);
}

TEST_CASE("losses use complete cases only") {
  const auto p = parse(
      "date,ticker,adj_close\n"
      "2020-01-02,A,10\n2020-01-02,B,20\n"
      "2020-01-03,A,11\n"
      "2020-01-06,A,12\n2020-01-06,B,22\n"
      "2020-01-07,A,12\n2020-01-07,B,11\n");
  const auto l = build_loss_panel(p);
  REQUIRE(l.rows() == 2);  // 01-03 is dropped, so the first loss spans 01-02 → 01-06
  CHECK(l.at(0, 0) == doctest::Approx(-std::log(1.2)));
  CHECK(l.at(1, 1) == doctest::Approx(std::log(2.0)));
  const std::vector<std::string> only_a{"A"};
  CHECK(build_loss_panel(p, only_a).rows() == 3);
  const std::vector<std::string> unknown{"Z"};
  CHECK_THROWS_AS(build_loss_panel(p, unknown), DomainError);

  const auto disjoint = parse("date,ticker,adj_close\n2020-01-02,A,1\n2020-01-03,B,1\n2020-01-06,A,1\n");
  CHECK_THROWS_AS(build_loss_panel(disjoint), DomainError);
}

TEST_CASE("rolling evaluation") {
  const auto l = build_loss_panel(panel_from_losses({{0.01, 0.02, 0.03, 0.04, 0.05}}));
  RollingConfig cfg;
  cfg.window = 2;
  const auto es = RiskMeasureSpec::parse("es:0.5");
  const auto s = rolling_eval(l, "A", cfg, es);
  CHECK(s.label == "A:" + es.label);
  REQUIRE(s.values.size() == 4);
  CHECK(s.dates.front() == l.dates[1]);
  // k = 1: the larger of each consecutive pair
  for (std::size_t i = 0; i < 4; ++i) CHECK(s.values[i] == doctest::Approx(0.02 + 0.01 * i).epsilon(1e-12));

  cfg.window = 5;
  const auto full = rolling_eval(l, "A", cfg, RiskMeasureSpec::parse("es:0.6"));
  REQUIRE(full.values.size() == 1);
  CHECK(full.values[0] == doctest::Approx(0.045).epsilon(1e-12));

  cfg.window = 6;
  const auto short_history = rolling_eval(l, "A", cfg, es);
  CHECK(short_history.values.empty());
  CHECK_FALSE(short_history.warning.empty());
}

TEST_CASE("rolling evaluation of constant prices is zero") {
  const auto l = build_loss_panel(panel_from_losses({{0, 0, 0, 0}}));
  RollingConfig cfg;
  cfg.window = 3;
  for (const char* m : {"var:0.9", "es:0.9", "shortfall:exp:1"})
    for (double v : rolling_eval(l, "A", cfg, RiskMeasureSpec::parse(m)).values) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("pairwise tests on the VaR fixture") {
  const auto l = build_loss_panel(panel_from_losses({{1, 0, 0, 0}, {0, 1, 0, 0}}));
  RollingConfig cfg;
  cfg.window = 4;
  cfg.measures = {RiskMeasureSpec::parse("var:0.5"), RiskMeasureSpec::parse("es:0.5")};
  const auto recs = pairwise_day_tests(l, cfg);
  REQUIRE(recs.size() == 3);  // one day, one pair: var, es, subadd var
  const std::string var_label = cfg.measures[0].label;
  const std::string es_label = cfg.measures[1].label;
  for (const auto& r : recs) {
    CHECK(r.pair() == "A/B");
    CHECK(r.date == l.dates.back());
  }
  CHECK(recs[0].measure < recs[1].measure);
  CHECK(recs[1].measure < recs[2].measure);
  const auto find = [&](const std::string& m) {
    for (const auto& r : recs)
      if (r.measure == m) return r;
    FAIL("missing " << m);
    return recs.front();
  };
  const auto sub = find(std::string(kSubadditivityPrefix) + var_label);
  CHECK(sub.test == TestKind::subadditivity);
  CHECK(sub.violated);
  CHECK(sub.gap == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK_FALSE(find(es_label).violated);
  // meet is 0 and join is [1,1,0,0], so VaR is not submodular here either
  CHECK(find(var_label).violated);
  CHECK(find(var_label).gap == doctest::Approx(-1.0).epsilon(1e-12));

  cfg.var_subadditivity = false;
  CHECK(pairwise_day_tests(l, cfg).size() == 2);
}

TEST_CASE("pairwise ES tests never violate on random panels") {
  testing_support::Draws d(50);
  std::vector<std::vector<double>> cols;
  for (int j = 0; j < 4; ++j) cols.push_back(d.normal(40, 0.02));
  const auto l = build_loss_panel(panel_from_losses(cols));
  RollingConfig cfg;
  cfg.window = 10;
  cfg.measures = {RiskMeasureSpec::parse("es:0.9"), RiskMeasureSpec::parse("es:0.8")};
  const auto recs = pairwise_day_tests(l, cfg);
  CHECK(recs.size() == 31 * 6 * 2);
  for (const auto& r : recs) CHECK_FALSE(r.violated);
  cfg.threads = 3;
  const auto again = pairwise_day_tests(l, cfg);
  REQUIRE(again.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) CHECK(again[i].gap == recs[i].gap);
}

TEST_CASE("identical columns have zero gap") {
  const std::vector<double> col{0.01, -0.02, 0.03, 0.0, 0.015};
  const auto l = build_loss_panel(panel_from_losses({col, col}));
  RollingConfig cfg;
  cfg.window = 5;
  cfg.measures = {RiskMeasureSpec::parse("var:0.8"), RiskMeasureSpec::parse("aes:0.5,0.8:0,0.01")};
  for (const auto& r : pairwise_day_tests(l, cfg))
    if (r.test == TestKind::submodularity) CHECK(r.gap == 0.0);
}

TEST_CASE("the AES counterexample embedded as a panel is detected") {
  const auto c = aes_counterexample(1.0, 0.0, 0.5, 0.25, 8);
  const auto l = build_loss_panel(panel_from_losses({{c.x.values().begin(), c.x.values().end()}, {c.y.values().begin(), c.y.values().end()}}));
  RollingConfig cfg;
  cfg.window = 8;
  const auto aes = make_aes(c.grid);
  cfg.measures = {aes};
  const auto direct = submodularity_gap(aes, c.x, c.y);
  CHECK(direct.violated);
  const auto recs = pairwise_day_tests(l, cfg);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].gap == doctest::Approx(direct.gap).epsilon(1e-9));
  CHECK(recs[0].violated);
}

TEST_CASE("daily violation rates") {
  std::vector<ViolationRecord> recs;
  const auto add = [&](int d, const char* m, bool v) {
    ViolationRecord r;
    r.date = day(d);
    r.ticker_a = "A";
    r.ticker_b = "B";
    r.measure = m;
    r.violated = v;
    recs.push_back(r);
  };
  add(0, "var", true);
  add(0, "var", false);
  add(0, "es", false);
  add(1, "var", false);
  add(1, "var", false);
  add(2, "var", true);
  const auto s = daily_violation_rate(recs, "var");
  CHECK(s.dates == std::vector<Date>{day(0), day(1), day(2)});
  CHECK(s.rate == std::vector<double>{0.5, 0.0, 1.0});
  CHECK(s.tests == std::vector<std::size_t>{2, 2, 1});
  CHECK(s.violations == std::vector<std::size_t>{1, 0, 1});
  CHECK(measure_labels(recs) == std::vector<std::string>{"es", "var"});
  CHECK_THROWS_AS(daily_violation_rate(recs, "oce"), DomainError);
}

TEST_CASE("correlations") {
  const std::vector<double> a{1, 4, 2, 8, 5};
  std::vector<double> lin(a.size()), neg(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) lin[i] = 2 * a[i] + 3, neg[i] = -a[i];
  const auto r = correlations(a, lin);
  CHECK(r.pearson == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.spearman == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.dcor == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(correlations(a, neg).pearson == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(correlations(a, neg).dcor == doctest::Approx(1.0).epsilon(1e-12));

  const std::vector<double> u{1, 2, 3, 4}, sq{1, 4, 9, 16};
  const auto m = correlations(u, sq);
  CHECK(m.spearman == doctest::Approx(1.0));
  CHECK(m.pearson < 1.0);
  CHECK(m.pearson == doctest::Approx(0.9843740386).epsilon(1e-9));
  CHECK(m.dcor == doctest::Approx(testing_support::dcor_oracle(u, sq)).epsilon(1e-12));

  CHECK(average_ranks(std::vector<double>{3, 1, 3, 2}) == std::vector<double>{3.5, 1, 3.5, 2});

  const std::vector<double> flat{2, 2, 2, 2};
  const auto deg = correlations(u, flat);
  CHECK(deg.degenerate);
  CHECK(deg.pearson == 0.0);
  CHECK(deg.spearman == 0.0);
  CHECK_THROWS_AS(correlations(std::vector<double>{1, 2}, std::vector<double>{2, 1}), DomainError);
}

TEST_CASE("dcor against the explicit-matrix oracle") {
  testing_support::Draws d(51);
  for (int t = 0; t < 20; ++t) {
    const auto a = d.normal(25), b = d.normal(25);
    CHECK(distance_correlation(a, b) == doctest::Approx(testing_support::dcor_oracle(a, b)).epsilon(1e-10));
  }
}

TEST_CASE("dated correlations align on common dates") {
  DatedSeries a{"a", {day(0), day(1), day(2), day(3), day(5)}, {1, 2, 3, 4, 100}, {}};
  DatedSeries b{"b", {day(1), day(2), day(3), day(4), day(6)}, {2, 4, 6, -50, 7}, {}};
  const auto r = correlations(a, b);
  CHECK(r.n == 3);
  CHECK(r.pearson == doctest::Approx(1.0));
  b.dates = {day(10), day(11), day(12), day(13), day(14)};
  CHECK_THROWS_AS(correlations(a, b), DomainError);
}

TEST_CASE("synthetic prices") {
  const auto one = synth_prices(1, 1, 3, 0.02, 0.0);
  REQUIRE(one.n_dates() == 1);
  CHECK(format_date(one.dates[0]) == "2018-01-02");
  for (std::size_t t = 0; t < 3; ++t) CHECK(*one.at(0, t) == 100.0);
  CHECK(one.tickers == std::vector<std::string>{"A01", "A02", "A03"});

  const auto a = synth_prices(9, 30, 4, 0.02, 0.05), b = synth_prices(9, 30, 4, 0.02, 0.05);
  CHECK(a.closes == b.closes);
  CHECK(synth_prices(10, 30, 4, 0.02, 0.05).closes != a.closes);
  for (const auto& d : a.dates) {
    const auto wd = std::chrono::weekday{std::chrono::sys_days{d}};
    CHECK(wd != std::chrono::Saturday);
    CHECK(wd != std::chrono::Sunday);
  }
  for (const auto& c : synth_prices(3, 20, 2, 0.0, 0.0).closes) CHECK(*c == 100.0);
}

TEST_CASE("price CSV round trip keeps values bit for bit") {
  TempDir dir("submod_prices_roundtrip");
  const auto p = synth_prices(4, 12, 3, 0.03, 0.1);
  write_prices_csv(p, dir.path / "p.csv");
  const auto q = load_prices_csv(dir.path / "p.csv");
  CHECK(q.dates == p.dates);
  CHECK(q.tickers == p.tickers);
  CHECK(q.closes == p.closes);
}

TEST_CASE("config parsing") {
  std::istringstream in(
      "# run\n"
      "window = 60\n"
      "epsilon = 1e-7\n"
      "levels = 0.9, 0.99\n"
      "aes_levels = 0.9,0.98 ; 0.95,0.98\n"
      "aes_penalties = 0,0.01\n"
      "tickers = MSFT, AAPL\n"
      "measures = oce:exp:1 ; mmd:square:es:0.9\n"
      "seed = 5\n"
      "threads = 2\n");
  const auto c = parse_config(in);
  CHECK(c.window == 60);
  CHECK(c.epsilon == 1e-7);
  CHECK(c.levels == std::vector<double>{0.9, 0.99});
  REQUIRE(c.aes.size() == 2);
  CHECK(c.aes[1].levels == std::vector<double>{0.95, 0.98});
  CHECK(c.aes[1].penalties == std::vector<double>{0, 0.01});
  CHECK(c.tickers == std::vector<std::string>{"MSFT", "AAPL"});
  CHECK(c.measures.size() == 2);
  CHECK(c.seed == 5);
  CHECK(c.threads == 2);
  CHECK(c.build_measures().size() == 2 * 2 + 2 + 2);
  CHECK(c.rolling().window == 60);

  const PipelineConfig def;
  CHECK(def.aes.size() == 6);
  CHECK(def.build_measures().size() == 4 + 6);
}

TEST_CASE("config errors carry the line number") {
  const auto fails = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_config(in);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(fails("window = 10\ncolour = red\n").find("line 2") != std::string::npos);
  CHECK(fails("window = 10\nwindow = 20\n").find("line 2") != std::string::npos);
  CHECK(fails("window = ten\n").find("line 1") != std::string::npos);
  CHECK_FALSE(fails("epsilon = -1\n").empty());
  CHECK_FALSE(fails("levels = 1.5\n").empty());
  CHECK_FALSE(fails("measures = nope:1\n").empty());
  CHECK_FALSE(fails("window\n").empty());
}

TEST_CASE("realized volatility") {
  const auto l = build_loss_panel(panel_from_losses({{0.01, -0.01, 0.01, -0.01}, {0, 0, 0, 0}}));
  const auto v = realized_volatility(l, 2);
  CHECK(v.label == kStressLabel);
  REQUIRE(v.values.size() == 3);
  // sample sd of (0.01, −0.01) is 0.01·√2; the flat ticker contributes 0
  for (double x : v.values) CHECK(x == doctest::Approx(0.01 * std::sqrt(2.0) / 2.0).epsilon(1e-10));
}

TEST_CASE("pipeline end to end") {
  const auto prices = synth_prices(11, 60, 4, 0.02, 0.05);
  PipelineConfig cfg;
  cfg.window = 20;
  const auto r = run_pipeline(prices, cfg, "synthetic");
  CHECK(r.tickers.size() == 4);
  CHECK(r.loss_dates == 59);
  CHECK(r.records.size() == 40 * 6 * (10 + 2));
  for (const auto& rec : r.records)
    if (rec.measure.starts_with("es:")) CHECK_FALSE(rec.violated);
  CHECK(r.series.size() == 12);
  CHECK(r.stress.values.size() == 40);
  CHECK(r.correlations.size() == 3 * cfg.levels.size());

  cfg.threads = 4;
  const auto r4 = run_pipeline(prices, cfg, "synthetic");
  TempDir d1("submod_report_1"), d2("submod_report_2");
  export_report(r, d1.path);
  export_report(r4, d2.path);
  for (const char* f : {"violations.csv", "daily_rates.csv", "correlations.csv", "summary.json"}) {
    CHECK(fs::exists(d1.path / f));
    CHECK(slurp(d1.path / f) == slurp(d2.path / f));
  }
  const auto back = load_violations_csv(d1.path / "violations.csv");
  REQUIRE(back.size() == r.records.size());
  for (std::size_t i = 0; i < back.size(); i += 37) {
    CHECK(back[i].date == r.records[i].date);
    CHECK(back[i].pair() == r.records[i].pair());
    CHECK(back[i].measure == r.records[i].measure);
    CHECK(back[i].test == r.records[i].test);
    CHECK(back[i].gap == r.records[i].gap);
    CHECK(back[i].violated == r.records[i].violated);
  }
  const std::string summary = summary_json(r);
  CHECK(summary.find("\"window\": 20") != std::string::npos);
  CHECK(summary.find("\"source\": \"synthetic\"") != std::string::npos);
}

TEST_CASE("report for a panel too short for any window") {
  PipelineConfig cfg;
  cfg.window = 100;
  const auto r = run_pipeline(synth_prices(2, 30, 3, 0.02, 0.0), cfg);
  CHECK(r.records.empty());
  CHECK_FALSE(r.warnings.empty());
  TempDir dir("submod_report_empty");
  export_report(r, dir.path);
  CHECK(slurp(dir.path / "violations.csv") == "date,pair,measure,params,gap,violated\n");
  CHECK(slurp(dir.path / "daily_rates.csv") == "date,measure,rate,tests\n");
  CHECK(slurp(dir.path / "correlations.csv") == "series_a,series_b,pearson,spearman,dcor\n");
}
