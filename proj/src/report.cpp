#include "submod/report.hpp"

#include <fstream>

#include "json.hpp"
#include "submod/errors.hpp"
#include "submod/functions.hpp"
#include "text.hpp"

namespace submod {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

std::string summary_json(const PipelineResult& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["source"] = r.source;
  j["window"] = r.config.window;
  j["epsilon"] = r.config.epsilon;
  j["levels"] = r.config.levels;
  ordered_json aes = ordered_json::array();
  for (const auto& a : r.config.aes) aes.push_back({{"levels", a.levels}, {"penalties", a.penalties}});
  j["aes"] = aes;
  j["extra_measures"] = r.config.measures;
  j["seed"] = r.config.seed;
  j["tickers"] = r.tickers;
  j["price_dates"] = r.price_dates;
  j["loss_dates"] = r.loss_dates;
  j["duplicate_rows"] = r.duplicate_rows;
  j["records"] = r.records.size();

  ordered_json measures = ordered_json::array();
  for (const DailyViolationSeries& s : r.series) {
    std::size_t tests = 0, violations = 0;
    for (std::size_t i = 0; i < s.dates.size(); ++i) {
      tests += s.tests[i];
      violations += s.violations[i];
    }
    double mean_rate = 0.0;
    for (double v : s.rate) mean_rate += v;
    mean_rate /= static_cast<double>(s.rate.size());
    measures.push_back({{"measure", s.measure},
                        {"days", s.dates.size()},
                        {"tests", tests},
                        {"violations", violations},
                        {"mean_daily_rate", mean_rate}});
  }
  j["measures"] = measures;

  ordered_json corr = ordered_json::array();
  for (const CorrelationRow& c : r.correlations)
    corr.push_back({{"series_a", c.series_a},
                    {"series_b", c.series_b},
                    {"n", c.result.n},
                    {"degenerate", c.result.degenerate}});
  j["correlations"] = corr;
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

void export_report(const PipelineResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());

  {
    const auto path = dir / "violations.csv";
    auto out = open_out(path);
    out << "date,pair,measure,params,gap,violated\n";
    for (const ViolationRecord& v : r.records)
      out << format_date(v.date) << ',' << text::csv_field(v.pair()) << ',' << text::csv_field(v.measure) << ','
          << text::csv_field(v.params) << ',' << format_number(v.gap) << ',' << (v.violated ? "true" : "false")
          << '\n';
    finish(out, path);
  }
  {
    const auto path = dir / "daily_rates.csv";
    auto out = open_out(path);
    out << "date,measure,rate,tests\n";
    for (const DailyViolationSeries& s : r.series)
      for (std::size_t i = 0; i < s.dates.size(); ++i)
        out << format_date(s.dates[i]) << ',' << text::csv_field(s.measure) << ',' << format_number(s.rate[i])
            << ',' << s.tests[i] << '\n';
    finish(out, path);
  }
  {
    const auto path = dir / "correlations.csv";
    auto out = open_out(path);
    out << "series_a,series_b,pearson,spearman,dcor\n";
    for (const CorrelationRow& c : r.correlations)
      out << text::csv_field(c.series_a) << ',' << text::csv_field(c.series_b) << ','
          << format_number(c.result.pearson) << ',' << format_number(c.result.spearman) << ','
          << format_number(c.result.dcor) << '\n';
    finish(out, path);
  }
  {
    const auto path = dir / "summary.json";
    auto out = open_out(path);
    out << summary_json(r);
    finish(out, path);
  }
}

std::vector<ViolationRecord> load_violations_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::vector<ViolationRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    if (line_no == 1) {
      if (text::trim(line) != "date,pair,measure,params,gap,violated")
        throw ParseError("unexpected violations header", line_no);
      continue;
    }
    try {
      const auto f = text::csv_split(line);
      if (f.size() != 6) throw DomainError("expected 6 fields");
      ViolationRecord v;
      v.date = parse_date(f[0]);
      const auto slash = f[1].find('/');
      if (slash == std::string::npos) throw DomainError("pair without '/'");
      v.ticker_a = f[1].substr(0, slash);
      v.ticker_b = f[1].substr(slash + 1);
      v.measure = f[2];
      v.params = f[3];
      v.test = v.measure.starts_with(kSubadditivityPrefix) ? TestKind::subadditivity : TestKind::submodularity;
      v.gap = text::to_double(f[4], "gap");
      if (f[5] == "true") {
        v.violated = true;
      } else if (f[5] != "false") {
        throw DomainError("violated must be true or false");
      }
      out.push_back(std::move(v));
    } catch (const DomainError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

}  // namespace submod
