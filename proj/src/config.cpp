#include "submod/config.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include "submod/errors.hpp"
#include "text.hpp"

namespace submod {

std::vector<AesParameterSet> PipelineConfig::default_aes() {
  std::vector<AesParameterSet> out;
  for (double q : {0.90, 0.95})
    for (double c : {0.01, 0.015, 0.02}) out.push_back({{q, 0.98}, {0.0, c}});
  return out;
}

std::vector<RiskMeasureSpec> PipelineConfig::build_measures() const {
  std::vector<RiskMeasureSpec> out;
  for (double p : levels) {
    out.push_back(make_var(p));
    out.push_back(make_es(p));
  }
  for (const AesParameterSet& a : aes) out.push_back(make_aes(AdjustmentGrid(a.levels, a.penalties)));
  for (const std::string& m : measures) out.push_back(RiskMeasureSpec::parse(m));
  return out;
}

RollingConfig PipelineConfig::rolling() const {
  RollingConfig rc;
  rc.window = window;
  rc.epsilon = epsilon;
  rc.threads = threads;
  rc.measures = build_measures();
  rc.validate();
  return rc;
}

namespace {

template <class T>
T to_unsigned(std::string_view s, std::string_view key) {
  s = text::trim(s);
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw DomainError("'" + std::string(key) + "' needs a nonnegative integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<std::vector<double>> groups(std::string_view s, std::string_view key) {
  std::vector<std::vector<double>> out;
  for (auto g : text::split(s, ';')) {
    if (text::trim(g).empty()) continue;
    out.push_back(text::to_doubles(g, ',', key));
  }
  return out;
}

}  // namespace

PipelineConfig parse_config(std::istream& in) {
  PipelineConfig cfg;
  std::vector<std::vector<double>> aes_levels, aes_penalties;
  bool aes_seen = false;
  std::size_t aes_line = 0;
  std::set<std::string, std::less<>> seen;
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = line;
    if (const auto hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
    row = text::trim(row);
    if (row.empty()) continue;
    const auto eq = row.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key(text::trim(row.substr(0, eq)));
    const std::string_view value = text::trim(row.substr(eq + 1));
    if (!seen.insert(key).second) throw ParseError("repeated key '" + key + "'", line_no);
    try {
      if (key == "window") {
        cfg.window = to_unsigned<std::size_t>(value, key);
      } else if (key == "epsilon") {
        cfg.epsilon = text::to_double(value, key);
      } else if (key == "levels") {
        cfg.levels = text::to_doubles(value, ',', key);
      } else if (key == "aes_levels") {
        aes_levels = groups(value, key);
        aes_seen = true;
        aes_line = line_no;
      } else if (key == "aes_penalties") {
        aes_penalties = groups(value, key);
        aes_seen = true;
        aes_line = line_no;
      } else if (key == "tickers") {
        cfg.tickers.clear();
        for (auto t : text::split(value, ','))
          if (!text::trim(t).empty()) cfg.tickers.emplace_back(text::trim(t));
      } else if (key == "measures") {
        cfg.measures.clear();
        for (auto m : text::split(value, ';')) {
          if (text::trim(m).empty()) continue;
          RiskMeasureSpec::parse(text::trim(m));  // reject bad specs here, with the line number
          cfg.measures.emplace_back(text::trim(m));
        }
      } else if (key == "seed") {
        cfg.seed = to_unsigned<std::uint64_t>(value, key);
      } else if (key == "threads") {
        cfg.threads = to_unsigned<unsigned>(value, key);
      } else {
        throw ParseError("unknown key '" + key + "'", line_no);
      }
    } catch (const DomainError& e) {
      throw ParseError(e.what(), line_no);
    }
  }

  if (aes_seen) {
    if (aes_levels.empty() != aes_penalties.empty())
      throw ParseError("aes_levels and aes_penalties must be given together", aes_line);
    const std::size_t nl = aes_levels.size(), np = aes_penalties.size();
    if (nl != np && nl != 1 && np != 1)
      throw ParseError("aes_levels has " + std::to_string(nl) + " groups but aes_penalties has " +
                           std::to_string(np),
                       aes_line);
    cfg.aes.clear();
    for (std::size_t i = 0; i < std::max(nl, np); ++i)
      cfg.aes.push_back({aes_levels[nl == 1 ? 0 : i], aes_penalties[np == 1 ? 0 : i]});
  }
  try {
    cfg.rolling();
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path.string() + "'");
  return parse_config(in);
}

}  // namespace submod
