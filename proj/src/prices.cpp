#include "submod/prices.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>

#include "submod/errors.hpp"
#include "submod/functions.hpp"
#include "submod/rng.hpp"
#include "text.hpp"

namespace submod {

Date parse_date(std::string_view s) {
  s = text::trim(s);
  const auto bad = [&] { return DomainError("malformed date '" + std::string(s) + "'"); };
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') throw bad();
  const auto num = [&](std::size_t pos, std::size_t len) {
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, v);
    if (ec != std::errc() || p != s.data() + pos + len) throw bad();
    return v;
  };
  const Date d{std::chrono::year(num(0, 4)), std::chrono::month(static_cast<unsigned>(num(5, 2))),
               std::chrono::day(static_cast<unsigned>(num(8, 2)))};
  if (!d.ok()) throw bad();
  return d;
}

std::string format_date(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                static_cast<unsigned>(d.day()));
  return buf;
}

std::size_t PricePanel::ticker_index(std::string_view ticker) const {
  const auto it = std::ranges::lower_bound(tickers, ticker);
  if (it == tickers.end() || *it != ticker) throw DomainError("unknown ticker '" + std::string(ticker) + "'");
  return static_cast<std::size_t>(it - tickers.begin());
}

PricePanel parse_prices_csv(std::istream& in) {
  std::map<std::pair<Date, std::string>, double> cells;
  std::size_t duplicates = 0;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = line;
    if (line_no == 1 && row.starts_with("\xEF\xBB\xBF")) row.remove_prefix(3);
    if (text::trim(row).empty()) continue;
    const auto fields = text::split(row, ',');
    if (!header_seen) {
      if (fields.size() != 3 || text::trim(fields[0]) != "date" || text::trim(fields[1]) != "ticker" ||
          text::trim(fields[2]) != "adj_close")
        throw ParseError("expected header 'date,ticker,adj_close'", line_no);
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) throw ParseError("expected 3 fields, got " + std::to_string(fields.size()), line_no);
    Date d;
    double price = 0.0;
    try {
      d = parse_date(fields[0]);
      price = text::to_double(fields[2], "adj_close");
    } catch (const DomainError& e) {
      throw ParseError(e.what(), line_no);
    }
    const std::string ticker(text::trim(fields[1]));
    if (ticker.empty()) throw ParseError("empty ticker", line_no);
    if (!std::isfinite(price) || price <= 0.0)
      throw ParseError("adj_close must be positive, got " + std::string(text::trim(fields[2])), line_no);
    auto [it, inserted] = cells.insert_or_assign({d, ticker}, price);
    if (!inserted) ++duplicates;
  }
  if (!header_seen) throw NoDataError("no data: empty price file");
  if (cells.empty()) throw NoDataError("no data: price file has a header but no rows");

  PricePanel panel;
  panel.duplicate_rows = duplicates;
  for (const auto& [key, _] : cells) {
    if (panel.dates.empty() || panel.dates.back() != key.first) panel.dates.push_back(key.first);
    panel.tickers.push_back(key.second);
  }
  std::ranges::sort(panel.tickers);
  const auto [first, last] = std::ranges::unique(panel.tickers);
  panel.tickers.erase(first, last);
  panel.closes.assign(panel.dates.size() * panel.tickers.size(), std::nullopt);
  std::size_t d = 0;
  for (const auto& [key, price] : cells) {
    while (panel.dates[d] != key.first) ++d;
    panel.closes[d * panel.tickers.size() + panel.ticker_index(key.second)] = price;
  }
  return panel;
}

PricePanel load_prices_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open price file '" + path.string() + "'");
  return parse_prices_csv(in);
}

void write_prices_csv(const PricePanel& panel, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write price file '" + path.string() + "'");
  out << "date,ticker,adj_close\n";
  for (std::size_t d = 0; d < panel.n_dates(); ++d) {
    const std::string date = format_date(panel.dates[d]);
    for (std::size_t t = 0; t < panel.n_tickers(); ++t)
      if (const auto& p = panel.at(d, t)) out << date << ',' << panel.tickers[t] << ',' << format_number(*p) << '\n';
  }
}

PricePanel synth_prices(std::uint64_t seed, std::size_t n_days, std::size_t n_assets, double vol, double jump_prob) {
  if (n_days < 1) throw DomainError("synth_prices needs at least one day");
  if (n_assets < 1) throw DomainError("synth_prices needs at least one asset");
  if (!(vol >= 0.0) || !std::isfinite(vol)) throw DomainError("vol must be finite and nonnegative");
  if (!(jump_prob >= 0.0 && jump_prob <= 1.0)) throw DomainError("jump_prob must lie in [0, 1]");

  PricePanel panel;
  const std::size_t width = std::max<std::size_t>(2, std::to_string(n_assets).size());
  for (std::size_t a = 0; a < n_assets; ++a) {
    const std::string digits = std::to_string(a + 1);
    panel.tickers.push_back("A" + std::string(width - digits.size(), '0') + digits);
  }

  using std::chrono::sys_days;
  using std::chrono::weekday;
  sys_days day = sys_days{Date{std::chrono::year{2018}, std::chrono::January, std::chrono::day{2}}};
  while (panel.dates.size() < n_days) {
    const weekday wd{day};
    if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) panel.dates.emplace_back(day);
    day += std::chrono::days{1};
  }

  // loading 0.6 on the market factor, 0.8 idiosyncratic: unit variance, pairwise correlation 0.36
  std::vector<double> log_price(n_assets, 0.0);
  panel.closes.reserve(n_days * n_assets);
  for (std::size_t d = 0; d < n_days; ++d) {
    if (d > 0) {
      StreamRng rng(seed, d);
      const double market = rng.normal();
      const bool jump = rng.bernoulli(jump_prob);
      const double jump_size = jump ? 3.0 + std::abs(rng.normal()) : 0.0;
      for (std::size_t a = 0; a < n_assets; ++a) {
        double r = vol * (0.6 * market + 0.8 * rng.normal());
        if (jump) r -= vol * jump_size * (0.5 + rng.uniform());
        log_price[a] += r;
      }
    }
    for (std::size_t a = 0; a < n_assets; ++a) panel.closes.emplace_back(100.0 * std::exp(log_price[a]));
  }
  return panel;
}

}  // namespace submod
