#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace submod {

using Date = std::chrono::year_month_day;

/// Parses YYYY-MM-DD. Throws DomainError on malformed or impossible dates.
Date parse_date(std::string_view text);
std::string format_date(Date d);

/// Adjusted closing prices, dates × tickers, with explicit missing cells.
struct PricePanel {
  std::vector<Date> dates;           // strictly increasing
  std::vector<std::string> tickers;  // sorted
  std::vector<std::optional<double>> closes;  // row-major: closes[d * tickers.size() + t]
  std::size_t duplicate_rows = 0;    // (date, ticker) repeats resolved last-wins

  std::size_t n_dates() const noexcept { return dates.size(); }
  std::size_t n_tickers() const noexcept { return tickers.size(); }
  const std::optional<double>& at(std::size_t d, std::size_t t) const { return closes[d * tickers.size() + t]; }
  /// Column index of a ticker; throws DomainError when absent.
  std::size_t ticker_index(std::string_view ticker) const;
};

/// Reads a `date,ticker,adj_close` CSV. Throws ParseError with the line number
/// on malformed rows or nonpositive prices, NoDataError when there are no rows.
PricePanel load_prices_csv(const std::filesystem::path& path);
PricePanel parse_prices_csv(std::istream& in);

/// Writes the long-format CSV that load_prices_csv reads (missing cells omitted).
void write_prices_csv(const PricePanel& panel, const std::filesystem::path& path);

/// Geometric random walk from 100.0 with a common factor and occasional
/// common downward jumps. Dates are weekdays from 2018-01-02.
PricePanel synth_prices(std::uint64_t seed, std::size_t n_days, std::size_t n_assets, double vol,
                        double jump_prob);

}  // namespace submod
