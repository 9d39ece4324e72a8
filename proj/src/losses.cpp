#include "submod/losses.hpp"

#include <algorithm>
#include <cmath>

#include "submod/errors.hpp"

namespace submod {

std::size_t LossPanel::ticker_index(std::string_view ticker) const {
  const auto it = std::ranges::find(tickers, ticker);
  if (it == tickers.end()) throw DomainError("unknown ticker '" + std::string(ticker) + "'");
  return static_cast<std::size_t>(it - tickers.begin());
}

std::vector<double> LossPanel::column(std::size_t j) const {
  if (j >= cols()) throw DomainError("column index out of range");
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, j);
  return out;
}

EmpiricalSample LossPanel::window(std::size_t j, std::size_t end_row, std::size_t w) const {
  if (j >= cols() || end_row >= rows()) throw DomainError("window index out of range");
  if (w == 0 || w > end_row + 1) throw DomainError("window does not fit before the end row");
  std::vector<double> out(w);
  for (std::size_t k = 0; k < w; ++k) out[k] = at(end_row + 1 - w + k, j);
  return EmpiricalSample(std::move(out));
}

LossPanel build_loss_panel(const PricePanel& prices, std::span<const std::string> tickers) {
  std::vector<std::size_t> cols;
  LossPanel out;
  if (tickers.empty()) {
    out.tickers = prices.tickers;
    for (std::size_t t = 0; t < prices.n_tickers(); ++t) cols.push_back(t);
  } else {
    for (const std::string& t : tickers) {
      if (std::ranges::find(out.tickers, t) != out.tickers.end()) continue;
      cols.push_back(prices.ticker_index(t));
      out.tickers.push_back(t);
    }
  }
  if (cols.empty()) throw DomainError("no tickers selected");

  std::vector<std::size_t> complete;
  for (std::size_t d = 0; d < prices.n_dates(); ++d)
    if (std::ranges::all_of(cols, [&](std::size_t c) { return prices.at(d, c).has_value(); })) complete.push_back(d);
  if (complete.size() < 2)
    throw DomainError("need at least two dates with prices for every selected ticker, found " +
                      std::to_string(complete.size()));

  out.dates.reserve(complete.size() - 1);
  out.losses.reserve((complete.size() - 1) * cols.size());
  for (std::size_t k = 1; k < complete.size(); ++k) {
    out.dates.push_back(prices.dates[complete[k]]);
    for (std::size_t c : cols)
      out.losses.push_back(-(std::log(*prices.at(complete[k], c)) - std::log(*prices.at(complete[k - 1], c))));
  }
  return out;
}

}  // namespace submod
