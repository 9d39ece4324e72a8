#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "submod/prices.hpp"
#include "submod/sample.hpp"

namespace submod {

/// Daily losses L_t = −(ln P_t − ln P_{t−1}) on the dates where every
/// selected ticker has a price. Row r is dated at the later of the two closes.
struct LossPanel {
  std::vector<Date> dates;
  std::vector<std::string> tickers;
  std::vector<double> losses;  // row-major: losses[r * tickers.size() + j]

  std::size_t rows() const noexcept { return dates.size(); }
  std::size_t cols() const noexcept { return tickers.size(); }
  double at(std::size_t r, std::size_t j) const { return losses[r * tickers.size() + j]; }
  std::size_t ticker_index(std::string_view ticker) const;
  std::vector<double> column(std::size_t j) const;
  /// The `window` losses of ticker j ending at row `end_row` inclusive.
  EmpiricalSample window(std::size_t j, std::size_t end_row, std::size_t window) const;
};

/// Empty `tickers` selects every ticker in the panel. Throws DomainError for
/// an unknown ticker or fewer than two complete-case dates.
LossPanel build_loss_panel(const PricePanel& prices, std::span<const std::string> tickers = {});

}  // namespace submod
