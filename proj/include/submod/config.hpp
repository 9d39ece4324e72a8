#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "submod/lattice.hpp"
#include "submod/rolling.hpp"

namespace submod {

struct AesParameterSet {
  std::vector<double> levels;
  std::vector<double> penalties;
};

/// Run configuration for the empirical pipeline.
///
/// File form is one `key = value` per line, `#` starts a comment:
///
///   window        = 250
///   epsilon       = 1e-8
///   levels        = 0.9, 0.95                 VaR and ES at each level
///   aes_levels    = 0.9,0.98 ; 0.95,0.98      one grid per ';' group
///   aes_penalties = 0,0.01 ; 0,0.02           paired with aes_levels by position
///   tickers       = AAPL, MSFT                empty: every ticker in the file
///   measures      = oce:exp:1 ; mmd:square:es:0.9
///   seed          = 0
///   threads       = 4
///
/// A single aes group on either side is paired with every group on the other.
struct PipelineConfig {
  std::size_t window = 250;
  double epsilon = kDefaultEpsilon;
  std::vector<double> levels{0.9, 0.95};
  std::vector<AesParameterSet> aes = default_aes();
  std::vector<std::string> tickers;
  std::vector<std::string> measures;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  /// q ∈ {0.90, 0.95} crossed with c ∈ {0.01, 0.015, 0.02}, top level 0.98.
  static std::vector<AesParameterSet> default_aes();

  /// VaR and ES per level, then AES grids, then the extra measures.
  std::vector<RiskMeasureSpec> build_measures() const;
  RollingConfig rolling() const;
};

/// Throws ParseError (with line) on unknown or repeated keys and bad values.
PipelineConfig parse_config(std::istream& in);
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace submod
