#include "submod/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "submod/errors.hpp"

namespace submod {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("correlation inputs differ in length");
  if (a.size() < 3) throw DomainError("correlation needs at least 3 points");
}

double mean(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

// Double-centred distance matrix, row-major.
std::vector<double> centred_distances(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<double> d(n * n);
  std::vector<double> row(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i * n + j] = std::abs(v[i] - v[j]);
      row[i] += d[i * n + j];
    }
    total += row[i];
  }
  const double nn = static_cast<double>(n);
  for (double& r : row) r /= nn;
  total /= nn * nn;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] += total - row[i] - row[j];
  return d;
}

}  // namespace

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::ranges::stable_sort(idx, [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double spearman(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  const auto ra = average_ranks(a), rb = average_ranks(b);
  return pearson(ra, rb);
}

double distance_correlation(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  const auto A = centred_distances(a), B = centred_distances(b);
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    ab += A[i] * B[i];
    aa += A[i] * A[i];
    bb += B[i] * B[i];
  }
  if (aa <= 0.0 || bb <= 0.0) return 0.0;
  // dCor² = dCov²/sqrt(dVar²_a dVar²_b); the 1/n² factors cancel
  const double r2 = ab / std::sqrt(aa * bb);
  return std::sqrt(std::clamp(r2, 0.0, 1.0));
}

CorrelationResult correlations(std::span<const double> a, std::span<const double> b) {
  check_lengths(a, b);
  CorrelationResult out;
  out.n = a.size();
  const auto constant = [](std::span<const double> v) {
    return std::ranges::all_of(v, [&](double e) { return e == v.front(); });
  };
  out.degenerate = constant(a) || constant(b);
  if (!out.degenerate) {
    out.pearson = pearson(a, b);
    out.spearman = spearman(a, b);
  }
  out.dcor = distance_correlation(a, b);
  return out;
}

CorrelationResult correlations(const DatedSeries& a, const DatedSeries& b) {
  if (a.dates.size() != a.values.size() || b.dates.size() != b.values.size())
    throw DimensionError("series dates and values differ in length");
  std::vector<double> xa, xb;
  std::size_t i = 0, j = 0;
  while (i < a.dates.size() && j < b.dates.size()) {
    if (a.dates[i] < b.dates[j]) {
      ++i;
    } else if (b.dates[j] < a.dates[i]) {
      ++j;
    } else {
      xa.push_back(a.values[i++]);
      xb.push_back(b.values[j++]);
    }
  }
  if (xa.size() < 3)
    throw DomainError("correlation needs at least 3 common dates, found " + std::to_string(xa.size()));
  return correlations(xa, xb);
}

}  // namespace submod
