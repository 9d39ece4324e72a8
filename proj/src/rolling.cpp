#include "submod/rolling.hpp"

#include <algorithm>
#include <exception>
#include <iterator>
#include <numeric>
#include <optional>
#include <thread>

#include "submod/errors.hpp"

namespace submod {

void RollingConfig::validate() const {
  if (window < 2) throw DomainError("window must be at least 2");
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");
}

DatedSeries rolling_eval(const LossPanel& losses, std::string_view ticker, const RollingConfig& config,
                         const RiskMeasureSpec& spec) {
  config.validate();
  const std::size_t j = losses.ticker_index(ticker);
  DatedSeries out;
  out.label = std::string(ticker) + ":" + spec.label;
  if (losses.rows() < config.window) {
    out.warning = "insufficient history for " + std::string(ticker) + ": " + std::to_string(losses.rows()) +
                  " losses, window " + std::to_string(config.window);
    return out;
  }
  for (std::size_t r = config.window - 1; r < losses.rows(); ++r) {
    out.dates.push_back(losses.dates[r]);
    out.values.push_back(spec(losses.window(j, r, config.window)));
  }
  return out;
}

namespace {

struct Chunk {
  std::vector<ViolationRecord> records;
  std::exception_ptr error;
};

void test_rows(const LossPanel& losses, const RollingConfig& config, const std::vector<std::size_t>& order,
               std::size_t row_begin, std::size_t row_end, Chunk& out) {
  try {
    const std::size_t m = config.measures.size();
    const std::size_t k = order.size();
    std::vector<EmpiricalSample> windows;
    std::vector<double> rho(k * m);
    std::vector<std::string> params(m);
    for (std::size_t s = 0; s < m; ++s) params[s] = config.measures[s].params();

    for (std::size_t r = row_begin; r < row_end; ++r) {
      windows.clear();
      for (std::size_t a = 0; a < k; ++a) {
        windows.push_back(losses.window(order[a], r, config.window));
        for (std::size_t s = 0; s < m; ++s) rho[a * m + s] = config.measures[s](windows.back());
      }
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
          const EmpiricalSample& x = windows[a];
          const EmpiricalSample& y = windows[b];
          const auto [meet, join] = pointwise_meet_join(x, y);
          if (config.verify_lattice_identity) {
            for (std::size_t i = 0; i < x.size(); ++i)
              if (meet[i] + join[i] != x[i] + y[i]) throw NumericError("meet + join != x + y in a tested window");
          }
          std::optional<EmpiricalSample> sum;
          for (std::size_t s = 0; s < m; ++s) {
            const RiskMeasureSpec& spec = config.measures[s];
            const double rx = rho[a * m + s], ry = rho[b * m + s];
            ViolationRecord rec{losses.dates[r], losses.tickers[order[a]], losses.tickers[order[b]], spec.label,
                                params[s], TestKind::submodularity, 0.0, false};
            rec.gap = (rx + ry) - (spec(meet) + spec(join));
            rec.violated = rec.gap < -config.epsilon;
            out.records.push_back(rec);
            if (config.var_subadditivity && spec.is_var()) {
              if (!sum) sum = pointwise_sum(x, y);
              rec.measure = std::string(kSubadditivityPrefix) + spec.label;
              rec.test = TestKind::subadditivity;
              rec.gap = (rx + ry) - spec(*sum);
              rec.violated = rec.gap < -config.epsilon;
              out.records.push_back(std::move(rec));
            }
          }
        }
      }
    }
  } catch (...) {
    out.error = std::current_exception();
  }
}

}  // namespace

std::vector<ViolationRecord> pairwise_day_tests(const LossPanel& losses, const RollingConfig& config) {
  config.validate();
  if (losses.cols() < 2) throw DomainError("pairwise tests need at least two tickers");
  if (config.measures.empty()) throw DomainError("no measures configured");
  if (losses.rows() < config.window) return {};

  std::vector<std::size_t> order(losses.cols());
  std::iota(order.begin(), order.end(), 0);
  std::ranges::sort(order, [&](std::size_t a, std::size_t b) { return losses.tickers[a] < losses.tickers[b]; });

  const std::size_t first = config.window - 1, n_rows = losses.rows() - first;
  const std::size_t workers = std::clamp<std::size_t>(config.threads == 0 ? 1 : config.threads, 1, n_rows);
  std::vector<Chunk> chunks(workers);
  std::vector<std::size_t> bounds(workers + 1, first);
  for (std::size_t w = 0; w < workers; ++w)
    bounds[w + 1] = bounds[w] + n_rows / workers + (w < n_rows % workers ? 1 : 0);

  if (workers == 1) {
    test_rows(losses, config, order, bounds[0], bounds[1], chunks[0]);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] { test_rows(losses, config, order, bounds[w], bounds[w + 1], chunks[w]); });
  }

  std::vector<ViolationRecord> records;
  for (Chunk& c : chunks) {
    if (c.error) std::rethrow_exception(c.error);
    std::ranges::move(c.records, std::back_inserter(records));
  }
  std::ranges::stable_sort(records, [](const ViolationRecord& a, const ViolationRecord& b) {
    if (a.date != b.date) return a.date < b.date;
    if (a.ticker_a != b.ticker_a) return a.ticker_a < b.ticker_a;
    if (a.ticker_b != b.ticker_b) return a.ticker_b < b.ticker_b;
    return a.measure < b.measure;
  });
  return records;
}

DailyViolationSeries daily_violation_rate(std::span<const ViolationRecord> records, std::string_view measure) {
  DailyViolationSeries out;
  out.measure = std::string(measure);
  for (const ViolationRecord& r : records) {
    if (r.measure != measure) continue;
    if (out.dates.empty() || out.dates.back() != r.date) {
      if (!out.dates.empty() && r.date < out.dates.back())
        throw DomainError("records are not sorted by date");
      out.dates.push_back(r.date);
      out.violations.push_back(0);
      out.tests.push_back(0);
    }
    ++out.tests.back();
    if (r.violated) ++out.violations.back();
  }
  if (out.dates.empty()) throw DomainError("no records for measure '" + std::string(measure) + "'");
  out.rate.resize(out.dates.size());
  for (std::size_t i = 0; i < out.dates.size(); ++i)
    out.rate[i] = static_cast<double>(out.violations[i]) / static_cast<double>(out.tests[i]);
  return out;
}

std::vector<std::string> measure_labels(std::span<const ViolationRecord> records) {
  std::vector<std::string> out;
  for (const ViolationRecord& r : records) out.push_back(r.measure);
  std::ranges::sort(out);
  const auto [first, last] = std::ranges::unique(out);
  out.erase(first, last);
  return out;
}

}  // namespace submod
