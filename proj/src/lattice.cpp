#include "submod/lattice.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>
#include <vector>

#include "submod/errors.hpp"
#include "submod/rng.hpp"

namespace submod {

GapResult submodularity_gap(const RiskMeasureSpec& spec, const EmpiricalSample& x, const EmpiricalSample& y,
                            double epsilon) {
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");
  const auto [meet, join] = pointwise_meet_join(x, y);
  const double gap = (spec(x) + spec(y)) - (spec(meet) + spec(join));
  return {gap, gap < -epsilon, epsilon};
}

GapResult subadditivity_gap(const RiskMeasureSpec& spec, const EmpiricalSample& x, const EmpiricalSample& y,
                            double epsilon) {
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");
  const EmpiricalSample sum = pointwise_sum(x, y);
  const double gap = (spec(x) + spec(y)) - spec(sum);
  return {gap, gap < -epsilon, epsilon};
}

double violation_rate(std::span<const GapResult> results) {
  if (results.empty()) throw DomainError("violation rate of an empty result list");
  const auto bad = std::ranges::count_if(results, [](const GapResult& r) { return r.violated; });
  return static_cast<double>(bad) / static_cast<double>(results.size());
}

PairGenerator parse_generator(std::string_view name) {
  if (name == "gaussian") return PairGenerator::gaussian;
  if (name == "heavy_tail" || name == "heavy-tail") return PairGenerator::heavy_tail;
  if (name == "two_point" || name == "two-point") return PairGenerator::two_point;
  if (name == "binary") return PairGenerator::binary;
  throw DomainError("unknown generator '" + std::string(name) + "'");
}

std::string to_string(PairGenerator g) {
  switch (g) {
    case PairGenerator::gaussian: return "gaussian";
    case PairGenerator::heavy_tail: return "heavy_tail";
    case PairGenerator::two_point: return "two_point";
    case PairGenerator::binary: return "binary";
  }
  return "unknown";
}

namespace {

std::vector<double> draw(StreamRng& rng, std::size_t n, PairGenerator g) {
  std::vector<double> v(n);
  for (double& e : v) {
    switch (g) {
      case PairGenerator::gaussian: e = rng.normal(); break;
      case PairGenerator::heavy_tail: e = rng.normal() / std::sqrt(rng.uniform_open_zero()); break;
      case PairGenerator::two_point: e = (rng.bernoulli(0.5) ? 1.0 : 0.0) + (rng.bernoulli(0.5) ? 1.0 : 0.0); break;
      case PairGenerator::binary: e = rng.bernoulli(0.5) ? 1.0 : 0.0; break;
    }
  }
  return v;
}

// Rearranges y on a random subset of positions so that it is ordered like x there.
void partially_comonotonize(StreamRng& rng, const std::vector<double>& x, std::vector<double>& y) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (rng.bernoulli(0.5)) idx.push_back(i);
  if (idx.size() < 2) return;
  std::vector<double> vals;
  vals.reserve(idx.size());
  for (std::size_t i : idx) vals.push_back(y[i]);
  std::ranges::sort(vals);
  std::vector<std::size_t> by_x = idx;
  std::ranges::stable_sort(by_x, [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  for (std::size_t r = 0; r < by_x.size(); ++r) y[by_x[r]] = vals[r];
}

struct ChunkResult {
  std::size_t violations = 0;
  double worst_gap = std::numeric_limits<double>::infinity();
  std::size_t worst_trial = 0;
  std::exception_ptr error;
};

void run_chunk(const RiskMeasureSpec& spec, const SweepOptions& options, std::size_t begin, std::size_t end,
               ChunkResult& out) {
  try {
    for (std::size_t t = begin; t < end; ++t) {
      const auto [x, y] = sweep_pair(options, t);
      const GapResult r = submodularity_gap(spec, x, y, options.epsilon);
      if (r.violated) ++out.violations;
      if (r.gap < out.worst_gap) {
        out.worst_gap = r.gap;
        out.worst_trial = t;
      }
    }
  } catch (...) {
    out.error = std::current_exception();
  }
}

}  // namespace

std::pair<EmpiricalSample, EmpiricalSample> sweep_pair(const SweepOptions& options, std::size_t trial) {
  StreamRng rng(options.seed, trial);
  std::vector<double> x = draw(rng, options.n_atoms, options.generator);
  std::vector<double> y = draw(rng, options.n_atoms, options.generator);
  if (rng.bernoulli(options.comonotone_probability)) partially_comonotonize(rng, x, y);
  return {EmpiricalSample(std::move(x)), EmpiricalSample(std::move(y))};
}

SweepReport random_pair_sweep(const RiskMeasureSpec& spec, const SweepOptions& options) {
  if (options.n_atoms < 3) throw DomainError("sweeps need at least 3 atoms");
  if (options.trials < 1) throw DomainError("sweeps need at least one trial");
  if (!(options.epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");

  const std::size_t workers =
      std::clamp<std::size_t>(options.threads == 0 ? 1 : options.threads, 1, options.trials);
  std::vector<ChunkResult> chunks(workers);
  const std::size_t per = options.trials / workers, extra = options.trials % workers;
  std::vector<std::size_t> bounds(workers + 1, 0);
  for (std::size_t w = 0; w < workers; ++w) bounds[w + 1] = bounds[w] + per + (w < extra ? 1 : 0);

  if (workers == 1) {
    run_chunk(spec, options, 0, options.trials, chunks[0]);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] { run_chunk(spec, options, bounds[w], bounds[w + 1], chunks[w]); });
  }

  SweepReport report;
  report.label = spec.label;
  report.generator = options.generator;
  report.n_atoms = options.n_atoms;
  report.trials = options.trials;
  report.seed = options.seed;
  report.epsilon = options.epsilon;
  report.worst_gap = std::numeric_limits<double>::infinity();
  for (const ChunkResult& c : chunks) {
    if (c.error) std::rethrow_exception(c.error);
    report.violations += c.violations;
    // chunks are in trial order, so strict < keeps the earliest worst trial
    if (c.worst_gap < report.worst_gap) {
      report.worst_gap = c.worst_gap;
      report.worst_trial = c.worst_trial;
    }
  }
  report.worst_pair = sweep_pair(options, report.worst_trial);
  return report;
}

}  // namespace submod
