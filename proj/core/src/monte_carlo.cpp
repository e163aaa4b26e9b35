#include "rigepi/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rigepi/epidemic.hpp"
#include "rigepi/error.hpp"
#include "rigepi/graph.hpp"
#include "rigepi/parallel.hpp"
#include "rigepi/rng.hpp"

namespace rigepi {

namespace {

constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kCoinStream = 2;
constexpr std::uint64_t kSharedGraphStream = ~std::uint64_t{0};

}  // namespace

std::uint64_t large_outbreak_threshold(std::int64_t n, double exponent) {
  const double scaled = std::ceil(std::pow(static_cast<double>(n), exponent) - 1e-9);
  return std::max<std::uint64_t>(10, static_cast<std::uint64_t>(scaled));
}

McSummary summarize(const std::vector<TrialRecord>& records, std::int64_t n,
                    std::uint64_t threshold) {
  McSummary s;
  s.trials = records.size();
  s.threshold = threshold;
  double small_total = 0.0;
  double large_relative = 0.0;
  for (const auto& r : records) {
    if (r.is_large) {
      ++s.large_count;
      large_relative += static_cast<double>(r.final_size) / static_cast<double>(n);
    } else {
      small_total += static_cast<double>(r.final_size);
    }
  }
  if (s.trials == 0) return s;
  const double t = static_cast<double>(s.trials);
  s.fraction_large = static_cast<double>(s.large_count) / t;
  s.stderr_fraction = std::sqrt(s.fraction_large * (1.0 - s.fraction_large) / t);
  const std::uint64_t small_count = s.trials - s.large_count;
  if (small_count > 0) s.mean_small_final_size = small_total / static_cast<double>(small_count);
  if (s.large_count > 0) s.mean_large_relative_size = large_relative / static_cast<double>(s.large_count);
  return s;
}

McResult monte_carlo(const McConfig& cfg, unsigned threads) {
  check_probability(cfg.p);
  if (cfg.trials < 1) throw DomainError("trials must be at least 1");
  if (!(cfg.threshold_exponent > 0.0 && cfg.threshold_exponent <= 1.0)) {
    throw DomainError("threshold exponent must lie in (0, 1]");
  }
  const auto n = cfg.params.n();
  if (cfg.pinned_index && *cfg.pinned_index >= n) throw DomainError("pinned index out of range");
  const std::uint64_t threshold = large_outbreak_threshold(n, cfg.threshold_exponent);

  IntersectionGraph shared;
  if (!cfg.regenerate_graph) {
    shared = sample_intersection_graph(cfg.params, derive_seed(cfg.master_seed, kSharedGraphStream));
  }

  McResult result;
  result.records.resize(cfg.trials);
  parallel_for(cfg.trials, threads, [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(cfg.master_seed, t);
    Rng rng(seed);
    const Vertex index = cfg.pinned_index
                             ? *cfg.pinned_index
                             : static_cast<Vertex>(std::uniform_int_distribution<std::int64_t>(
                                   0, n - 1)(rng));
    IntersectionGraph fresh;
    if (cfg.regenerate_graph) fresh = sample_intersection_graph(cfg.params, derive_seed(seed, kGraphStream));
    const IntersectionGraph& g = cfg.regenerate_graph ? fresh : shared;
    const auto outcome = reed_frost_run(g, cfg.p, index, derive_seed(seed, kCoinStream), false);

    TrialRecord& r = result.records[t];
    r.trial_index = t;
    r.seed = seed;
    r.final_size = outcome.final_size;
    r.num_generations = outcome.generations.size();
    r.is_large = outcome.final_size >= threshold;
  });
  result.summary = summarize(result.records, n, threshold);
  return result;
}

}  // namespace rigepi
