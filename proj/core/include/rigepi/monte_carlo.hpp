#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rigepi/params.hpp"

namespace rigepi {

struct McConfig {
  GraphParams params;
  double p = 0.0;
  std::uint64_t trials = 1;
  bool regenerate_graph = true;    // fresh graph per trial; false = one shared graph
  double threshold_exponent = 2.0 / 3.0;
  std::uint64_t master_seed = 0;
  std::optional<std::uint32_t> pinned_index{};  // default: uniform index case per trial
};

struct TrialRecord {
  std::uint64_t trial_index = 0;
  std::uint64_t seed = 0;
  std::uint64_t final_size = 0;
  std::uint64_t num_generations = 0;
  bool is_large = false;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct McSummary {
  std::uint64_t trials = 0;
  std::uint64_t threshold = 0;
  std::uint64_t large_count = 0;
  double fraction_large = 0.0;
  double stderr_fraction = 0.0;     // sqrt(f (1 - f) / trials)
  double mean_small_final_size = 0.0;
  double mean_large_relative_size = 0.0;  // final_size / n over large outbreaks

  friend bool operator==(const McSummary&, const McSummary&) = default;
};

struct McResult {
  std::vector<TrialRecord> records;
  McSummary summary;
};

// max(10, ceil(n^exponent)).
std::uint64_t large_outbreak_threshold(std::int64_t n, double exponent = 2.0 / 3.0);

/// Runs cfg.trials independent trials on up to `threads` workers. Trial t is
/// seeded by derive_seed(master_seed, t); results do not depend on `threads`.
McResult monte_carlo(const McConfig& cfg, unsigned threads = 1);

// Summary statistics of a finished record set.
McSummary summarize(const std::vector<TrialRecord>& records, std::int64_t n,
                    std::uint64_t threshold);

}  // namespace rigepi
