#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rigepi/theory.hpp"

namespace rigepi {

struct SweepRow {
  double c = 0.0;
  double p = 0.0;
  double mu = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double r_nought = 0.0;  // NaN when capacity_exceeded
  double pi = 0.0;        // NaN when capacity_exceeded
  int truncation_k = 0;   // required K; exceeds the cap when capacity_exceeded
  bool near_critical = false;
  bool capacity_exceeded = false;
};

/// 17 log-spaced points on [1e-3, 1e-1] (eight per decade) followed by
/// 0.125, 0.15, ..., 0.9 and 0.99: 50 points.
std::vector<double> default_c_grid();

/// One row per (p, c), p-major in input order. Deterministic.
std::vector<SweepRow> sweep_figure1(double mu, const std::vector<double>& p_list,
                                    const std::vector<double>& c_grid,
                                    const TruncationOptions& options = {},
                                    unsigned threads = 1);

struct ThresholdCrossing {
  double p = 0.0;
  std::optional<double> c;  // R0(c) = 1 located by bisection, if bracketed on the grid
};

/// For each p series in `rows`, brackets R0 = 1 between adjacent grid points
/// and bisects on c. Series without a sign change report no crossing.
std::vector<ThresholdCrossing> locate_thresholds(const std::vector<SweepRow>& rows,
                                                 const TruncationOptions& options = {});

void write_figure1_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_thresholds_csv(std::ostream& out, const std::vector<ThresholdCrossing>& rows);

struct ValidationPoint {
  double c = 0.0;
  double mu = 0.0;
  double p = 0.0;
};

struct ValidationRow {
  ValidationPoint point;
  std::int64_t n = 0;
  std::uint64_t trials = 0;
  double pi_theory = 0.0;
  double pi_hat = 0.0;
  double stderr_pi = 0.0;  // sqrt(pi_theory (1 - pi_theory) / trials)
  double z = 0.0;          // (pi_hat - pi_theory) / stderr_pi; 0 when both vanish
  std::uint64_t threshold = 0;
};

/// Monte Carlo large-outbreak fraction against theory for each point.
/// Point i uses master seed derive_seed(master_seed, i).
std::vector<ValidationRow> mc_validation(const std::vector<ValidationPoint>& points,
                                         std::int64_t n, std::uint64_t trials,
                                         std::uint64_t master_seed, unsigned threads = 1);

void write_validation_csv(std::ostream& out, const std::vector<ValidationRow>& rows);

struct CensusRecord {
  std::int64_t n = 0;
  double beta = 0.0;
  double gamma = 0.0;
  double p = 1.0;  // 1 for the unthinned graph
  std::uint64_t replicate = 0;
  std::uint64_t k4 = 0;
  std::uint64_t k4_prime = 0;
};

struct CensusSummaryRow {
  std::int64_t n = 0;
  double mean_k4_unthinned = 0.0;
  double mean_k4_prime_unthinned = 0.0;
  double mean_k4_thinned = 0.0;
  double mean_k4_prime_thinned = 0.0;
};

struct CensusScaling {
  std::vector<CensusRecord> records;  // per n, per replicate: unthinned then thinned
  std::vector<CensusSummaryRow> summary;
};

/// Replicate-averaged vertex-induced K4 / K4' counts of sampled graphs and of
/// their p-thinnings for each n. Requires n_list ascending with n <= 2 * 10^4.
CensusScaling census_scaling(double beta, double gamma, double p,
                             const std::vector<std::int64_t>& n_list,
                             std::uint64_t replicates, std::uint64_t master_seed,
                             unsigned threads = 1);

void write_census_csv(std::ostream& out, const std::vector<CensusRecord>& rows);
void write_census_summary_csv(std::ostream& out, const std::vector<CensusSummaryRow>& rows);

}  // namespace rigepi
