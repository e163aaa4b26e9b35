#include "rigepi/experiments.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "rigepi/error.hpp"
#include "rigepi/format.hpp"
#include "rigepi/graph.hpp"
#include "rigepi/monte_carlo.hpp"
#include "rigepi/motifs.hpp"
#include "rigepi/parallel.hpp"
#include "rigepi/params.hpp"
#include "rigepi/rng.hpp"

namespace rigepi {

std::vector<double> default_c_grid() {
  std::vector<double> grid;
  grid.reserve(50);
  for (int i = 0; i <= 16; ++i) grid.push_back(std::pow(10.0, (i - 24) / 8.0));
  for (int k = 1; k <= 32; ++k) grid.push_back((100.0 + 25.0 * k) / 1000.0);
  grid.push_back(0.99);
  return grid;
}

namespace {

SweepRow solve_row(double mu, double p, double c, const TruncationOptions& options) {
  const ModelShape shape = solve_params(c, mu);
  SweepRow row{c, p, mu, shape.beta, shape.gamma};
  try {
    SolverOptions solver;
    solver.truncation = options;
    const TheorySolution sol = extinction_prob(shape.beta, shape.gamma, p, solver);
    row.r_nought = sol.r_nought;
    row.pi = sol.pi;
    row.truncation_k = sol.truncation_k;
    row.near_critical = sol.near_critical;
  } catch (const CapacityError&) {
    row.capacity_exceeded = true;
    row.r_nought = std::numeric_limits<double>::quiet_NaN();
    row.pi = std::numeric_limits<double>::quiet_NaN();
    row.truncation_k = poisson_truncation(shape.gamma, options.epsilon);
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_figure1(double mu, const std::vector<double>& p_list,
                                    const std::vector<double>& c_grid,
                                    const TruncationOptions& options, unsigned threads) {
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  for (double p : p_list) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("sweep p values must lie in (0, 1]");
  }
  for (double c : c_grid) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("sweep c values must lie in (0, 1)");
  }
  std::vector<SweepRow> rows(p_list.size() * c_grid.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    rows[i] = solve_row(mu, p_list[i / c_grid.size()], c_grid[i % c_grid.size()], options);
  });
  return rows;
}

std::vector<ThresholdCrossing> locate_thresholds(const std::vector<SweepRow>& rows,
                                                 const TruncationOptions& options) {
  std::vector<ThresholdCrossing> out;
  std::size_t begin = 0;
  while (begin < rows.size()) {
    std::size_t end = begin;
    while (end < rows.size() && rows[end].p == rows[begin].p) ++end;
    ThresholdCrossing crossing{rows[begin].p, std::nullopt};
    for (std::size_t i = begin; i + 1 < end && !crossing.c; ++i) {
      const SweepRow& a = rows[i];
      const SweepRow& b = rows[i + 1];
      if (a.capacity_exceeded || b.capacity_exceeded) continue;
      if ((a.r_nought - 1.0) * (b.r_nought - 1.0) > 0.0) continue;
      double lo = a.c;
      double hi = b.c;
      const bool rising = a.r_nought < b.r_nought;
      for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const ModelShape shape = solve_params(mid, a.mu);
        const double r0 = r_nought(shape.beta, shape.gamma, a.p, options);
        if ((r0 < 1.0) == rising) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      crossing.c = 0.5 * (lo + hi);
    }
    out.push_back(crossing);
    begin = end;
  }
  return out;
}

void write_figure1_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "c,p,mu,beta,gamma,R0,pi,K,near_critical\n";
  for (const auto& r : rows) {
    out << format_real(r.c) << ',' << format_real(r.p) << ',' << format_real(r.mu) << ','
        << format_real(r.beta) << ',' << format_real(r.gamma) << ',' << format_real(r.r_nought)
        << ',' << format_real(r.pi) << ',' << r.truncation_k << ',' << (r.near_critical ? 1 : 0)
        << '\n';
  }
}

void write_thresholds_csv(std::ostream& out, const std::vector<ThresholdCrossing>& rows) {
  out << "p,c_threshold\n";
  for (const auto& r : rows) {
    out << format_real(r.p) << ','
        << format_real(r.c ? *r.c : std::numeric_limits<double>::quiet_NaN()) << '\n';
  }
}

std::vector<ValidationRow> mc_validation(const std::vector<ValidationPoint>& points,
                                         std::int64_t n, std::uint64_t trials,
                                         std::uint64_t master_seed, unsigned threads) {
  std::vector<ValidationRow> rows;
  rows.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const ValidationPoint& pt = points[i];
    const ModelShape shape = solve_params(pt.c, pt.mu);
    const GraphParams params = GraphParams::make(n, shape.beta, shape.gamma);
    const TheorySolution theory = extinction_prob(shape.beta, shape.gamma, pt.p);

    McConfig cfg{.params = params};
    cfg.p = pt.p;
    cfg.trials = trials;
    cfg.master_seed = derive_seed(master_seed, i);
    const McResult mc = monte_carlo(cfg, threads);

    ValidationRow row;
    row.point = pt;
    row.n = n;
    row.trials = trials;
    row.pi_theory = theory.pi;
    row.pi_hat = mc.summary.fraction_large;
    row.threshold = mc.summary.threshold;
    row.stderr_pi = std::sqrt(theory.pi * (1.0 - theory.pi) / static_cast<double>(trials));
    const double diff = row.pi_hat - row.pi_theory;
    if (row.stderr_pi > 0.0) {
      row.z = diff / row.stderr_pi;
    } else if (diff != 0.0) {
      row.z = std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_validation_csv(std::ostream& out, const std::vector<ValidationRow>& rows) {
  out << "c,mu,p,n,trials,pi_theory,pi_hat,stderr,z\n";
  for (const auto& r : rows) {
    out << format_real(r.point.c) << ',' << format_real(r.point.mu) << ',' << format_real(r.point.p)
        << ',' << r.n << ',' << r.trials << ',' << format_real(r.pi_theory) << ','
        << format_real(r.pi_hat) << ',' << format_real(r.stderr_pi) << ',' << format_real(r.z)
        << '\n';
  }
}

CensusScaling census_scaling(double beta, double gamma, double p,
                             const std::vector<std::int64_t>& n_list,
                             std::uint64_t replicates, std::uint64_t master_seed,
                             unsigned threads) {
  check_probability(p);
  if (replicates < 1) throw DomainError("replicates must be at least 1");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] > 20'000) throw DomainError("census n must not exceed 20000");
    if (i > 0 && n_list[i] <= n_list[i - 1]) throw DomainError("census n list must be ascending");
  }
  CensusScaling result;
  result.records.resize(n_list.size() * replicates * 2);
  parallel_for(n_list.size() * replicates, threads, [&](std::size_t job) {
    const std::int64_t n = n_list[job / replicates];
    const std::uint64_t rep = job % replicates;
    const GraphParams params = GraphParams::make(n, beta, gamma);
    const std::uint64_t seed = derive_seed(derive_seed(master_seed, static_cast<std::uint64_t>(n)), rep);
    const IntersectionGraph g = sample_intersection_graph(params, derive_seed(seed, 1));
    const MotifCounts whole = census4(g);
    const MotifCounts thinned = census4(thin(g, p, derive_seed(seed, 2)));
    result.records[2 * job] = {n, beta, gamma, 1.0, rep, whole.k4, whole.k4_prime};
    result.records[2 * job + 1] = {n, beta, gamma, p, rep, thinned.k4, thinned.k4_prime};
  });

  const double reps = static_cast<double>(replicates);
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    CensusSummaryRow row{n_list[i]};
    for (std::uint64_t r = 0; r < replicates; ++r) {
      const std::size_t job = i * replicates + r;
      row.mean_k4_unthinned += static_cast<double>(result.records[2 * job].k4) / reps;
      row.mean_k4_prime_unthinned += static_cast<double>(result.records[2 * job].k4_prime) / reps;
      row.mean_k4_thinned += static_cast<double>(result.records[2 * job + 1].k4) / reps;
      row.mean_k4_prime_thinned += static_cast<double>(result.records[2 * job + 1].k4_prime) / reps;
    }
    result.summary.push_back(row);
  }
  return result;
}

void write_census_csv(std::ostream& out, const std::vector<CensusRecord>& rows) {
  out << "n,beta,gamma,p,replicate,k4,k4prime\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_real(r.beta) << ',' << format_real(r.gamma) << ','
        << format_real(r.p) << ',' << r.replicate << ',' << r.k4 << ',' << r.k4_prime << '\n';
  }
}

void write_census_summary_csv(std::ostream& out, const std::vector<CensusSummaryRow>& rows) {
  out << "n,mean_k4_unthinned,mean_k4prime_unthinned,mean_k4_thinned,mean_k4prime_thinned\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_real(r.mean_k4_unthinned) << ','
        << format_real(r.mean_k4_prime_unthinned) << ',' << format_real(r.mean_k4_thinned) << ','
        << format_real(r.mean_k4_prime_thinned) << '\n';
  }
}

}  // namespace rigepi
