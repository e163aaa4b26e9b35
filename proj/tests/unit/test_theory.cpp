#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "rigepi/error.hpp"
#include "rigepi/params.hpp"
#include "rigepi/theory.hpp"

using namespace rigepi;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

// Fixed point of exp(beta gamma (exp(gamma (s - 1)) - 1)) in long double:
// the extinction probability when every group member is infected.
long double rho_full_transmission(long double beta, long double gamma) {
  long double s = 0.0L;
  for (int i = 0; i < 10000; ++i) {
    const long double next = std::exp(beta * gamma * (std::exp(gamma * (s - 1.0L)) - 1.0L));
    if (std::fabs(next - s) < 1e-19L) return next;
    s = next;
  }
  return s;
}

}  // namespace

TEST_SUITE("theory") {

TEST_CASE("final size degenerate cases") {
  for (int k : {0, 1, 5, 40}) {
    const auto none = final_size_dist(k, 0.0);
    CHECK(none.pmf.size() == static_cast<std::size_t>(k) + 1);
    CHECK(none.pmf[0] == 1.0);
    CHECK(none.mean == 0.0);
    const auto all = final_size_dist(k, 1.0);
    CHECK(all.pmf[static_cast<std::size_t>(k)] == 1.0);
    CHECK(all.mean == static_cast<double>(k));
  }
}

TEST_CASE("final size on the triangle") {
  const auto d = final_size_dist(2, 0.5);
  CHECK(d.pmf[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(d.pmf[1] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(d.pmf[2] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d.mean == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("final size equals enumeration on small cliques") {
  double worst = 0.0;
  for (int k = 0; k <= 4; ++k) {
    for (int i = 1; i <= 9; ++i) {
      const double p = i / 10.0;
      const auto exact = oracle::cluster_size_pmf(k + 1, oracle::clique_edges(k + 1), 0, p);
      const auto d = final_size_dist(k, p);
      for (int j = 0; j <= k; ++j) {
        worst = std::max(worst, std::fabs(d.pmf[static_cast<std::size_t>(j)] -
                                          exact[static_cast<std::size_t>(j) + 1]));
      }
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("final size satisfies the triangular system") {
  for (int k = 1; k <= 30; ++k) {
    for (double p : {0.1, 0.2, 0.3, 0.4, 0.5}) {
      CHECK(oracle::triangular_residual(final_size_dist(k, p).pmf, p) <= 1e-6);
    }
  }
}

TEST_CASE("final size pmf is normalised and stochastically ordered") {
  const auto table_lo = final_size_table(60, 0.05);
  for (int k = 0; k <= 60; k += 7) {
    for (double p : {0.01, 0.1, 0.3, 0.7, 0.99}) {
      const auto d = final_size_dist(k, p);
      CHECK(sum(d.pmf) == doctest::Approx(1.0).epsilon(1e-12));
      double mean = 0.0;
      for (std::size_t j = 0; j < d.pmf.size(); ++j) {
        CHECK(d.pmf[j] >= 0.0);
        mean += static_cast<double>(j) * d.pmf[j];
      }
      CHECK(d.mean == doctest::Approx(mean).epsilon(1e-12));
    }
  }
  // CDF dominance: larger p and larger k shift mass upwards.
  for (int k = 1; k <= 40; k += 3) {
    for (double p : {0.02, 0.1, 0.25, 0.5}) {
      const auto lo = final_size_dist(k, p).pmf;
      const auto hi_p = final_size_dist(k, p + 0.05).pmf;
      const auto hi_k = final_size_dist(k + 1, p).pmf;
      double c_lo = 0.0, c_p = 0.0, c_k = 0.0;
      for (int j = 0; j <= k; ++j) {
        c_lo += lo[static_cast<std::size_t>(j)];
        c_p += hi_p[static_cast<std::size_t>(j)];
        c_k += hi_k[static_cast<std::size_t>(j)];
        CHECK(c_p <= c_lo + 1e-12);
        CHECK(c_k <= c_lo + 1e-12);
      }
    }
  }
  // The table is final_size_dist row by row.
  for (int k = 0; k <= 60; k += 13) {
    const auto row = final_size_dist(k, 0.05).pmf;
    for (std::size_t j = 0; j < row.size(); ++j) {
      CHECK(table_lo[static_cast<std::size_t>(k)][j] == doctest::Approx(row[j]).epsilon(1e-14));
    }
  }
}

TEST_CASE("final size limits") {
  CHECK_THROWS_AS(final_size_dist(1001, 0.5), CapacityError);
  CHECK_THROWS_AS(final_size_dist(-1, 0.5), DomainError);
  CHECK_THROWS_AS(final_size_dist(3, 1.2), DomainError);
  const auto big = final_size_dist(1000, 0.003);
  CHECK(sum(big.pmf) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("poisson truncation") {
  for (double gamma : {0.01, 1.0, 4.0, 30.0}) {
    const int K = poisson_truncation(gamma, 1e-10);
    double tail = 0.0;
    double tail_before = 0.0;
    for (int k = K; k < K + 400; ++k) tail += poisson_pmf(gamma, k);
    tail_before = tail + poisson_pmf(gamma, K - 1);
    CHECK(tail < 1e-10);
    CHECK(tail_before >= 1e-10);
  }
}

TEST_CASE("local outbreak law") {
  SUBCASE("full transmission gives the truncated Poisson law") {
    const auto d = local_outbreak_dist(4.0, 1.0);
    for (std::size_t j = 0; j < d.pmf.size(); ++j) {
      CHECK(d.pmf[j] == doctest::Approx(poisson_pmf(4.0, static_cast<std::int64_t>(j))).epsilon(1e-12));
    }
    CHECK(d.truncated_mass < 1e-10);
    CHECK(sum(d.pmf) + d.truncated_mass >= 1.0 - 1e-9);
  }
  SUBCASE("tiny groups carry no outbreak") {
    const auto d = local_outbreak_dist(1e-6, 0.5);
    CHECK(d.pmf[0] > 1.0 - 1e-6);
  }
  SUBCASE("mean agrees with clique simulation") {
    std::mt19937_64 rng(808);
    const int draws = 1000000;
    double s = 0.0, sq = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double x = oracle::local_outbreak_draw(4.0, 0.5, rng);
      s += x;
      sq += x * x;
    }
    const double mean = s / draws;
    const double se = std::sqrt((sq / draws - mean * mean) / draws);
    CHECK(std::fabs(local_outbreak_dist(4.0, 0.5).mean - mean) <= 3.0 * se);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(local_outbreak_dist(0.0, 0.5), DomainError);
    TruncationOptions loose;
    loose.epsilon = 1e-3;
    CHECK_THROWS_AS(local_outbreak_dist(4.0, 0.5, loose), DomainError);
    CHECK_THROWS_AS(local_outbreak_dist(2000.0, 0.5), CapacityError);
  }
}

TEST_CASE("offspring generating function") {
  CHECK(offspring_pgf(0.25, 4.0, 0.5, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  for (double s : {0.0, 0.3, 0.9}) CHECK(offspring_pgf(0.25, 4.0, 0.0, s) == doctest::Approx(1.0));
  // Full transmission: exp(beta gamma (exp(-gamma) - 1)) at s = 0.
  const double direct = std::exp(0.25 * 4.0 * (std::exp(-4.0) - 1.0));
  CHECK(direct == doctest::Approx(0.3746794715).epsilon(1e-10));
  CHECK(offspring_pgf(0.25, 4.0, 1.0, 0.0) == doctest::Approx(direct).epsilon(1e-10));
  CHECK_THROWS_AS(offspring_pgf(0.25, 4.0, 0.5, 1.5), DomainError);

  SUBCASE("convex, increasing, and its slope at one is R0") {
    for (double p : {0.1, 0.3, 0.5, 0.9}) {
      const OffspringLaw law(0.25, 4.0, p);
      double prev = -1.0, prev_slope = -1.0;
      for (int i = 0; i <= 100; ++i) {
        const double s = i / 100.0;
        const double f = law.pgf(s);
        const double slope = law.pgf_derivative(s);
        CHECK(f >= prev);
        CHECK(slope >= prev_slope - 1e-12);
        prev = f;
        prev_slope = slope;
      }
      const double h = 1e-6;
      const double fd = (law.pgf(1.0) - law.pgf(1.0 - h)) / h;
      CHECK(fd == doctest::Approx(law.r_nought()).epsilon(1e-4));
    }
  }
}

TEST_CASE("finite population generating function") {
  CHECK(finite_n_offspring_pgf(1000, 0.25, 4.0, 0.5, 1.0) == 1.0);
  CHECK(finite_n_offspring_pgf(1000, 0.25, 4.0, 0.0, 0.3) == doctest::Approx(1.0));
  for (double s : {0.0, 0.4, 0.8}) {
    const double limit = offspring_pgf(0.25, 4.0, 0.5, s);
    double previous = INFINITY;
    for (std::int64_t n : {100, 1000, 10000}) {
      const double gap = std::fabs(finite_n_offspring_pgf(n, 0.25, 4.0, 0.5, s) - limit);
      CHECK(gap < previous);
      previous = gap;
    }
    CHECK(previous < 1e-3);
  }
}

TEST_CASE("R0") {
  CHECK(r_nought(0.25, 4.0, 0.0) == 0.0);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const double beta = std::uniform_real_distribution<double>(0.05, 3.0)(rng);
    const double gamma = std::uniform_real_distribution<double>(0.1, 12.0)(rng);
    const double mu = beta * gamma * gamma;
    CHECK(std::fabs(r_nought(beta, gamma, 1.0) - mu) <= 1e-10 * mu);
  }
  const auto s = solve_params(1e-3, 4.0);
  CHECK(std::fabs(r_nought(s.beta, s.gamma, 0.5) - 2.0) <= 0.05);
}

TEST_CASE("extinction probability") {
  SUBCASE("full transmission matches the extended-precision fixed point") {
    const auto sol = extinction_prob(0.25, 4.0, 1.0);
    const double oracle_rho = static_cast<double>(rho_full_transmission(0.25L, 4.0L));
    CHECK(oracle_rho == doctest::Approx(0.4032990272).epsilon(1e-9));
    CHECK(sol.rho == doctest::Approx(oracle_rho).epsilon(1e-9));
    CHECK(sol.pi == doctest::Approx(1.0 - oracle_rho).epsilon(1e-9));
    CHECK(sol.residual <= 1e-10);
    CHECK(sol.converged);
  }
  SUBCASE("no transmission") {
    const auto sol = extinction_prob(0.25, 4.0, 0.0);
    CHECK(sol.rho == 1.0);
    CHECK(sol.pi == 0.0);
  }
  SUBCASE("subcritical points do not explode") {
    const auto shape = solve_params(0.01, 4.0);
    for (double p : {0.05, 0.1, 0.2}) {
      const auto sol = extinction_prob(shape.beta, shape.gamma, p);
      REQUIRE(sol.r_nought < 1.0);
      CHECK(std::fabs(sol.rho - 1.0) <= 1e-8);
      CHECK(sol.pi <= 1e-8);
    }
  }
  SUBCASE("positive survival exactly above threshold") {
    for (double c : {0.01, 0.1, 0.3, 0.6, 0.9}) {
      for (double mu : {1.5, 3.0, 6.0}) {
        for (double p : {0.15, 0.3, 0.45, 0.7}) {
          const auto s = solve_params(c, mu);
          const auto sol = extinction_prob(s.beta, s.gamma, p);
          if (std::fabs(sol.r_nought - 1.0) < 1e-6) continue;
          CHECK((sol.rho < 1.0) == (sol.r_nought > 1.0));
          CHECK(sol.rho >= 0.0);
          CHECK(sol.rho <= 1.0);
          CHECK(sol.residual <= 1e-10);
        }
      }
    }
  }
  SUBCASE("near criticality is flagged") {
    // R0 is increasing in p; bisect to the critical p at c = 0.5, mu = 4.
    double lo = 0.05, hi = 0.2;
    REQUIRE(r_nought(0.25, 4.0, lo) < 1.0);
    REQUIRE(r_nought(0.25, 4.0, hi) > 1.0);
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      (r_nought(0.25, 4.0, mid) < 1.0 ? lo : hi) = mid;
    }
    const auto sol = extinction_prob(0.25, 4.0, hi);
    CHECK(sol.near_critical);
    CHECK(sol.pi < 1e-4);
  }
}

TEST_CASE("offspring pmf") {
  const OffspringLaw law(0.25, 4.0, 0.5);
  const auto pmf = law.offspring_pmf(200);
  CHECK(sum(pmf) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pmf[0] == doctest::Approx(law.pgf(0.0)).epsilon(1e-12));
  double mean = 0.0;
  for (std::size_t j = 0; j < pmf.size(); ++j) mean += static_cast<double>(j) * pmf[j];
  CHECK(mean == doctest::Approx(law.r_nought()).epsilon(1e-8));
}

TEST_CASE("total progeny") {
  SUBCASE("no transmission is a point mass at one") {
    const auto pr = total_progeny_pmf(0.25, 4.0, 0.0, 50);
    CHECK(pr.pmf[0] == 0.0);
    CHECK(pr.pmf[1] == doctest::Approx(1.0));
    CHECK(pr.residual == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("agrees with the exploration walk") {
    for (double p : {0.2, 0.5}) {
      const OffspringLaw law(0.25, 4.0, p);
      const auto pr = total_progeny_pmf(law, 120);
      const auto walk = oracle::walk_progeny(law.offspring_pmf(200), 120);
      for (std::size_t t = 1; t <= 120; ++t) {
        CHECK(pr.pmf[t] == doctest::Approx(walk[t]).epsilon(1e-9).scale(1e-15));
      }
    }
  }
  SUBCASE("residual mass approaches the survival probability") {
    for (double p : {0.5, 0.9}) {
      const auto sol = extinction_prob(0.25, 4.0, p);
      REQUIRE(sol.r_nought >= 1.2);
      const auto pr = total_progeny_pmf(0.25, 4.0, p, 10000);
      CHECK(std::fabs(pr.residual - sol.pi) <= 1e-3);
      CHECK(pr.residual >= sol.pi - 1e-9);
    }
  }
  SUBCASE("agrees with branching process simulation") {
    std::mt19937_64 rng(99);
    const int runs = 1000000;
    const int cap = 30;
    std::vector<double> counts(static_cast<std::size_t>(cap) + 2, 0.0);
    for (int i = 0; i < runs; ++i) counts[static_cast<std::size_t>(oracle::progeny_draw(0.25, 4.0, 0.5, cap, rng))] += 1.0;
    const auto pr = total_progeny_pmf(0.25, 4.0, 0.5, static_cast<std::size_t>(cap));
    for (int t = 1; t <= cap; ++t) {
      const double q = pr.pmf[static_cast<std::size_t>(t)];
      const double se = std::sqrt(q * (1.0 - q) / runs);
      CHECK(std::fabs(counts[static_cast<std::size_t>(t)] / runs - q) <= 3.0 * se + 1e-6);
    }
  }
  SUBCASE("size cap") { CHECK_THROWS_AS(total_progeny_pmf(0.25, 4.0, 0.5, 10001), CapacityError); }
}

TEST_CASE("compound Poisson degree law") {
  const auto pmf = compound_poisson_degree_pmf(0.25, 4.0, 200);
  CHECK(pmf[0] == doctest::Approx(std::exp(0.25 * 4.0 * (std::exp(-4.0) - 1.0))).epsilon(1e-14));
  double mean = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) mean += static_cast<double>(k) * pmf[k];
  CHECK(std::fabs(mean - 4.0) <= 1e-10);
  CHECK(sum(pmf) == doctest::Approx(1.0).epsilon(1e-12));

  // Vanishing clustering at fixed mean degree tends to Poisson(mu).
  double previous = INFINITY;
  for (double c : {0.1, 0.01, 0.001}) {
    const auto s = solve_params(c, 4.0);
    const auto law = compound_poisson_degree_pmf(s.beta, s.gamma, 60);
    double gap = 0.0;
    for (std::size_t k = 0; k <= 60; ++k) gap = std::max(gap, std::fabs(law[k] - poisson_pmf(4.0, static_cast<std::int64_t>(k))));
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 1e-3);
}

}
