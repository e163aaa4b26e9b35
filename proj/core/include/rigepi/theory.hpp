#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rigepi {

inline constexpr int kDefaultSizeCap = 1000;
inline constexpr double kDefaultTailEpsilon = 1e-10;

/// Reed-Frost final outcome among k susceptibles started by one infective.
/// pmf[j] = P(j of the k susceptibles are ultimately infected); the index
/// case is not counted.
struct FinalSizeDist {
  int k = 0;
  double p = 0.0;
  std::vector<double> pmf;
  double mean = 0.0;
};

/// Forward dynamic programme on (susceptibles, current infectives): from
/// (s, i) the next generation size is Binomial(s, 1 - (1 - p)^i).
/// Throws CapacityError if k > k_cap, DomainError for bad p or negative k.
FinalSizeDist final_size_dist(int k, double p, int k_cap = kDefaultSizeCap);

/// final_size_dist for every k in [0, k_max], sharing the binomial tables.
std::vector<std::vector<double>> final_size_table(int k_max, double p,
                                                  int k_cap = kDefaultSizeCap);

struct TruncationOptions {
  double epsilon = kDefaultTailEpsilon;  // admissible tail mass, in (0, 1e-6]
  int k_cap = kDefaultSizeCap;
};

/// Law of R, the local outbreak an infective causes inside one of its
/// groups: the Poisson(gamma) mixture of final_size_dist(k, p).
struct LocalOutbreakDist {
  double gamma = 0.0;
  double p = 0.0;
  std::vector<double> pmf;      // over {0, ..., truncation_k}
  int truncation_k = 0;
  double truncated_mass = 0.0;  // weight of group sizes beyond truncation_k
  double mean = 0.0;            // sum_j j pmf[j]
};

// Smallest K with P(X >= K) < epsilon for X ~ Poisson(gamma).
int poisson_truncation(double gamma, double epsilon);

LocalOutbreakDist local_outbreak_dist(double gamma, double p,
                                      const TruncationOptions& options = {});

/// Finite-n variant: the number of other members of a group is
/// Binomial(n - 1, gamma / n).
LocalOutbreakDist local_outbreak_dist_finite(std::int64_t n, double gamma, double p,
                                             const TruncationOptions& options = {});

/// Offspring law of the approximating branching process: a Poisson(beta *
/// gamma) number of groups, each contributing an independent copy of R.
/// Expectations over R are taken under the truncated pmf renormalised to
/// unit mass, so pgf(1) == 1.
class OffspringLaw {
 public:
  OffspringLaw(double beta, double gamma, double p, const TruncationOptions& options = {});

  double beta() const { return beta_; }
  double gamma() const { return gamma_; }
  double p() const { return p_; }
  const LocalOutbreakDist& local() const { return local_; }

  // beta * gamma * E[R] with E[R] from the (unnormalised) truncated pmf.
  double r_nought() const { return beta_ * gamma_ * local_.mean; }

  double pgf(double s) const;             // exp{beta gamma (E[s^R] - 1)}
  double pgf_derivative(double s) const;  // d/ds of pgf

  /// pmf of the offspring count over {0, ..., max_count}, by Panjer recursion.
  std::vector<double> offspring_pmf(std::size_t max_count) const;

 private:
  double beta_;
  double gamma_;
  double p_;
  LocalOutbreakDist local_;
  std::vector<double> normalized_;  // local_.pmf / sum
};

double offspring_pgf(double beta, double gamma, double p, double s,
                     const TruncationOptions& options = {});

/// (1 - gamma/n + (gamma/n) E[s^{R(n)}])^m with m = floor(beta n).
double finite_n_offspring_pgf(std::int64_t n, double beta, double gamma, double p, double s,
                              const TruncationOptions& options = {});

double r_nought(double beta, double gamma, double p, const TruncationOptions& options = {});

struct TheorySolution {
  double beta = 0.0;
  double gamma = 0.0;
  double p = 0.0;
  double r_nought = 0.0;
  double rho = 1.0;  // extinction probability
  double pi = 0.0;   // 1 - rho
  int iterations = 0;
  double residual = 0.0;  // |f(rho) - rho|
  int truncation_k = 0;
  bool near_critical = false;  // |R0 - 1| < 1e-6
  bool converged = true;
};

struct SolverOptions {
  TruncationOptions truncation;
  double tolerance = 1e-12;
  int max_iterations = 10'000;
};

/// Smallest root of f(s) = s on [0, 1], approached monotonically from s = 0.
TheorySolution extinction_prob(double beta, double gamma, double p,
                               const SolverOptions& options = {});
TheorySolution extinction_prob(const OffspringLaw& law, const SolverOptions& options = {});

struct ProgenyPmf {
  std::vector<double> pmf;  // pmf[t] = P(E = t) for t in [0, max_size]; pmf[0] == 0
  double residual = 0.0;    // 1 - sum pmf = P(E > max_size), infinite progeny included
};

inline constexpr std::size_t kMaxProgenySize = 10'000;

/// Total progeny E of the branching process with offspring law `law`, started
/// from one individual. Throws CapacityError if max_size > 10^4.
ProgenyPmf total_progeny_pmf(const OffspringLaw& law, std::size_t max_size);
ProgenyPmf total_progeny_pmf(double beta, double gamma, double p, std::size_t max_size,
                             const TruncationOptions& options = {});

/// Degree law of the limiting graph: a Poisson(beta gamma) sum of independent
/// Poisson(gamma) variables, over {0, ..., max_degree}.
std::vector<double> compound_poisson_degree_pmf(double beta, double gamma,
                                                std::size_t max_degree);

// Poisson(lambda) pmf at k, evaluated in log space.
double poisson_pmf(double lambda, std::int64_t k);

}  // namespace rigepi
