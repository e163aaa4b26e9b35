#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rigepi/error.hpp"
#include "rigepi/params.hpp"
#include "rigepi/theory.hpp"

namespace rigepi {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1e-6)) {
    throw DomainError("tail tolerance must lie in (0, 1e-6] (got " + std::to_string(epsilon) + ")");
  }
}

// Smallest K with sum_{k >= K} weight(k) < epsilon, given weights on [0, hi]
// that carry all but a negligible amount of mass.
template <typename Weight>
int smallest_truncation(Weight&& weight, int hi, double epsilon) {
  double tail = 0.0;
  int k = hi;
  // Walk down until the tail first reaches epsilon; the answer is one above.
  for (; k >= 0; --k) {
    tail += weight(k);
    if (tail >= epsilon) break;
  }
  return k + 1;
}

LocalOutbreakDist mix_final_sizes(double gamma, double p, const std::vector<double>& weights,
                                  const TruncationOptions& options) {
  const int K = static_cast<int>(weights.size()) - 1;
  if (K > options.k_cap) {
    throw CapacityError("local outbreak: truncation K = " + std::to_string(K) +
                        " exceeds cap " + std::to_string(options.k_cap));
  }
  const auto table = final_size_table(K, p, options.k_cap);
  LocalOutbreakDist dist;
  dist.gamma = gamma;
  dist.p = p;
  dist.truncation_k = K;
  dist.pmf.assign(static_cast<std::size_t>(K) + 1, 0.0);
  double kept = 0.0;
  for (int k = 0; k <= K; ++k) {
    const double w = weights[static_cast<std::size_t>(k)];
    kept += w;
    const auto& f = table[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j < f.size(); ++j) dist.pmf[j] += w * f[j];
  }
  dist.truncated_mass = std::max(0.0, 1.0 - kept);
  for (std::size_t j = 0; j < dist.pmf.size(); ++j) dist.mean += static_cast<double>(j) * dist.pmf[j];
  return dist;
}

double binomial_pmf(std::int64_t trials, double prob, std::int64_t k) {
  if (k < 0 || k > trials) return 0.0;
  if (prob >= 1.0) return k == trials ? 1.0 : 0.0;
  const double n = static_cast<double>(trials);
  const double kd = static_cast<double>(k);
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(n - kd + 1.0) +
                  kd * std::log(prob) + (n - kd) * std::log1p(-prob));
}

}  // namespace

int poisson_truncation(double gamma, double epsilon) {
  const int hi = static_cast<int>(std::ceil(gamma + 40.0 * std::sqrt(gamma) + 60.0));
  return smallest_truncation([gamma](int k) { return poisson_pmf(gamma, k); }, hi, epsilon);
}

LocalOutbreakDist local_outbreak_dist(double gamma, double p, const TruncationOptions& options) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive");
  check_probability(p);
  check_epsilon(options.epsilon);
  const int K = poisson_truncation(gamma, options.epsilon);
  if (K > options.k_cap) {
    throw CapacityError("local outbreak: truncation K = " + std::to_string(K) +
                        " exceeds cap " + std::to_string(options.k_cap));
  }
  std::vector<double> weights(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) weights[static_cast<std::size_t>(k)] = poisson_pmf(gamma, k);
  return mix_final_sizes(gamma, p, weights, options);
}

LocalOutbreakDist local_outbreak_dist_finite(std::int64_t n, double gamma, double p,
                                             const TruncationOptions& options) {
  if (n < 2) throw DomainError("n must be at least 2");
  if (!(gamma > 0.0) || gamma > static_cast<double>(n)) throw DomainError("gamma must lie in (0, n]");
  check_probability(p);
  check_epsilon(options.epsilon);
  const double r = gamma / static_cast<double>(n);
  const std::int64_t others = n - 1;
  const auto hi = static_cast<int>(std::min<double>(
      static_cast<double>(others), std::ceil(gamma + 40.0 * std::sqrt(gamma) + 60.0)));
  const int K = smallest_truncation([&](int k) { return binomial_pmf(others, r, k); }, hi,
                                    options.epsilon);
  if (K > options.k_cap) {
    throw CapacityError("local outbreak: truncation K = " + std::to_string(K) +
                        " exceeds cap " + std::to_string(options.k_cap));
  }
  std::vector<double> weights(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) weights[static_cast<std::size_t>(k)] = binomial_pmf(others, r, k);
  return mix_final_sizes(gamma, p, weights, options);
}

OffspringLaw::OffspringLaw(double beta, double gamma, double p, const TruncationOptions& options)
    : beta_(beta), gamma_(gamma), p_(p) {
  check_shape(beta, gamma);
  local_ = local_outbreak_dist(gamma, p, options);
  double total = 0.0;
  for (double x : local_.pmf) total += x;
  normalized_ = local_.pmf;
  for (double& x : normalized_) x /= total;
  while (normalized_.size() > 1 && normalized_.back() == 0.0) normalized_.pop_back();
}

double OffspringLaw::pgf(double s) const {
  double acc = 0.0;
  for (auto it = normalized_.rbegin(); it != normalized_.rend(); ++it) acc = acc * s + *it;
  return std::exp(beta_ * gamma_ * (acc - 1.0));
}

double OffspringLaw::pgf_derivative(double s) const {
  double acc = 0.0;
  for (std::size_t j = normalized_.size(); j-- > 1;) acc = acc * s + static_cast<double>(j) * normalized_[j];
  return pgf(s) * beta_ * gamma_ * acc;
}

std::vector<double> OffspringLaw::offspring_pmf(std::size_t max_count) const {
  const double groups = beta_ * gamma_;
  std::vector<double> pmf(max_count + 1, 0.0);
  pmf[0] = std::exp(-groups * (1.0 - normalized_[0]));
  const std::size_t support = normalized_.size() - 1;
  for (std::size_t k = 1; k <= max_count; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= std::min(k, support); ++j) {
      acc += static_cast<double>(j) * normalized_[j] * pmf[k - j];
    }
    pmf[k] = groups / static_cast<double>(k) * acc;
  }
  return pmf;
}

double offspring_pgf(double beta, double gamma, double p, double s,
                     const TruncationOptions& options) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("s must lie in [0, 1]");
  return OffspringLaw(beta, gamma, p, options).pgf(s);
}

double finite_n_offspring_pgf(std::int64_t n, double beta, double gamma, double p, double s,
                              const TruncationOptions& options) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("s must lie in [0, 1]");
  const GraphParams params = GraphParams::make(n, beta, gamma);
  if (s == 1.0) return 1.0;
  const auto local = local_outbreak_dist_finite(n, gamma, p, options);
  double total = 0.0;
  double moment = 0.0;
  for (auto j = local.pmf.size(); j-- > 0;) {
    moment = moment * s + local.pmf[j];
    total += local.pmf[j];
  }
  const double r = params.membership_probability();
  const double per_group = 1.0 - r + r * (moment / total);
  return std::exp(static_cast<double>(params.group_count()) * std::log(per_group));
}

double r_nought(double beta, double gamma, double p, const TruncationOptions& options) {
  return OffspringLaw(beta, gamma, p, options).r_nought();
}

TheorySolution extinction_prob(const OffspringLaw& law, const SolverOptions& options) {
  TheorySolution sol;
  sol.beta = law.beta();
  sol.gamma = law.gamma();
  sol.p = law.p();
  sol.r_nought = law.r_nought();
  sol.truncation_k = law.local().truncation_k;
  sol.near_critical = std::abs(sol.r_nought - 1.0) < 1e-6;

  // Newton steps on f(s) - s from s = 0. f is convex and increasing, so the
  // iterates increase monotonically, never pass the smallest root, and each
  // step is at least as long as the plain step s <- f(s).
  double s = 0.0;
  sol.converged = false;
  for (int it = 1; it <= options.max_iterations; ++it) {
    sol.iterations = it;
    const double fs = law.pgf(s);
    const double gap = fs - s;
    if (gap <= 0.0) {
      sol.converged = true;
      break;
    }
    const double slope = law.pgf_derivative(s) - 1.0;
    double next = slope < 0.0 ? s - gap / slope : fs;
    if (next > 1.0) next = 1.0;
    if (law.pgf(next) < next) next = fs;  // rounding pushed past the root
    const double step = next - s;
    s = next;
    if (std::abs(step) < options.tolerance) {
      sol.converged = true;
      break;
    }
  }
  // Near s = 1 the computed gap f(s) - s drowns in rounding once 1 - s is
  // about 1e-16 / |1 - R0|. A genuine root below 1 with R0 > 1 + 1e-6 lies at
  // least 2 (R0 - 1) / f''(1) >= 2e-6 / (K + 1) away, far above this cut.
  if (1.0 - s < 1e-10) s = 1.0;
  sol.rho = s;
  sol.pi = 1.0 - s;
  sol.residual = std::abs(law.pgf(s) - s);
  return sol;
}

TheorySolution extinction_prob(double beta, double gamma, double p, const SolverOptions& options) {
  return extinction_prob(OffspringLaw(beta, gamma, p, options.truncation), options);
}

ProgenyPmf total_progeny_pmf(const OffspringLaw& law, std::size_t max_size) {
  if (max_size > kMaxProgenySize) {
    throw CapacityError("total progeny: max_size " + std::to_string(max_size) + " exceeds " +
                        std::to_string(kMaxProgenySize));
  }
  // Dwass: P(E = t) = P(S_t = t - 1) / t, where S_t is compound
  // Poisson(t beta gamma) with summand law R. Panjer gives P(S_t = .) up to
  // the factor P(S_t = 0); the recursion runs on a rescaled window to stay
  // clear of overflow and underflow.
  std::vector<double> r = law.local().pmf;
  double total = 0.0;
  for (double x : r) total += x;
  for (double& x : r) x /= total;
  while (r.size() > 1 && r.back() == 0.0) r.pop_back();
  const std::size_t support = r.size() - 1;
  const double groups = law.beta() * law.gamma();

  ProgenyPmf out;
  out.pmf.assign(max_size + 1, 0.0);
  if (max_size >= 1) {
    std::vector<double> h(max_size, 0.0);
    for (std::size_t t = 1; t <= max_size; ++t) {
      const double rate = static_cast<double>(t) * groups;
      const double log_zero = -rate * (1.0 - r[0]);
      if (support == 0) {
        out.pmf[t] = t == 1 ? std::exp(log_zero) : 0.0;
        continue;
      }
      double log_scale = 0.0;
      h[0] = 1.0;
      for (std::size_t k = 1; k < t; ++k) {
        double acc = 0.0;
        const std::size_t top = std::min(k, support);
        for (std::size_t j = 1; j <= top; ++j) acc += static_cast<double>(j) * r[j] * h[k - j];
        h[k] = rate / static_cast<double>(k) * acc;
        if (h[k] > 1e200 || (h[k] < 1e-200 && h[k] > 0.0)) {
          const double factor = 1.0 / h[k];
          for (std::size_t w = k - std::min(k, support); w <= k; ++w) h[w] *= factor;
          log_scale -= std::log(factor);
        }
      }
      const double mass = h[t - 1] > 0.0 ? std::exp(log_zero + log_scale + std::log(h[t - 1])) : 0.0;
      out.pmf[t] = mass / static_cast<double>(t);
    }
  }
  double sum = 0.0;
  for (double x : out.pmf) sum += x;
  out.residual = std::max(0.0, 1.0 - sum);
  return out;
}

ProgenyPmf total_progeny_pmf(double beta, double gamma, double p, std::size_t max_size,
                             const TruncationOptions& options) {
  return total_progeny_pmf(OffspringLaw(beta, gamma, p, options), max_size);
}

}  // namespace rigepi
