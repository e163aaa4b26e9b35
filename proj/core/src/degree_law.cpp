#include <cmath>
#include <vector>

#include "rigepi/error.hpp"
#include "rigepi/params.hpp"
#include "rigepi/theory.hpp"

namespace rigepi {

double poisson_pmf(double lambda, std::int64_t k) {
  if (k < 0) return 0.0;
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

std::vector<double> compound_poisson_degree_pmf(double beta, double gamma,
                                                std::size_t max_degree) {
  check_shape(beta, gamma);
  const double groups = beta * gamma;
  std::vector<double> severity(max_degree + 1);
  for (std::size_t j = 0; j <= max_degree; ++j) {
    severity[j] = poisson_pmf(gamma, static_cast<std::int64_t>(j));
  }
  // Panjer recursion for a compound Poisson(beta gamma) law.
  std::vector<double> pmf(max_degree + 1, 0.0);
  pmf[0] = std::exp(groups * std::expm1(-gamma));
  for (std::size_t k = 1; k <= max_degree; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * severity[j] * pmf[k - j];
    pmf[k] = groups / static_cast<double>(k) * acc;
  }
  return pmf;
}

}  // namespace rigepi
