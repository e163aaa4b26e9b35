#include "rigepi/params.hpp"

#include <cmath>
#include <string>

#include "rigepi/error.hpp"

namespace rigepi {

namespace {

std::string describe(const char* what, double value) {
  return std::string(what) + " (got " + std::to_string(value) + ")";
}

}  // namespace

void check_shape(double beta, double gamma) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError(describe("beta must be positive", beta));
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError(describe("gamma must be positive", gamma));
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(describe((std::string(name) + " must lie in [0, 1]").c_str(), p));
  }
}

GraphParams GraphParams::make(std::int64_t n, double beta, double gamma) {
  if (n < 2) throw DomainError("n must be at least 2 (got " + std::to_string(n) + ")");
  if (n > (std::int64_t{1} << 32) - 1) throw DomainError("n exceeds the 32-bit vertex range");
  check_shape(beta, gamma);
  const double nd = static_cast<double>(n);
  if (gamma / nd > 1.0) throw DomainError(describe("gamma / n must not exceed 1", gamma / nd));
  // beta * n computed from (c, mu) can land one ulp below an integer.
  const double groups = std::floor(beta * nd * (1.0 + 1e-12));
  if (groups < 1.0) throw DomainError(describe("floor(beta * n) must be at least 1", beta * nd));
  if (groups > 4.0e9) throw DomainError(describe("group count exceeds the 32-bit range", groups));
  return GraphParams(n, beta, gamma, static_cast<std::int64_t>(groups));
}

ModelShape solve_params(double c, double mu) {
  if (!(c > 0.0 && c < 1.0)) throw DomainError(describe("c must lie in (0, 1)", c));
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError(describe("mu must be positive", mu));
  const double gamma = mu * c / (1.0 - c);
  const double beta = (1.0 - c) * (1.0 - c) / (mu * c * c);
  return {beta, gamma};
}

}  // namespace rigepi
