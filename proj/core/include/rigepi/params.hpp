#pragma once

#include <cstdint>

namespace rigepi {

/// Parameters of the random intersection graph with m = floor(beta * n)
/// groups and membership probability gamma / n.
///
/// Construct through GraphParams::make, which rejects n < 2, non-positive
/// beta or gamma, gamma / n > 1 and parameter points with no groups.
class GraphParams {
 public:
  static GraphParams make(std::int64_t n, double beta, double gamma);

  std::int64_t n() const { return n_; }
  double beta() const { return beta_; }
  double gamma() const { return gamma_; }

  std::int64_t group_count() const { return m_; }
  double membership_probability() const { return gamma_ / static_cast<double>(n_); }
  // Asymptotic mean degree beta * gamma^2.
  double mean_degree() const { return beta_ * gamma_ * gamma_; }
  // Asymptotic clustering 1 / (1 + beta * gamma).
  double clustering() const { return 1.0 / (1.0 + beta_ * gamma_); }

  friend bool operator==(const GraphParams&, const GraphParams&) = default;

 private:
  GraphParams(std::int64_t n, double beta, double gamma, std::int64_t m)
      : n_(n), beta_(beta), gamma_(gamma), m_(m) {}

  std::int64_t n_;
  double beta_;
  double gamma_;
  std::int64_t m_;
};

struct ModelShape {
  double beta;
  double gamma;
};

/// Inverts mean degree mu = beta * gamma^2 and clustering c = 1 / (1 + beta * gamma).
/// Throws DomainError unless 0 < c < 1 and mu > 0.
ModelShape solve_params(double c, double mu);

// Validates the model-level pair (no n involved). Throws DomainError.
void check_shape(double beta, double gamma);

// Throws DomainError unless 0 <= p <= 1.
void check_probability(double p, const char* name = "p");

}  // namespace rigepi
