#include <cmath>
#include <string>
#include <vector>

#include "rigepi/error.hpp"
#include "rigepi/params.hpp"
#include "rigepi/theory.hpp"

namespace rigepi {

namespace {

// Products below this are dropped rather than carried as subnormals.
constexpr double kNegligible = 1e-300;

class ReedFrostChain {
 public:
  ReedFrostChain(int k_max, double p) : p_(p), log_q_(std::log1p(-p)) {
    log_factorial_.resize(static_cast<std::size_t>(k_max) + 2, 0.0);
    for (std::size_t i = 1; i < log_factorial_.size(); ++i) {
      log_factorial_[i] = log_factorial_[i - 1] + std::log(static_cast<double>(i));
    }
    ratio_.resize(static_cast<std::size_t>(k_max) + 1);
    binom_.resize(static_cast<std::size_t>(k_max) + 1);
  }

  std::vector<double> run(int k) {
    const std::size_t width = static_cast<std::size_t>(k) + 2;
    // mass[t * width + i] holds state (s = t - i susceptibles, i infectives).
    mass_.assign(width * width, 0.0);
    mass_[(static_cast<std::size_t>(k) + 1) * width + 1] = 1.0;
    std::vector<double> pmf(static_cast<std::size_t>(k) + 1, 0.0);

    for (int s = k; s >= 0; --s) {
      prepare_ratios(s);
      double* row = mass_.data() + static_cast<std::size_t>(s) * width;
      for (int i = 1; s + i <= k + 1; ++i) {
        const double m = mass_[static_cast<std::size_t>(s + i) * width + static_cast<std::size_t>(i)];
        if (m < kNegligible) continue;
        const auto [lo, hi] = binomial(s, i, kNegligible / m);
        if (lo == 0) pmf[static_cast<std::size_t>(k - s)] += m * binom_[0];
        // j newly infected moves to (s - j, j), stored in row t = s.
        for (int j = lo == 0 ? 1 : lo; j <= hi; ++j) row[j] += m * binom_[static_cast<std::size_t>(j)];
      }
    }
    return pmf;
  }

 private:
  void prepare_ratios(int s) {
    for (int j = 0; j < s; ++j) {
      ratio_[static_cast<std::size_t>(j)] = static_cast<double>(s - j) / static_cast<double>(j + 1);
    }
  }

  // Fills binom_ with Binomial(s, 1 - q^i) over [lo, hi]; entries outside are
  // below `floor` relative to unit mass and treated as zero.
  std::pair<int, int> binomial(int s, int i, double floor) {
    if (p_ == 0.0) {
      binom_[0] = 1.0;
      return {0, 0};
    }
    const double log_miss = static_cast<double>(i) * log_q_;  // log P(no transmission)
    if (p_ == 1.0 || log_miss < -700.0) {
      binom_[static_cast<std::size_t>(s)] = 1.0;
      return {s, s};
    }
    if (s == 0) {
      binom_[0] = 1.0;
      return {0, 0};
    }
    const double miss = std::exp(log_miss);
    const double hit = -std::expm1(log_miss);
    const double log_hit = std::log(hit);
    const double odds = hit / miss;
    int mode = static_cast<int>(std::floor((s + 1) * hit));
    if (mode > s) mode = s;
    const auto su = static_cast<std::size_t>(s);
    const auto mu = static_cast<std::size_t>(mode);
    binom_[mu] = std::exp(log_factorial_[su] - log_factorial_[mu] - log_factorial_[su - mu] +
                          mode * log_hit + (s - mode) * log_miss);
    int hi = mode;
    while (hi < s) {
      const double next = binom_[static_cast<std::size_t>(hi)] * ratio_[static_cast<std::size_t>(hi)] * odds;
      if (next < floor) break;
      binom_[static_cast<std::size_t>(++hi)] = next;
    }
    int lo = mode;
    while (lo > 0) {
      const double next =
          binom_[static_cast<std::size_t>(lo)] / (ratio_[static_cast<std::size_t>(lo - 1)] * odds);
      if (next < floor) break;
      binom_[static_cast<std::size_t>(--lo)] = next;
    }
    return {lo, hi};
  }

  double p_;
  double log_q_;
  std::vector<double> log_factorial_;
  std::vector<double> ratio_;
  std::vector<double> binom_;
  std::vector<double> mass_;
};

void check_size(int k, int k_cap) {
  if (k < 0) throw DomainError("group size must be non-negative");
  if (k > k_cap) {
    throw CapacityError("final size distribution: k = " + std::to_string(k) +
                        " exceeds cap " + std::to_string(k_cap));
  }
}

}  // namespace

FinalSizeDist final_size_dist(int k, double p, int k_cap) {
  check_probability(p);
  check_size(k, k_cap);
  ReedFrostChain chain(k, p);
  FinalSizeDist dist{k, p, chain.run(k), 0.0};
  for (std::size_t j = 0; j < dist.pmf.size(); ++j) dist.mean += static_cast<double>(j) * dist.pmf[j];
  return dist;
}

std::vector<std::vector<double>> final_size_table(int k_max, double p, int k_cap) {
  check_probability(p);
  check_size(k_max, k_cap);
  ReedFrostChain chain(k_max, p);
  std::vector<std::vector<double>> table;
  table.reserve(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) table.push_back(chain.run(k));
  return table;
}

}  // namespace rigepi
