#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rigepi/graph.hpp"
#include "rigepi/params.hpp"
#include "rigepi/rng.hpp"

namespace rigepi::detail {

// Floyd's algorithm: `size` distinct values from [0, n), returned sorted.
inline void sample_distinct(std::uint64_t n, std::uint64_t size, Rng& rng,
                            std::vector<Vertex>& chosen) {
  chosen.clear();
  chosen.reserve(size);
  for (std::uint64_t j = n - size; j < n; ++j) {
    const auto t = static_cast<Vertex>(std::uniform_int_distribution<std::uint64_t>(0, j)(rng));
    const bool seen = chosen.size() < 64
                          ? std::find(chosen.begin(), chosen.end(), t) != chosen.end()
                          : std::binary_search(chosen.begin(), chosen.end(), t);
    const Vertex pick = seen ? static_cast<Vertex>(j) : t;
    if (chosen.size() < 64) {
      chosen.push_back(pick);
      if (chosen.size() == 64) std::sort(chosen.begin(), chosen.end());
    } else {
      chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), pick), pick);
    }
  }
  std::sort(chosen.begin(), chosen.end());
}

// Binomial(n, r) group sizes, drawn as a geometric gap to the next nonempty
// group followed by a zero-truncated size. Cost scales with the number of
// nonempty groups rather than with m.
class GroupSizeStream {
 public:
  GroupSizeStream(std::uint64_t n, double r) : n_(n), r_(r), full_(n, r) {
    const double log_empty = static_cast<double>(n) * std::log1p(-r);
    p_empty_ = r >= 1.0 ? 0.0 : std::exp(log_empty);
    p_nonempty_ = r >= 1.0 ? 1.0 : -std::expm1(log_empty);
    if (p_nonempty_ < 1.0) gap_ = std::geometric_distribution<std::uint64_t>(p_nonempty_);
  }

  std::uint64_t gap(Rng& rng) { return p_nonempty_ < 1.0 ? gap_(rng) : 0; }

  std::uint64_t nonempty_size(Rng& rng) {
    if (p_empty_ <= 0.25) {
      for (;;) {
        const std::uint64_t k = full_(rng);
        if (k > 0) return k;
      }
    }
    // Inverse cdf of the zero-truncated law; mean size is small here.
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double nd = static_cast<double>(n_);
    const double odds = r_ / (1.0 - r_);
    double pk = nd * r_ * std::exp((nd - 1.0) * std::log1p(-r_)) / p_nonempty_;
    double cdf = 0.0;
    for (std::uint64_t k = 1; k < n_; ++k) {
      cdf += pk;
      if (u < cdf) return k;
      pk *= static_cast<double>(n_ - k) / static_cast<double>(k + 1) * odds;
    }
    return n_;
  }

 private:
  std::uint64_t n_;
  double r_;
  double p_empty_ = 0.0;
  double p_nonempty_ = 1.0;
  std::binomial_distribution<std::uint64_t> full_;
  std::geometric_distribution<std::uint64_t> gap_;
};

// Calls body(group, members) for every nonempty group in increasing order.
template <typename Body>
void for_each_group(const GraphParams& params, std::uint64_t seed, Body&& body) {
  Rng rng(seed);
  const auto n = static_cast<std::uint64_t>(params.n());
  const auto m = static_cast<std::uint64_t>(params.group_count());
  GroupSizeStream sizes(n, params.membership_probability());
  std::vector<Vertex> members;
  for (std::uint64_t a = 0;; ++a) {
    const std::uint64_t skip = sizes.gap(rng);
    if (skip >= m - a) break;
    a += skip;
    sample_distinct(n, sizes.nonempty_size(rng), rng, members);
    body(a, members);
  }
}

}  // namespace rigepi::detail
