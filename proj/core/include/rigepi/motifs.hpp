#pragma once

#include <cstdint>

#include "rigepi/graph.hpp"

namespace rigepi {

struct MotifCounts {
  std::uint64_t k4 = 0;                 // vertex-induced K4
  std::uint64_t k4_prime = 0;           // vertex-induced 4-vertex, 5-edge graph
  std::uint64_t four_sets_scanned = 0;  // connected 4-sets enumerated

  friend bool operator==(const MotifCounts&, const MotifCounts&) = default;
};

struct CensusOptions {
  // Upper bound on candidate (edge, vertex pair) extensions; exceeded -> CapacityError.
  std::uint64_t budget = 2'000'000'000ULL;
};

/// Upper bound on the work census4 performs on g: sum over edges {u,v} of
/// C(deg(u) + deg(v) - 2, 2).
std::uint64_t census4_work_bound(const IntersectionGraph& g);

/// Counts vertex-induced K4 and K4' (K4 minus an edge) by enumerating every
/// connected 4-set exactly once.
MotifCounts census4(const IntersectionGraph& g, const CensusOptions& options = {});

}  // namespace rigepi
