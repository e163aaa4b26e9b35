#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rigepi/graph.hpp"

namespace rigepi {

struct EpidemicOutcome {
  std::uint64_t final_size = 0;             // ever infected, index case included
  std::vector<std::uint64_t> generations;   // newly infected per generation; [0] == 1
  std::optional<std::vector<Vertex>> infected_set;  // sorted when present
};

/// Generation-synchronous Reed-Frost epidemic started by `index`. Each
/// infective contacts each neighbour once; the contact along {u, v} succeeds
/// iff edge_coin(seed, u, v) < p.
EpidemicOutcome reed_frost_run(const IntersectionGraph& g, double p, Vertex index,
                               std::uint64_t seed, bool record_set = true);

/// Cluster of `index` in the edge percolation where {u, v} is open iff
/// edge_coin(seed, u, v) < p. Generations are the BFS levels.
EpidemicOutcome percolation_cluster(const IntersectionGraph& g, double p, Vertex index,
                                    std::uint64_t seed, bool record_set = true);

}  // namespace rigepi
