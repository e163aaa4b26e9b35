#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rigepi/graph.hpp"

namespace rigepi {

std::map<std::size_t, std::size_t> degree_histogram(const IntersectionGraph& g);

// Dense pmf over {0, ..., max_degree} from a histogram.
std::vector<double> histogram_pmf(const std::map<std::size_t, std::size_t>& hist,
                                  std::size_t vertex_count);

double mean_degree(const IntersectionGraph& g);

struct TriadCounts {
  std::uint64_t triangles = 0;
  std::uint64_t wedges = 0;  // paths of length two, counted at their centre
};

TriadCounts count_triads(const IntersectionGraph& g);

struct TransitivityOptions {
  // Graphs with more vertices than this use wedge sampling.
  std::size_t exact_vertex_limit = 100'000;
  std::uint64_t sampled_wedges = 1'000'000;
  std::uint64_t seed = 0;
};

/// 3 * triangles / wedges. std::nullopt when the graph has no wedge.
std::optional<double> transitivity(const IntersectionGraph& g,
                                   const TransitivityOptions& options = {});

/// True iff the subgraph of the bipartite graph induced by all vertices within
/// distance `radius` of individual `root` is a tree.
bool ball_is_tree(const BipartiteGraph& b, Vertex root, int radius);

// Total variation distance between two pmfs; missing entries count as zero.
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace rigepi
