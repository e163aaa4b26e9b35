#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rigepi/params.hpp"

namespace rigepi {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Individuals x groups membership structure. Member lists are sorted and
/// duplicate free; the transposed view (groups of each individual) is built
/// at construction.
class BipartiteGraph {
 public:
  BipartiteGraph(GraphParams params, std::vector<std::vector<Vertex>> members);

  const GraphParams& params() const { return params_; }
  std::int64_t individual_count() const { return params_.n(); }
  std::size_t group_count() const { return members_.size(); }

  std::span<const Vertex> members(std::size_t group) const { return members_[group]; }
  std::span<const std::uint32_t> groups_of(Vertex individual) const;

  std::size_t membership_count() const { return group_index_.size(); }
  const std::vector<std::vector<Vertex>>& memberships() const { return members_; }

 private:
  GraphParams params_;
  std::vector<std::vector<Vertex>> members_;
  std::vector<std::size_t> group_offsets_;
  std::vector<std::uint32_t> group_index_;
};

/// Simple undirected graph in CSR form with sorted neighbor lists.
class IntersectionGraph {
 public:
  IntersectionGraph() = default;

  // Builds from arbitrary undirected edges; drops self loops and duplicates.
  static IntersectionGraph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(Vertex u, Vertex v) const;

  // Undirected edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const IntersectionGraph&, const IntersectionGraph&) = default;

 private:
  friend IntersectionGraph project(const BipartiteGraph& b);
  friend IntersectionGraph sample_intersection_graph(const GraphParams& params,
                                                     std::uint64_t seed);
  friend IntersectionGraph thin(const IntersectionGraph& g, double p, std::uint64_t seed);

  IntersectionGraph(std::vector<std::size_t> offsets, std::vector<Vertex> neighbors)
      : offsets_(std::move(offsets)), neighbors_(std::move(neighbors)) {}

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
};

/// Samples memberships: each group draws a Binomial(n, gamma/n) size and then
/// that many distinct individuals uniformly. Deterministic for a fixed seed.
BipartiteGraph sample_bipartite(const GraphParams& params, std::uint64_t seed);

/// Connects two individuals iff they share at least one group.
IntersectionGraph project(const BipartiteGraph& b);

/// Keeps each edge independently with probability p (coin = edge_coin(seed, u, v)).
IntersectionGraph thin(const IntersectionGraph& g, double p, std::uint64_t seed);

// Convenience: sample_bipartite followed by project.
IntersectionGraph sample_intersection_graph(const GraphParams& params, std::uint64_t seed);

}  // namespace rigepi
