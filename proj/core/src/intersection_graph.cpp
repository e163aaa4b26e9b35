#include "rigepi/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "rigepi/params.hpp"
#include "rigepi/rng.hpp"
#include "group_stream.hpp"

namespace rigepi {

namespace {

// Sorts and deduplicates each vertex's slice of a counting-sort layout,
// compacting into CSR.
void compact_rows(std::vector<std::size_t>& offsets, std::vector<Vertex>& neighbors) {
  const std::size_t n = offsets.size() - 1;
  std::size_t write = 0;
  std::size_t begin = offsets[0];
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t end = offsets[v + 1];
    auto first = neighbors.begin() + static_cast<std::ptrdiff_t>(begin);
    auto last = neighbors.begin() + static_cast<std::ptrdiff_t>(end);
    std::sort(first, last);
    last = std::unique(first, last);
    offsets[v] = write;
    for (auto it = first; it != last; ++it) neighbors[write++] = *it;
    begin = end;
  }
  offsets[n] = write;
  neighbors.resize(write);
  neighbors.shrink_to_fit();
}

}  // namespace

IntersectionGraph IntersectionGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> offsets(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) continue;
    ++offsets[u + 1];
    ++offsets[v + 1];
  }
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  std::vector<Vertex> neighbors(offsets[n]);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    neighbors[cursor[u]++] = v;
    neighbors[cursor[v]++] = u;
  }
  compact_rows(offsets, neighbors);
  return IntersectionGraph(std::move(offsets), std::move(neighbors));
}

bool IntersectionGraph::has_edge(Vertex u, Vertex v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> IntersectionGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

namespace {

// Union of the cliques spanned by each group.
template <typename Groups>
void clique_rows(std::size_t n, const Groups& groups, std::vector<std::size_t>& offsets,
                 std::vector<Vertex>& neighbors) {
  offsets.assign(n + 1, 0);
  for (const auto& group : groups) {
    for (Vertex v : group) offsets[v + 1] += group.size() - 1;
  }
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  neighbors.resize(offsets[n]);
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& group : groups) {
    for (Vertex v : group) {
      for (Vertex w : group) {
        if (w != v) neighbors[cursor[v]++] = w;
      }
    }
  }
  compact_rows(offsets, neighbors);
}

}  // namespace

IntersectionGraph project(const BipartiteGraph& b) {
  std::vector<std::size_t> offsets;
  std::vector<Vertex> neighbors;
  clique_rows(static_cast<std::size_t>(b.individual_count()), b.memberships(), offsets, neighbors);
  return IntersectionGraph(std::move(offsets), std::move(neighbors));
}

IntersectionGraph thin(const IntersectionGraph& g, double p, std::uint64_t seed) {
  check_probability(p);
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<Vertex> neighbors;
  neighbors.reserve(g.neighbors_.size());
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (edge_coin(seed, u, v) < p) neighbors.push_back(v);
    }
    offsets[u + 1] = neighbors.size();
  }
  neighbors.shrink_to_fit();
  return IntersectionGraph(std::move(offsets), std::move(neighbors));
}

IntersectionGraph sample_intersection_graph(const GraphParams& params, std::uint64_t seed) {
  // Same stream as sample_bipartite; groups of size one add no edges.
  std::vector<Vertex> flat;
  std::vector<std::size_t> starts{0};
  detail::for_each_group(params, seed, [&](std::uint64_t, const std::vector<Vertex>& group) {
    if (group.size() < 2) return;
    flat.insert(flat.end(), group.begin(), group.end());
    starts.push_back(flat.size());
  });
  std::vector<std::span<const Vertex>> groups;
  groups.reserve(starts.size() - 1);
  for (std::size_t i = 0; i + 1 < starts.size(); ++i) {
    groups.emplace_back(flat.data() + starts[i], flat.data() + starts[i + 1]);
  }
  std::vector<std::size_t> offsets;
  std::vector<Vertex> neighbors;
  clique_rows(static_cast<std::size_t>(params.n()), groups, offsets, neighbors);
  return IntersectionGraph(std::move(offsets), std::move(neighbors));
}

}  // namespace rigepi
