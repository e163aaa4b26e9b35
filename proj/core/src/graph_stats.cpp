#include "rigepi/graph_stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rigepi/rng.hpp"

namespace rigepi {

std::map<std::size_t, std::size_t> degree_histogram(const IntersectionGraph& g) {
  std::map<std::size_t, std::size_t> hist;
  for (Vertex v = 0; v < g.vertex_count(); ++v) ++hist[g.degree(v)];
  return hist;
}

std::vector<double> histogram_pmf(const std::map<std::size_t, std::size_t>& hist,
                                  std::size_t vertex_count) {
  if (hist.empty() || vertex_count == 0) return {};
  std::vector<double> pmf(hist.rbegin()->first + 1, 0.0);
  for (const auto& [degree, count] : hist) {
    pmf[degree] = static_cast<double>(count) / static_cast<double>(vertex_count);
  }
  return pmf;
}

double mean_degree(const IntersectionGraph& g) {
  if (g.vertex_count() == 0) return 0.0;
  return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.vertex_count());
}

TriadCounts count_triads(const IntersectionGraph& g) {
  TriadCounts counts;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    const auto nu = g.neighbors(u);
    const std::uint64_t d = nu.size();
    counts.wedges += d * (d - (d > 0 ? 1 : 0)) / 2;
    // Triangles u < v < w, found by merging N(u) and N(v) above v.
    for (auto it = std::upper_bound(nu.begin(), nu.end(), u); it != nu.end(); ++it) {
      const Vertex v = *it;
      const auto nv = g.neighbors(v);
      auto a = std::upper_bound(nu.begin(), nu.end(), v);
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++counts.triangles;
          ++a;
          ++b;
        }
      }
    }
  }
  return counts;
}

namespace {

std::optional<double> sampled_transitivity(const IntersectionGraph& g,
                                           const TransitivityOptions& options) {
  const std::size_t n = g.vertex_count();
  std::vector<double> weights(n);
  bool any = false;
  for (Vertex v = 0; v < n; ++v) {
    const double d = static_cast<double>(g.degree(v));
    weights[v] = d * (d - 1.0) / 2.0;
    any = any || weights[v] > 0.0;
  }
  if (!any || options.sampled_wedges == 0) return std::nullopt;
  Rng rng(options.seed);
  std::discrete_distribution<std::size_t> centre(weights.begin(), weights.end());
  std::uint64_t closed = 0;
  for (std::uint64_t s = 0; s < options.sampled_wedges; ++s) {
    const auto v = static_cast<Vertex>(centre(rng));
    const auto nv = g.neighbors(v);
    std::uniform_int_distribution<std::size_t> pick(0, nv.size() - 1);
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    while (j == i) j = pick(rng);
    if (g.has_edge(nv[i], nv[j])) ++closed;
  }
  return static_cast<double>(closed) / static_cast<double>(options.sampled_wedges);
}

}  // namespace

std::optional<double> transitivity(const IntersectionGraph& g,
                                   const TransitivityOptions& options) {
  if (g.vertex_count() > options.exact_vertex_limit) return sampled_transitivity(g, options);
  const TriadCounts t = count_triads(g);
  if (t.wedges == 0) return std::nullopt;
  return 3.0 * static_cast<double>(t.triangles) / static_cast<double>(t.wedges);
}

bool ball_is_tree(const BipartiteGraph& b, Vertex root, int radius) {
  if (root >= b.individual_count()) throw std::out_of_range("root out of range");
  if (radius < 0) throw std::invalid_argument("radius must be non-negative");

  constexpr int kUnseen = -1;
  std::vector<int> person_depth(static_cast<std::size_t>(b.individual_count()), kUnseen);
  std::vector<int> group_depth(b.group_count(), kUnseen);
  std::vector<std::uint32_t> ball_groups;
  std::vector<Vertex> frontier{root};
  person_depth[root] = 0;
  std::size_t vertices = 1;

  // Even depths hold individuals, odd depths hold groups.
  for (int depth = 1; depth <= radius && !frontier.empty(); depth += 2) {
    std::vector<std::uint32_t> groups;
    for (Vertex v : frontier) {
      for (std::uint32_t a : b.groups_of(v)) {
        if (group_depth[a] == kUnseen) {
          group_depth[a] = depth;
          groups.push_back(a);
        }
      }
    }
    vertices += groups.size();
    ball_groups.insert(ball_groups.end(), groups.begin(), groups.end());
    frontier.clear();
    if (depth + 1 > radius) break;
    for (std::uint32_t a : groups) {
      for (Vertex w : b.members(a)) {
        if (person_depth[w] == kUnseen) {
          person_depth[w] = depth + 1;
          frontier.push_back(w);
        }
      }
    }
    vertices += frontier.size();
  }

  std::size_t edges = 0;
  for (std::uint32_t a : ball_groups) {
    for (Vertex w : b.members(a)) {
      if (person_depth[w] != kUnseen) ++edges;
    }
  }
  return edges + 1 == vertices;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t len = std::max(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    sum += std::abs(x - y);
  }
  return 0.5 * sum;
}

}  // namespace rigepi
