#include "rigepi/motifs.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "rigepi/error.hpp"

namespace rigepi {

std::uint64_t census4_work_bound(const IntersectionGraph& g) {
  std::uint64_t total = 0;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (v <= u) continue;
      const std::uint64_t x = g.degree(u) + g.degree(v) - 2;
      total += x * (x - (x > 0 ? 1 : 0)) / 2;
    }
  }
  return total;
}

namespace {

struct Candidate {
  Vertex id;
  bool near_u;
  bool near_v;
};

// Adjacency among four vertices, indexed by position in `ids`.
struct Quad {
  std::array<Vertex, 4> ids;
  std::array<std::array<bool, 4>, 4> adj{};

  int edge_count() const {
    int e = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) e += adj[a][b];
    return e;
  }

  // Lexicographically smallest edge (by vertex id) whose neighbourhood covers
  // the other two vertices.
  std::pair<Vertex, Vertex> first_generating_edge() const {
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return ids[a] < ids[b]; });
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const int a = order[i];
        const int b = order[j];
        if (!adj[a][b]) continue;
        bool covers = true;
        for (int o = 0; o < 4 && covers; ++o) {
          if (o != a && o != b) covers = adj[a][o] || adj[b][o];
        }
        if (covers) return {ids[a], ids[b]};
      }
    }
    return {ids[0], ids[0]};
  }
};

}  // namespace

MotifCounts census4(const IntersectionGraph& g, const CensusOptions& options) {
  const std::uint64_t bound = census4_work_bound(g);
  if (bound > options.budget) {
    throw CapacityError("census4: enumeration bound " + std::to_string(bound) +
                        " exceeds budget " + std::to_string(options.budget));
  }

  MotifCounts counts;
  std::vector<Candidate> extension;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    const auto nu = g.neighbors(u);
    for (Vertex v : nu) {
      if (v <= u) continue;
      const auto nv = g.neighbors(v);

      extension.clear();
      auto a = nu.begin();
      auto b = nv.begin();
      while (a != nu.end() || b != nv.end()) {
        Candidate c{};
        if (b == nv.end() || (a != nu.end() && *a < *b)) {
          c = {*a++, true, false};
        } else if (a == nu.end() || *b < *a) {
          c = {*b++, false, true};
        } else {
          c = {*a, true, true};
          ++a;
          ++b;
        }
        if (c.id != u && c.id != v) extension.push_back(c);
      }

      for (std::size_t i = 0; i < extension.size(); ++i) {
        for (std::size_t j = i + 1; j < extension.size(); ++j) {
          const Candidate& w = extension[i];
          const Candidate& x = extension[j];
          Quad q{{u, v, w.id, x.id}};
          q.adj[0][1] = true;
          q.adj[0][2] = w.near_u;
          q.adj[1][2] = w.near_v;
          q.adj[0][3] = x.near_u;
          q.adj[1][3] = x.near_v;
          q.adj[2][3] = g.has_edge(w.id, x.id);
          for (int r = 0; r < 4; ++r)
            for (int s = r + 1; s < 4; ++s) q.adj[s][r] = q.adj[r][s];

          if (q.first_generating_edge() != std::pair<Vertex, Vertex>{u, v}) continue;
          ++counts.four_sets_scanned;
          const int e = q.edge_count();
          if (e == 6) {
            ++counts.k4;
          } else if (e == 5) {
            ++counts.k4_prime;
          }
        }
      }
    }
  }
  return counts;
}

}  // namespace rigepi
