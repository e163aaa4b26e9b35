#include "rigepi/graph_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rigepi {

void write_edge_list(std::ostream& out, const IntersectionGraph& g) {
  out << "# n=" << g.vertex_count() << " edges=" << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

IntersectionGraph read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("edge list: missing header");
  std::size_t n = 0;
  std::size_t declared = 0;
  if (std::sscanf(line.c_str(), "# n=%zu edges=%zu", &n, &declared) != 2) {
    throw std::runtime_error("edge list: malformed header '" + line + "'");
  }
  std::vector<Edge> edges;
  edges.reserve(declared);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!(fields >> u >> v) || u >= n || v >= n) {
      throw std::runtime_error("edge list: bad edge line '" + line + "'");
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  auto g = IntersectionGraph::from_edges(n, edges);
  if (g.edge_count() != declared) {
    throw std::runtime_error("edge list: header declares " + std::to_string(declared) +
                             " edges, found " + std::to_string(g.edge_count()));
  }
  return g;
}

void write_memberships(std::ostream& out, const BipartiteGraph& b) {
  for (const auto& group : b.memberships()) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i > 0) out << ' ';
      out << group[i];
    }
    out << '\n';
  }
}

}  // namespace rigepi
