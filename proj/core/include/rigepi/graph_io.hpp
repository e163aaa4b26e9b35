#pragma once

#include <iosfwd>

#include "rigepi/graph.hpp"

namespace rigepi {

// "# n=<n> edges=<E>" header, then one "u v" line per edge, u < v, sorted.
void write_edge_list(std::ostream& out, const IntersectionGraph& g);
IntersectionGraph read_edge_list(std::istream& in);

// One line per group with space-separated member indices.
void write_memberships(std::ostream& out, const BipartiteGraph& b);

}  // namespace rigepi
