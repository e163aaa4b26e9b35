#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "rigepi/graph.hpp"
#include "rigepi/graph_io.hpp"
#include "rigepi/graph_stats.hpp"
#include "rigepi/params.hpp"
#include "rigepi/theory.hpp"

using namespace rigepi;

namespace {

IntersectionGraph graph_of(std::size_t n, std::vector<Edge> edges) {
  return IntersectionGraph::from_edges(n, edges);
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("bipartite constructor validates member lists") {
  const auto params = GraphParams::make(5, 0.4, 1.0);  // m = 2
  CHECK_NOTHROW(BipartiteGraph(params, {{0, 1, 2}, {}}));
  CHECK_THROWS_AS(BipartiteGraph(params, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(BipartiteGraph(params, {{1, 0}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(BipartiteGraph(params, {{1, 1}, {}}), std::invalid_argument);
  CHECK_THROWS_AS(BipartiteGraph(params, {{5}, {}}), std::invalid_argument);

  const BipartiteGraph b(params, {{0, 1, 2}, {2, 4}});
  CHECK(b.membership_count() == 5);
  const auto g2 = b.groups_of(2);
  CHECK(std::vector<std::uint32_t>(g2.begin(), g2.end()) == std::vector<std::uint32_t>{0, 1});
  CHECK(b.groups_of(3).empty());
}

TEST_CASE("projection is the union of group cliques") {
  const auto params = GraphParams::make(6, 0.5, 1.0);  // m = 3
  const BipartiteGraph b(params, {{0, 1, 2}, {2, 3}, {0, 1}});
  const auto g = project(b);
  CHECK(g.vertex_count() == 6);
  CHECK(g.edge_count() == 4);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  CHECK(g.degree(5) == 0);
  CHECK(g.has_edge(3, 2));
  CHECK_FALSE(g.has_edge(0, 3));
}

TEST_CASE("from_edges drops loops and duplicates") {
  const auto g = graph_of(4, {{0, 1}, {1, 0}, {2, 2}, {3, 1}});
  CHECK(g.edge_count() == 2);
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 3}});
  CHECK_THROWS_AS(graph_of(2, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("sampling is reproducible and matches the projection of the sampled bipartite graph") {
  for (double c : {0.05, 0.5, 0.9}) {
    const auto s = solve_params(c, 3.0);
    const auto params = GraphParams::make(800, s.beta, s.gamma);
    const auto b = sample_bipartite(params, 99);
    CHECK(sample_intersection_graph(params, 99) == project(b));
    CHECK(sample_intersection_graph(params, 99) == sample_intersection_graph(params, 99));
    CHECK_FALSE(sample_intersection_graph(params, 99) == sample_intersection_graph(params, 100));
  }
}

TEST_CASE("group sizes follow Binomial(n, gamma / n)") {
  // Sparse groups (mostly empty) and dense groups exercise both size samplers.
  for (double gamma : {0.05, 0.8, 6.0}) {
    const std::int64_t n = 400;
    const auto params = GraphParams::make(n, 20.0 / gamma, gamma);
    const double r = gamma / static_cast<double>(n);
    std::vector<double> counts(12, 0.0);
    double groups = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto b = sample_bipartite(params, seed);
      for (std::size_t a = 0; a < b.group_count(); ++a) {
        const std::size_t size = b.members(a).size();
        if (size < counts.size()) counts[size] += 1.0;
        groups += 1.0;
      }
    }
    for (std::size_t k = 0; k < 5; ++k) {
      const double expect =
          std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                   static_cast<double>(k) * std::log(r) + static_cast<double>(n - k) * std::log1p(-r));
      const double se = std::sqrt(groups * expect * (1 - expect)) + 1.0;
      CHECK(std::fabs(counts[k] - groups * expect) < 5.0 * se);
    }
  }
}

TEST_CASE("thinning keeps a coupled subset of edges") {
  const auto g = sample_intersection_graph(GraphParams::make(500, 0.25, 4.0), 3);
  CHECK(thin(g, 1.0, 5) == g);
  CHECK(thin(g, 0.0, 5).edge_count() == 0);
  const auto lo = thin(g, 0.3, 5);
  const auto hi = thin(g, 0.6, 5);
  for (const auto& [u, v] : lo.edges()) CHECK(hi.has_edge(u, v));
  for (const auto& [u, v] : hi.edges()) CHECK(g.has_edge(u, v));
  const double kept = static_cast<double>(hi.edge_count()) / static_cast<double>(g.edge_count());
  CHECK(kept == doctest::Approx(0.6).epsilon(0.1));
  CHECK(thin(g, 0.6, 5) == hi);
}

TEST_CASE("edge list round trip") {
  const auto params = GraphParams::make(300, 0.25, 4.0);
  const auto b = sample_bipartite(params, 8);
  const auto g = project(b);
  std::stringstream text;
  write_edge_list(text, g);
  CHECK(read_edge_list(text) == g);

  std::stringstream bad("# n=3 edges=2\n0 1\n");
  CHECK_THROWS(read_edge_list(bad));
  std::stringstream none("0 1\n");
  CHECK_THROWS(read_edge_list(none));

  std::stringstream groups;
  write_memberships(groups, b);
  std::size_t lines = 0;
  std::string line;
  while (std::getline(groups, line)) ++lines;
  CHECK(lines == b.group_count());
}

TEST_CASE("degree histogram and mean degree") {
  const auto g = graph_of(5, {{0, 1}, {0, 2}, {0, 3}});
  const auto hist = degree_histogram(g);
  CHECK(hist.at(0) == 1);
  CHECK(hist.at(1) == 3);
  CHECK(hist.at(3) == 1);
  const auto pmf = histogram_pmf(hist, 5);
  CHECK(pmf.size() == 4);
  CHECK(pmf[2] == 0.0);
  CHECK(pmf[1] == doctest::Approx(0.6));
  CHECK(mean_degree(g) == doctest::Approx(1.2));
}

TEST_CASE("transitivity on small graphs") {
  CHECK(transitivity(graph_of(3, {{0, 1}, {1, 2}, {0, 2}})).value() == doctest::Approx(1.0));
  CHECK(transitivity(graph_of(4, {{0, 1}, {0, 2}, {0, 3}})).value() == 0.0);
  CHECK_FALSE(transitivity(graph_of(4, {{0, 1}, {2, 3}})).has_value());
  // Triangle plus pendant: 1 triangle, 5 wedges.
  const auto g = graph_of(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  const auto t = count_triads(g);
  CHECK(t.triangles == 1);
  CHECK(t.wedges == 5);
  CHECK(transitivity(g).value() == doctest::Approx(0.6));
}

TEST_CASE("sampled transitivity agrees with the exact value") {
  const auto g = sample_intersection_graph(GraphParams::make(20000, 0.25, 4.0), 1);
  const double exact = transitivity(g).value();
  TransitivityOptions opts;
  opts.exact_vertex_limit = 10;
  opts.sampled_wedges = 400000;
  opts.seed = 4;
  CHECK(transitivity(g, opts).value() == doctest::Approx(exact).epsilon(0.02));
}

TEST_CASE("ball tree check") {
  const auto params = GraphParams::make(6, 0.5, 1.0);
  // Path individual-group alternation: 0-A-1-B-2, no cycle.
  const BipartiteGraph path(params, {{0, 1}, {1, 2}, {}});
  CHECK(ball_is_tree(path, 0, 10));
  // Two groups sharing two individuals form a 4-cycle 0-A-1-B-0.
  const BipartiteGraph cycle(params, {{0, 1}, {0, 1}, {}});
  CHECK_FALSE(ball_is_tree(cycle, 0, 2));
  CHECK(ball_is_tree(cycle, 0, 0));
  // Cycle through individuals 1, 2, 3; its last group sits at distance 5 from 0.
  const auto params8 = GraphParams::make(8, 0.5, 1.0);
  const BipartiteGraph far(params8, {{0, 1}, {1, 2}, {2, 3}, {1, 3}});
  CHECK(ball_is_tree(far, 0, 4));
  CHECK_FALSE(ball_is_tree(far, 0, 5));
}

TEST_CASE("sampled degree law approaches the compound Poisson law") {
  const auto params = GraphParams::make(50000, 0.25, 4.0);
  const auto g = sample_intersection_graph(params, 17);
  const auto empirical = histogram_pmf(degree_histogram(g), g.vertex_count());
  const auto law = compound_poisson_degree_pmf(0.25, 4.0, empirical.size() + 40);
  CHECK(total_variation(empirical, law) < 0.03);
}

TEST_CASE("total variation") {
  CHECK(total_variation({0.5, 0.5}, {0.5, 0.5}) == 0.0);
  CHECK(total_variation({1.0}, {0.0, 1.0}) == doctest::Approx(1.0));
  CHECK(total_variation({0.2, 0.8}, {0.4, 0.5, 0.1}) == doctest::Approx(0.3));
}

}
