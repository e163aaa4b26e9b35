#include "rigepi/epidemic.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "rigepi/params.hpp"
#include "rigepi/rng.hpp"

namespace rigepi {

namespace {

void check_start(const IntersectionGraph& g, double p, Vertex index) {
  check_probability(p);
  if (index >= g.vertex_count()) throw std::out_of_range("index case out of range");
}

}  // namespace

EpidemicOutcome reed_frost_run(const IntersectionGraph& g, double p, Vertex index,
                               std::uint64_t seed, bool record_set) {
  check_start(g, p, index);
  enum class State : std::uint8_t { kSusceptible, kInfective, kRemoved };
  std::vector<State> state(g.vertex_count(), State::kSusceptible);

  EpidemicOutcome out;
  std::vector<Vertex> infectives{index};
  std::vector<Vertex> ever{index};
  state[index] = State::kInfective;
  out.generations.push_back(1);

  std::vector<Vertex> next;
  while (!infectives.empty()) {
    next.clear();
    for (Vertex i : infectives) {
      for (Vertex w : g.neighbors(i)) {
        if (state[w] != State::kSusceptible) continue;
        if (edge_coin(seed, i, w) < p) {
          state[w] = State::kInfective;
          next.push_back(w);
        }
      }
    }
    // Infectives of generation t are removed at t + 1.
    for (Vertex i : infectives) state[i] = State::kRemoved;
    if (!next.empty()) {
      out.generations.push_back(next.size());
      if (record_set) ever.insert(ever.end(), next.begin(), next.end());
    }
    infectives.swap(next);
  }

  for (auto c : out.generations) out.final_size += c;
  if (record_set) {
    std::sort(ever.begin(), ever.end());
    out.infected_set = std::move(ever);
  }
  return out;
}

EpidemicOutcome percolation_cluster(const IntersectionGraph& g, double p, Vertex index,
                                    std::uint64_t seed, bool record_set) {
  check_start(g, p, index);
  constexpr std::uint32_t kUnreached = ~std::uint32_t{0};
  std::vector<std::uint32_t> level(g.vertex_count(), kUnreached);
  std::deque<Vertex> queue{index};
  level[index] = 0;

  EpidemicOutcome out;
  std::vector<Vertex> cluster;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    if (level[v] >= out.generations.size()) out.generations.push_back(0);
    ++out.generations[level[v]];
    if (record_set) cluster.push_back(v);
    for (Vertex w : g.neighbors(v)) {
      if (level[w] != kUnreached) continue;
      if (edge_coin(seed, v, w) < p) {
        level[w] = level[v] + 1;
        queue.push_back(w);
      }
    }
  }

  for (auto c : out.generations) out.final_size += c;
  if (record_set) {
    std::sort(cluster.begin(), cluster.end());
    out.infected_set = std::move(cluster);
  }
  return out;
}

}  // namespace rigepi
