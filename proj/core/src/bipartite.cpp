#include "rigepi/graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "group_stream.hpp"

namespace rigepi {

BipartiteGraph::BipartiteGraph(GraphParams params, std::vector<std::vector<Vertex>> members)
    : params_(params), members_(std::move(members)) {
  if (members_.size() != static_cast<std::size_t>(params_.group_count())) {
    throw std::invalid_argument("member list count must equal the group count");
  }
  const auto n = static_cast<std::size_t>(params_.n());
  std::vector<std::size_t> counts(n + 1, 0);
  for (const auto& group : members_) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (group[i] >= n) throw std::invalid_argument("member index out of range");
      if (i > 0 && group[i] <= group[i - 1]) {
        throw std::invalid_argument("member lists must be sorted and duplicate free");
      }
      ++counts[group[i] + 1];
    }
  }
  for (std::size_t v = 0; v < n; ++v) counts[v + 1] += counts[v];
  group_offsets_ = counts;
  group_index_.resize(counts[n]);
  for (std::size_t a = 0; a < members_.size(); ++a) {
    for (Vertex v : members_[a]) group_index_[counts[v]++] = static_cast<std::uint32_t>(a);
  }
}

std::span<const std::uint32_t> BipartiteGraph::groups_of(Vertex individual) const {
  return {group_index_.data() + group_offsets_[individual],
          group_index_.data() + group_offsets_[individual + 1]};
}

BipartiteGraph sample_bipartite(const GraphParams& params, std::uint64_t seed) {
  std::vector<std::vector<Vertex>> members(static_cast<std::size_t>(params.group_count()));
  detail::for_each_group(params, seed, [&](std::uint64_t a, const std::vector<Vertex>& group) {
    members[a] = group;
  });
  return BipartiteGraph(params, std::move(members));
}

}  // namespace rigepi
