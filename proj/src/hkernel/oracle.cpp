#include "hkernel/oracle.hpp"

#include <deque>
#include <functional>
#include <limits>

#include "hkernel/subsets.hpp"

namespace hkernel {

ArcStateGraph::ArcStateGraph(const ColoredDigraph& d)
    : next_(d.graph().arc_count()) {
  const Digraph& g = d.graph();
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    for (ArcId b : g.out_arcs(g.arc(a).head)) {
      next_[a].push_back({b, static_cast<std::uint8_t>(d.compatible(a, b) ? 0 : 1)});
    }
  }
}

std::vector<Distance> min_h_lengths_from(const ColoredDigraph& d,
                                         const ArcStateGraph& states, VertexId u) {
  const Digraph& g = d.graph();
  if (u >= g.vertex_count()) fail(ErrorCode::unknown_vertex, "vertex out of range");
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> cost(states.state_count(), kUnseen);
  std::deque<ArcId> queue;
  for (ArcId a : g.out_arcs(u)) {
    cost[a] = 0;
    queue.push_back(a);
  }
  while (!queue.empty()) {
    const ArcId a = queue.front();
    queue.pop_front();
    for (const auto& [b, weight] : states.transitions(a)) {
      const std::uint32_t candidate = cost[a] + weight;
      if (candidate < cost[b]) {
        cost[b] = candidate;
        if (weight == 0) {
          queue.push_front(b);
        } else {
          queue.push_back(b);
        }
      }
    }
  }
  std::vector<Distance> out(g.vertex_count());
  for (ArcId a = 0; a < states.state_count(); ++a) {
    if (cost[a] == kUnseen) continue;
    const Distance candidate(cost[a] + 1);
    Distance& slot = out[g.arc(a).head];
    if (candidate < slot) slot = candidate;
  }
  out[u] = Distance(0);
  return out;
}

std::vector<Distance> min_h_lengths_from(const ColoredDigraph& d, VertexId u) {
  return min_h_lengths_from(d, ArcStateGraph(d), u);
}

Distance min_h_length(const ColoredDigraph& d, VertexId u, VertexId v) {
  if (u == v) {
    fail(ErrorCode::invalid_argument, "minimum H-length needs distinct endpoints");
  }
  if (v >= d.graph().vertex_count()) {
    fail(ErrorCode::unknown_vertex, "vertex out of range");
  }
  return min_h_lengths_from(d, u)[v];
}

VertexSet h_walk_reachable(const ColoredDigraph& d, VertexId u) {
  const std::vector<Distance> dist = min_h_lengths_from(d, u);
  VertexSet out;
  for (VertexId v = 0; v < dist.size(); ++v) {
    if (v != u && dist[v] == Distance(1)) out.push_back(v);
  }
  return out;
}

HDistanceTable::HDistanceTable(const ColoredDigraph& d)
    : n_(d.graph().vertex_count()) {
  const ArcStateGraph states(d);
  rows_.reserve(n_ * n_);
  for (VertexId u = 0; u < n_; ++u) {
    const auto row = min_h_lengths_from(d, states, u);
    rows_.insert(rows_.end(), row.begin(), row.end());
  }
}

std::string KernelViolation::explain(const Digraph& g, unsigned k,
                                     unsigned l) const {
  if (kind == Kind::independence) {
    return "not (" + std::to_string(k) + ",H)-independent: a walk from " +
           g.name(from) + " to " + g.name(*to) + " has H-length " +
           h_length.to_string();
  }
  std::string message = "not (" + std::to_string(l) + ",H)-absorbent: " +
                        g.name(from) + " reaches the set with H-length " +
                        h_length.to_string();
  if (to) message += " at best (via " + g.name(*to) + ")";
  return message;
}

namespace {

void require_members(const ColoredDigraph& d, const VertexSet& s) {
  for (VertexId v : s) {
    if (v >= d.graph().vertex_count()) {
      fail(ErrorCode::unknown_vertex, "set member out of range");
    }
  }
}

std::optional<KernelViolation> first_dependent_pair(
    const VertexSet& s, unsigned k,
    const std::function<Distance(VertexId, VertexId)>& dist) {
  for (VertexId u : s) {
    for (VertexId v : s) {
      if (u == v) continue;
      const Distance h = dist(u, v);
      if (!h.at_least(k)) {
        return KernelViolation{KernelViolation::Kind::independence, u, v, h};
      }
    }
  }
  return std::nullopt;
}

std::optional<KernelViolation> first_unabsorbed(
    std::size_t n, const VertexSet& s, unsigned l,
    const std::function<Distance(VertexId, VertexId)>& dist) {
  for (VertexId x = 0; x < n; ++x) {
    if (contains(s, x)) continue;
    Distance best;
    std::optional<VertexId> nearest;
    for (VertexId t : s) {
      const Distance h = dist(x, t);
      if (h < best) {
        best = h;
        nearest = t;
      }
    }
    if (!best.at_most(l)) {
      return KernelViolation{KernelViolation::Kind::absorbency, x, nearest, best};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<KernelViolation> verify_k_independent_by_walks(
    const ColoredDigraph& d, const VertexSet& s, unsigned k) {
  require_members(d, s);
  const ArcStateGraph states(d);
  std::vector<std::vector<Distance>> rows(d.graph().vertex_count());
  return first_dependent_pair(s, k, [&](VertexId u, VertexId v) {
    if (rows[u].empty()) rows[u] = min_h_lengths_from(d, states, u);
    return rows[u][v];
  });
}

std::optional<KernelViolation> verify_l_absorbent_by_walks(
    const ColoredDigraph& d, const VertexSet& s, unsigned l) {
  require_members(d, s);
  const ArcStateGraph states(d);
  std::vector<Distance> row;
  VertexId row_owner = 0;
  bool have_row = false;
  return first_unabsorbed(d.graph().vertex_count(), s, l,
                          [&](VertexId x, VertexId t) {
                            if (!have_row || row_owner != x) {
                              row = min_h_lengths_from(d, states, x);
                              row_owner = x;
                              have_row = true;
                            }
                            return row[t];
                          });
}

std::optional<KernelViolation> verify_klh_kernel(const ColoredDigraph& d,
                                                 const VertexSet& s, unsigned k,
                                                 unsigned l) {
  if (auto v = verify_k_independent_by_walks(d, s, k)) return v;
  return verify_l_absorbent_by_walks(d, s, l);
}

std::vector<VertexSet> exhaustive_klh_kernels(const ColoredDigraph& d, unsigned k,
                                              unsigned l, SearchMode mode,
                                              std::size_t limit) {
  if (k < 2) fail(ErrorCode::invalid_argument, "k must be at least 2");
  if (l < 1) fail(ErrorCode::invalid_argument, "l must be at least 1");
  const std::size_t n = d.graph().vertex_count();
  if (n > limit) {
    fail(ErrorCode::size_limit,
         std::to_string(n) + " vertices exceed the exhaustive search bound of " +
             std::to_string(limit));
  }
  const HDistanceTable table(d);
  const auto dist = [&](VertexId u, VertexId v) { return table(u, v); };
  std::vector<VertexSet> found;
  for_each_subset_by_size(n, [&](const VertexSet& s) {
    if (!first_dependent_pair(s, k, dist) && !first_unabsorbed(n, s, l, dist)) {
      found.push_back(s);
      return mode == SearchMode::all;
    }
    return true;
  });
  return found;
}

}  // namespace hkernel
