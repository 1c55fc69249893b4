#include "hkernel/digraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

namespace hkernel {

Digraph::Digraph(std::vector<std::string> names, std::span<const Arc> arcs,
                 bool loops_allowed)
    : names_(std::move(names)),
      arcs_(arcs.begin(), arcs.end()),
      out_(names_.size()),
      in_(names_.size()),
      loops_allowed_(loops_allowed) {
  name_index_.reserve(names_.size());
  for (VertexId v = 0; v < names_.size(); ++v) {
    if (!name_index_.emplace(names_[v], v).second) {
      fail(ErrorCode::duplicate_id, "duplicate vertex '" + names_[v] + "'");
    }
  }
  arc_index_.reserve(arcs_.size());
  for (ArcId a = 0; a < arcs_.size(); ++a) {
    const auto [tail, head] = arcs_[a];
    if (tail >= names_.size() || head >= names_.size()) {
      fail(ErrorCode::unknown_vertex, "arc endpoint out of range");
    }
    if (tail == head && !loops_allowed_) {
      fail(ErrorCode::loop_arc, "loop at '" + names_[tail] + "' is not allowed");
    }
    if (!arc_index_.emplace(key(tail, head), a).second) {
      fail(ErrorCode::parallel_arc, "parallel arc ('" + names_[tail] + "','" +
                                        names_[head] + "')");
    }
    out_[tail].push_back(a);
    in_[head].push_back(a);
  }
}

Digraph Digraph::with_indices(std::size_t vertex_count,
                              std::span<const Arc> arcs, bool loops_allowed) {
  std::vector<std::string> names;
  names.reserve(vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v) names.push_back(std::to_string(v));
  return Digraph(std::move(names), arcs, loops_allowed);
}

std::size_t Digraph::degree(VertexId v) const {
  std::size_t d = out_[v].size() + in_[v].size();
  if (find_arc(v, v)) --d;
  return d;
}

std::optional<ArcId> Digraph::find_arc(VertexId tail, VertexId head) const {
  const auto it = arc_index_.find(key(tail, head));
  if (it == arc_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<VertexId> Digraph::find_vertex(std::string_view name) const {
  const auto it = name_index_.find(std::string(name));
  if (it == name_index_.end()) return std::nullopt;
  return it->second;
}

VertexId Digraph::vertex(std::string_view name) const {
  if (auto v = find_vertex(name)) return *v;
  fail(ErrorCode::unknown_vertex, "unknown vertex '" + std::string(name) + "'");
}

std::optional<VertexId> Subdigraph::local(VertexId parent) const {
  const auto it =
      std::lower_bound(parent_vertex.begin(), parent_vertex.end(), parent);
  if (it == parent_vertex.end() || *it != parent) return std::nullopt;
  return static_cast<VertexId>(it - parent_vertex.begin());
}

VertexSet Subdigraph::to_parent(std::span<const VertexId> local_vertices) const {
  VertexSet out;
  out.reserve(local_vertices.size());
  for (VertexId v : local_vertices) out.push_back(parent_vertex[v]);
  return make_vertex_set(std::move(out));
}

Subdigraph arc_induced(const Digraph& g, std::span<const ArcId> arcs) {
  Subdigraph sub;
  std::vector<VertexId> endpoints;
  for (ArcId a : arcs) {
    endpoints.push_back(g.arc(a).tail);
    endpoints.push_back(g.arc(a).head);
  }
  sub.parent_vertex = make_vertex_set(std::move(endpoints));
  sub.parent_arc.assign(arcs.begin(), arcs.end());
  std::sort(sub.parent_arc.begin(), sub.parent_arc.end());
  sub.parent_arc.erase(std::unique(sub.parent_arc.begin(), sub.parent_arc.end()),
                       sub.parent_arc.end());

  std::vector<std::string> names;
  for (VertexId v : sub.parent_vertex) names.push_back(g.name(v));
  std::vector<Arc> local_arcs;
  for (ArcId a : sub.parent_arc) {
    local_arcs.push_back(
        {*sub.local(g.arc(a).tail), *sub.local(g.arc(a).head)});
  }
  sub.graph = Digraph(std::move(names), local_arcs, g.loops_allowed());
  return sub;
}

Subdigraph without_vertices(const Digraph& g, std::span<const VertexId> removed) {
  std::vector<bool> gone(g.vertex_count(), false);
  for (VertexId v : removed) gone[v] = true;
  Subdigraph sub;
  std::vector<std::string> names;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (gone[v]) continue;
    sub.parent_vertex.push_back(v);
    names.push_back(g.name(v));
  }
  std::vector<Arc> local_arcs;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    if (gone[arc.tail] || gone[arc.head]) continue;
    sub.parent_arc.push_back(a);
    local_arcs.push_back({*sub.local(arc.tail), *sub.local(arc.head)});
  }
  sub.graph = Digraph(std::move(names), local_arcs, g.loops_allowed());
  return sub;
}

StrongComponents strong_components(const Digraph& g) {
  const std::size_t n = g.vertex_count();
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), tarjan_comp(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexId> stack;
  std::uint32_t next_index = 0;
  std::uint32_t comp_count = 0;

  // Iterative Tarjan: frame = (vertex, position in its out-arc list).
  std::vector<std::pair<VertexId, std::size_t>> frames;
  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      const auto out = g.out_arcs(v);
      if (pos < out.size()) {
        const VertexId w = g.arc(out[pos++]).head;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const VertexId done = v;
      frames.pop_back();
      if (!frames.empty()) {
        const VertexId parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          tarjan_comp[w] = comp_count;
        } while (w != done);
        ++comp_count;
      }
    }
  }

  // Tarjan emits components in reverse topological order.
  StrongComponents result;
  result.component_of.resize(n);
  result.members.resize(comp_count);
  for (VertexId v = 0; v < n; ++v) {
    const std::uint32_t c = comp_count - 1 - tarjan_comp[v];
    result.component_of[v] = c;
    result.members[c].push_back(v);
  }
  std::set<std::pair<VertexId, VertexId>> arcs;
  for (const Arc& a : g.arcs()) {
    const auto cu = result.component_of[a.tail];
    const auto cv = result.component_of[a.head];
    if (cu != cv) arcs.emplace(cu, cv);
  }
  std::vector<Arc> cond_arcs;
  for (const auto& [u, v] : arcs) cond_arcs.push_back({u, v});
  std::vector<std::string> names;
  for (std::uint32_t c = 0; c < comp_count; ++c) names.push_back("C" + std::to_string(c));
  result.condensation = Digraph(std::move(names), cond_arcs, false);
  return result;
}

bool is_strongly_connected(const Digraph& g) {
  if (g.empty()) {
    fail(ErrorCode::invalid_argument,
         "strong connectivity is undefined for the empty digraph");
  }
  return strong_components(g).members.size() == 1;
}

bool is_unilateral(const Digraph& g) {
  const auto sc = strong_components(g);
  const Digraph& cond = sc.condensation;
  // A DAG has a Hamiltonian path iff consecutive vertices of its (then
  // unique) topological order are adjacent.
  for (VertexId c = 0; c + 1 < cond.vertex_count(); ++c) {
    if (!cond.has_arc(c, c + 1)) return false;
  }
  return true;
}

bool is_symmetric(const Digraph& g) {
  for (const Arc& a : g.arcs()) {
    if (!g.has_arc(a.head, a.tail)) return false;
  }
  return true;
}

VertexSet sinks(const Digraph& g) {
  VertexSet out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    bool sink = true;
    for (ArcId a : g.out_arcs(v)) {
      if (g.arc(a).head != v) {
        sink = false;
        break;
      }
    }
    if (sink) out.push_back(v);
  }
  return out;
}

VertexSet isolated_vertices(const Digraph& g) {
  VertexSet out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) out.push_back(v);
  }
  return out;
}

namespace {

VertexSet search(const Digraph& g, std::span<const VertexId> starts,
                 bool forward) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<VertexId> queue;
  for (VertexId s : starts) {
    if (s >= g.vertex_count()) fail(ErrorCode::unknown_vertex, "vertex out of range");
    if (!seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const VertexId v = queue[i];
    for (ArcId a : forward ? g.out_arcs(v) : g.in_arcs(v)) {
      const VertexId w = forward ? g.arc(a).head : g.arc(a).tail;
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return make_vertex_set(std::move(queue));
}

}  // namespace

VertexSet reachable_set(const Digraph& g, std::span<const VertexId> sources) {
  return search(g, sources, true);
}

VertexSet reaching_set(const Digraph& g, std::span<const VertexId> targets) {
  return search(g, targets, false);
}

std::vector<Distance> distances_from(const Digraph& g, VertexId u) {
  if (u >= g.vertex_count()) fail(ErrorCode::unknown_vertex, "vertex out of range");
  std::vector<Distance> dist(g.vertex_count());
  std::deque<VertexId> queue{u};
  dist[u] = Distance(0);
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (ArcId a : g.out_arcs(v)) {
      const VertexId w = g.arc(a).head;
      if (!dist[w].is_finite()) {
        dist[w] = Distance(dist[v].value() + 1);
        queue.push_back(w);
      }
    }
  }
  return dist;
}

Distance shortest_walk_length(const Digraph& g, VertexId u, VertexId v) {
  if (v >= g.vertex_count()) fail(ErrorCode::unknown_vertex, "vertex out of range");
  return distances_from(g, u)[v];
}

DistanceTable::DistanceTable(const Digraph& g) : n_(g.vertex_count()) {
  rows_.reserve(n_ * n_);
  for (VertexId u = 0; u < n_; ++u) {
    const auto row = distances_from(g, u);
    rows_.insert(rows_.end(), row.begin(), row.end());
  }
}

Distance min_nonloop_cycle_length(const Digraph& g) {
  Distance best = Distance::infinite();
  std::vector<std::optional<std::vector<Distance>>> cache(g.vertex_count());
  for (const Arc& a : g.arcs()) {
    if (a.tail == a.head) continue;
    if (!cache[a.head]) cache[a.head] = distances_from(g, a.head);
    const Distance back = (*cache[a.head])[a.tail];
    if (back.is_finite()) best = std::min(best, Distance(back.value() + 1));
  }
  return best;
}

VertexSet proper_out_neighborhood(const Digraph& g, std::span<const VertexId> s) {
  std::vector<bool> in_s(g.vertex_count(), false);
  for (VertexId v : s) in_s[v] = true;
  std::vector<VertexId> out;
  for (VertexId v : s) {
    for (ArcId a : g.out_arcs(v)) {
      const VertexId w = g.arc(a).head;
      if (!in_s[w]) out.push_back(w);
    }
  }
  return make_vertex_set(std::move(out));
}

bool contains(const VertexSet& set, VertexId v) {
  return std::binary_search(set.begin(), set.end(), v);
}

VertexSet make_vertex_set(std::vector<VertexId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

}  // namespace hkernel
