#include "hkernel/kernels.hpp"

#include <algorithm>
#include <string>

#include "hkernel/subsets.hpp"

namespace hkernel {

VertexSet kernel_by_paths(const Digraph& g) {
  if (g.empty()) fail(ErrorCode::invalid_argument, "kernel of an empty digraph");
  const StrongComponents sc = strong_components(g);
  VertexSet out;
  for (std::uint32_t comp = 0; comp < sc.members.size(); ++comp) {
    if (sc.condensation.out_degree(comp) == 0) {
      out.push_back(sc.members[comp].front());
    }
  }
  return make_vertex_set(std::move(out));
}

std::optional<PathKernelViolation> verify_kernel_by_paths(const Digraph& g,
                                                          const VertexSet& s) {
  for (VertexId u : s) {
    const VertexId source[] = {u};
    for (VertexId v : reachable_set(g, source)) {
      if (v != u && contains(s, v)) {
        return PathKernelViolation{PathKernelViolation::Kind::independence, u, v};
      }
    }
  }
  const VertexSet absorbed = reaching_set(g, s);
  for (VertexId x = 0; x < g.vertex_count(); ++x) {
    if (!contains(absorbed, x)) {
      return PathKernelViolation{PathKernelViolation::Kind::absorbency, x,
                                 std::nullopt};
    }
  }
  return std::nullopt;
}

namespace {

// Shortest path inside `g` from `start` to the nearest target; ties go to the
// smallest target id.
std::optional<VertexId> nearest_target(const Digraph& g, VertexId start,
                                       const VertexSet& targets) {
  const std::vector<Distance> dist = distances_from(g, start);
  std::optional<VertexId> best;
  for (VertexId t : targets) {
    if (dist[t].is_finite() && (!best || dist[t] < dist[*best])) best = t;
  }
  return best;
}

}  // namespace

ConstrainedKernel constrained_kernel_by_paths(const ColoredDigraph& d,
                                              const HClassPartition& f,
                                              const ClassDigraph& c,
                                              std::span<const ClassId> s) {
  if (!is_walk_preservative(d, f, c)) {
    fail(ErrorCode::precondition, "the partition is not walk-preservative");
  }
  if (const VertexSet sink_classes = sinks(c.graph); !sink_classes.empty()) {
    fail(ErrorCode::precondition,
         "class digraph has sink " + class_name(sink_classes.front()));
  }
  std::vector<ClassId> members(s.begin(), s.end());
  std::sort(members.begin(), members.end());
  for (ClassId a : members) {
    for (ClassId b : members) {
      if (a != b && c.graph.has_arc(a, b)) {
        fail(ErrorCode::precondition, "class set is not independent: arc (" +
                                          class_name(a) + "," + class_name(b) + ")");
      }
    }
  }

  ConstrainedKernel result;
  if (members.empty()) return result;
  const Subdigraph d1 = union_subdigraph(d, f, members);
  const VertexSet out_classes = proper_out_neighborhood(c.graph, members);
  const Subdigraph d2 = union_subdigraph(d, f, out_classes);
  result.d1_vertices = make_vertex_set(d1.parent_vertex);
  result.d2_vertices = make_vertex_set(d2.parent_vertex);

  VertexSet kernel = d1.to_parent(kernel_by_paths(d1.graph));
  while (true) {
    auto outside = std::find_if(kernel.begin(), kernel.end(), [&](VertexId v) {
      return !contains(result.d2_vertices, v);
    });
    if (outside == kernel.end()) break;
    const VertexId x0 = *outside;

    // Smallest class of S through x0, then every class it points to.
    ClassId home = 0;
    std::optional<Subdigraph> sub;
    for (ClassId cls : members) {
      if (contains(class_vertices(d, f, cls), x0)) {
        home = cls;
        sub = class_subdigraph(d, f, cls);
        break;
      }
    }
    if (!sub) fail(ErrorCode::internal, "kernel vertex outside D<S>");
    std::vector<VertexId> targets;
    for (ArcId a : c.graph.out_arcs(home)) {
      const ClassId next = c.graph.arc(a).head;
      if (next == home) continue;
      for (VertexId v : class_vertices(d, f, next)) {
        if (auto local = sub->local(v)) targets.push_back(*local);
      }
    }
    const auto z_local =
        nearest_target(sub->graph, *sub->local(x0), make_vertex_set(targets));
    if (!z_local) fail(ErrorCode::internal, "walk-preservation target unreachable");
    const VertexId z = sub->parent_vertex[*z_local];
    result.swaps.push_back({x0, z});
    kernel.erase(outside);
    kernel.push_back(z);
    kernel = make_vertex_set(std::move(kernel));
  }
  result.kernel = std::move(kernel);
  return result;
}

bool is_k_independent(const DistanceTable& distances, const VertexSet& s,
                      unsigned k) {
  for (VertexId u : s) {
    for (VertexId v : s) {
      if (u != v && !distances(u, v).at_least(k)) return false;
    }
  }
  return true;
}

bool is_l_absorbent(const DistanceTable& distances, const VertexSet& s,
                    unsigned l) {
  for (VertexId x = 0; x < distances.size(); ++x) {
    if (contains(s, x)) continue;
    const bool absorbed = std::any_of(s.begin(), s.end(), [&](VertexId t) {
      return distances(x, t).at_most(l);
    });
    if (!absorbed) return false;
  }
  return true;
}

bool is_kl_kernel(const Digraph& g, const VertexSet& s, unsigned k, unsigned l) {
  const DistanceTable distances(g);
  return is_k_independent(distances, s, k) && is_l_absorbent(distances, s, l);
}

namespace {

void require_kl(unsigned k, unsigned l) {
  if (k < 2) fail(ErrorCode::invalid_argument, "k must be at least 2");
  if (l < 1) fail(ErrorCode::invalid_argument, "l must be at least 1");
}

}  // namespace

std::vector<VertexSet> brute_force_kl_kernel(const Digraph& g, unsigned k,
                                             unsigned l, SearchMode mode,
                                             std::size_t limit) {
  require_kl(k, l);
  if (g.vertex_count() > limit) {
    fail(ErrorCode::size_limit,
         std::to_string(g.vertex_count()) + " vertices exceed the brute-force bound of " +
             std::to_string(limit) + "; supply the set and verify it instead");
  }
  const DistanceTable distances(g);
  std::vector<VertexSet> found;
  for_each_subset_by_size(g.vertex_count(), [&](const VertexSet& s) {
    if (is_k_independent(distances, s, k) && is_l_absorbent(distances, s, l)) {
      found.push_back(s);
      return mode == SearchMode::all;
    }
    return true;
  });
  return found;
}

VertexSet greedy_k_independent(const Digraph& g, unsigned k,
                               std::span<const VertexId> order) {
  if (k < 2) fail(ErrorCode::invalid_argument, "k must be at least 2");
  if (!is_symmetric(g)) fail(ErrorCode::precondition, "digraph is not symmetric");
  std::vector<bool> seen(g.vertex_count(), false);
  for (VertexId v : order) {
    if (v >= g.vertex_count() || seen[v]) {
      fail(ErrorCode::invalid_argument, "order is not a permutation of V(D)");
    }
    seen[v] = true;
  }
  if (order.size() != g.vertex_count()) {
    fail(ErrorCode::invalid_argument, "order is not a permutation of V(D)");
  }
  VertexSet chosen;
  std::vector<bool> blocked(g.vertex_count(), false);
  for (VertexId v : order) {
    if (blocked[v]) continue;
    chosen.push_back(v);
    // Symmetry makes distance from v equal to distance to v.
    const std::vector<Distance> dist = distances_from(g, v);
    for (VertexId w = 0; w < g.vertex_count(); ++w) {
      if (!dist[w].at_least(k)) blocked[w] = true;
    }
  }
  return make_vertex_set(std::move(chosen));
}

VertexSet symmetric_k_kernel(const Digraph& g, unsigned k) {
  std::vector<VertexId> order(g.vertex_count());
  for (VertexId v = 0; v < order.size(); ++v) order[v] = v;
  return greedy_k_independent(g, k, order);
}

VertexSet transitive_kernel(const Digraph& g) {
  for (const Arc& first : g.arcs()) {
    for (ArcId a : g.out_arcs(first.head)) {
      const VertexId w = g.arc(a).head;
      if (w != first.tail && first.head != first.tail && first.head != w &&
          !g.has_arc(first.tail, w)) {
        fail(ErrorCode::precondition,
             "digraph is not transitive: (" + g.name(first.tail) + "," +
                 g.name(first.head) + "," + g.name(w) + ")");
      }
    }
  }
  if (g.empty()) return {};
  return kernel_by_paths(g);
}

}  // namespace hkernel
