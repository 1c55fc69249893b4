#pragma once

// Plain digraphs and the classical traversal algorithms used throughout the
// library. Vertex names are opaque strings; internally every vertex and arc
// is addressed by a dense index in construction order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hkernel/distance.hpp"

namespace hkernel {

using VertexId = std::uint32_t;
using ArcId = std::uint32_t;

/// Sorted, duplicate-free list of vertex indices.
using VertexSet = std::vector<VertexId>;

struct Arc {
  VertexId tail;
  VertexId head;

  friend bool operator==(const Arc&, const Arc&) = default;
};

class Digraph {
 public:
  Digraph() = default;

  /// Throws Error on parallel arcs, forbidden loops, out-of-range endpoints
  /// or duplicate names.
  Digraph(std::vector<std::string> names, std::span<const Arc> arcs,
          bool loops_allowed);

  /// Vertices named "0", "1", ... in index order.
  static Digraph with_indices(std::size_t vertex_count,
                              std::span<const Arc> arcs, bool loops_allowed);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  bool empty() const { return names_.empty(); }
  bool loops_allowed() const { return loops_allowed_; }

  const Arc& arc(ArcId a) const { return arcs_[a]; }
  std::span<const Arc> arcs() const { return arcs_; }
  std::span<const ArcId> out_arcs(VertexId v) const { return out_[v]; }
  std::span<const ArcId> in_arcs(VertexId v) const { return in_[v]; }

  std::size_t out_degree(VertexId v) const { return out_[v].size(); }
  std::size_t in_degree(VertexId v) const { return in_[v].size(); }
  /// d(x) = |A(x)|; a loop counts once.
  std::size_t degree(VertexId v) const;

  std::optional<ArcId> find_arc(VertexId tail, VertexId head) const;
  bool has_arc(VertexId tail, VertexId head) const {
    return find_arc(tail, head).has_value();
  }

  const std::string& name(VertexId v) const { return names_[v]; }
  std::span<const std::string> names() const { return names_; }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  /// Throws Error(unknown_vertex) when absent.
  VertexId vertex(std::string_view name) const;

 private:
  static std::uint64_t key(VertexId tail, VertexId head) {
    return (static_cast<std::uint64_t>(tail) << 32) | head;
  }

  std::vector<std::string> names_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
  std::unordered_map<std::uint64_t, ArcId> arc_index_;
  std::unordered_map<std::string, VertexId> name_index_;
  bool loops_allowed_ = false;
};

/// The subdigraph D<F> arc-induced by an arc subset, with maps back to the
/// parent. Vertices keep the parent's relative order and names.
struct Subdigraph {
  Digraph graph;
  std::vector<VertexId> parent_vertex;
  std::vector<ArcId> parent_arc;

  std::optional<VertexId> local(VertexId parent) const;
  VertexSet to_parent(std::span<const VertexId> local_vertices) const;
};

Subdigraph arc_induced(const Digraph& g, std::span<const ArcId> arcs);

/// Removes the listed vertices; remaining arcs keep their relative order.
Subdigraph without_vertices(const Digraph& g, std::span<const VertexId> removed);

struct StrongComponents {
  /// Components are numbered in a topological order of the condensation.
  std::vector<std::uint32_t> component_of;
  std::vector<VertexSet> members;
  Digraph condensation;
};

StrongComponents strong_components(const Digraph& g);

/// Throws Error(invalid_argument) on the empty digraph.
bool is_strongly_connected(const Digraph& g);
bool is_unilateral(const Digraph& g);
bool is_symmetric(const Digraph& g);

/// Vertices x with A+(x) contained in {(x,x)}.
VertexSet sinks(const Digraph& g);
VertexSet isolated_vertices(const Digraph& g);

VertexSet reachable_set(const Digraph& g, std::span<const VertexId> sources);
/// Vertices from which some target is reachable (length-0 paths included).
VertexSet reaching_set(const Digraph& g, std::span<const VertexId> targets);

/// BFS distances from u; entry u is 0.
std::vector<Distance> distances_from(const Digraph& g, VertexId u);
Distance shortest_walk_length(const Digraph& g, VertexId u, VertexId v);

/// Row-major n*n table of shortest path lengths.
class DistanceTable {
 public:
  explicit DistanceTable(const Digraph& g);
  Distance operator()(VertexId u, VertexId v) const {
    return rows_[static_cast<std::size_t>(u) * n_ + v];
  }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::vector<Distance> rows_;
};

/// Length of a shortest cycle of length at least two; loops are ignored.
Distance min_nonloop_cycle_length(const Digraph& g);

/// N+(S): out-neighbours of S that lie outside S.
VertexSet proper_out_neighborhood(const Digraph& g, std::span<const VertexId> s);

bool contains(const VertexSet& set, VertexId v);
VertexSet make_vertex_set(std::vector<VertexId> members);

}  // namespace hkernel
