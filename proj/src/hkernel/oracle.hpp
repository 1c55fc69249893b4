#pragma once

// Brute-force verification by walks. Minimum H-lengths come from a 0/1
// breadth-first search over the arc-state graph: states are arcs of D, a
// transition (u,v) -> (v,w) costs 0 when the color pair is an arc of H and 1
// otherwise. An open uv-walk of H-length h is a state path of cost h-1.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hkernel/coloring.hpp"
#include "hkernel/kernels.hpp"

namespace hkernel {

class ArcStateGraph {
 public:
  struct Transition {
    ArcId to;
    std::uint8_t weight;
  };

  explicit ArcStateGraph(const ColoredDigraph& d);

  std::size_t state_count() const { return next_.size(); }
  std::span<const Transition> transitions(ArcId state) const { return next_[state]; }

 private:
  std::vector<std::vector<Transition>> next_;
};

/// Minimum H-length of an open walk from u to every vertex; entry u is 0 by
/// convention, unreachable vertices are infinite.
std::vector<Distance> min_h_lengths_from(const ColoredDigraph& d,
                                         const ArcStateGraph& states, VertexId u);
std::vector<Distance> min_h_lengths_from(const ColoredDigraph& d, VertexId u);

/// Throws Error(invalid_argument) when u == v.
Distance min_h_length(const ColoredDigraph& d, VertexId u, VertexId v);

/// Vertices v != u joined from u by an H-walk.
VertexSet h_walk_reachable(const ColoredDigraph& d, VertexId u);

/// Row-major table of min_h_length over all ordered pairs (diagonal 0).
class HDistanceTable {
 public:
  explicit HDistanceTable(const ColoredDigraph& d);
  Distance operator()(VertexId u, VertexId v) const {
    return rows_[static_cast<std::size_t>(u) * n_ + v];
  }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::vector<Distance> rows_;
};

struct KernelViolation {
  enum class Kind { independence, absorbency } kind;
  VertexId from;
  /// The other member for independence; the nearest member (if any) for
  /// absorbency.
  std::optional<VertexId> to;
  Distance h_length;

  std::string explain(const Digraph& g, unsigned k, unsigned l) const;
};

/// First ordered pair (u,v) of distinct members, in lexicographic order,
/// with min_h_length(u,v) < k.
std::optional<KernelViolation> verify_k_independent_by_walks(
    const ColoredDigraph& d, const VertexSet& s, unsigned k);
/// First x outside S, by id, whose nearest member is farther than l.
std::optional<KernelViolation> verify_l_absorbent_by_walks(
    const ColoredDigraph& d, const VertexSet& s, unsigned l);
/// Independence is checked first.
std::optional<KernelViolation> verify_klh_kernel(const ColoredDigraph& d,
                                                 const VertexSet& s, unsigned k,
                                                 unsigned l);

/// Every (k,l,H)-kernel by walks, ordered by size then lexicographically.
std::vector<VertexSet> exhaustive_klh_kernels(
    const ColoredDigraph& d, unsigned k, unsigned l,
    SearchMode mode = SearchMode::all, std::size_t limit = kDefaultBruteForceLimit);

}  // namespace hkernel
