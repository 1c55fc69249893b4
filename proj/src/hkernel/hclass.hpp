#pragma once

// H-class partitions of A(D) and the H-class digraph C_F(D).
//
// A partition of the arcs is an H-class partition when, for every pair of
// consecutive arcs (u,v),(v,w), the pair is compatible in H exactly when both
// arcs lie in the same class. Compatible consecutive pairs therefore force
// merges; the finest partition is the union-find closure of those merges and
// exists iff no merged class contains an incompatible consecutive pair.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hkernel/coloring.hpp"

namespace hkernel {

using ClassId = std::uint32_t;

/// Display name of a class: F1, F2, ...
std::string class_name(ClassId c);
/// Inverse of class_name; nullopt for anything else.
std::optional<ClassId> parse_class_name(std::string_view name);

/// A partition of the arc set into disjoint nonempty classes.
class HClassPartition {
 public:
  HClassPartition() = default;
  /// Throws Error(bad_partition) unless the classes cover 0..arc_count-1
  /// exactly once with no empty class. Class order is preserved.
  HClassPartition(std::size_t arc_count, std::vector<std::vector<ArcId>> classes);

  std::size_t class_count() const { return classes_.size(); }
  std::span<const ArcId> arcs_of(ClassId c) const { return classes_[c]; }
  ClassId class_of(ArcId a) const { return class_of_[a]; }
  const std::vector<std::vector<ArcId>>& classes() const { return classes_; }

  friend bool operator==(const HClassPartition&, const HClassPartition&) = default;

 private:
  std::vector<std::vector<ArcId>> classes_;
  std::vector<ClassId> class_of_;
};

/// Why no H-class partition exists: a consecutive incompatible pair whose
/// arcs are linked by a chain of compatible consecutive pairs.
struct NoPartition {
  ArcId first;   // enters the shared vertex
  ArcId second;  // leaves it
  /// Arcs from `first` to `second`, each adjacent pair consecutive (in some
  /// direction) and compatible.
  std::vector<ArcId> merge_chain;

  std::string explain(const ColoredDigraph& d) const;
};

using PartitionResult = std::variant<HClassPartition, NoPartition>;

/// Classes are ordered by their smallest arc index.
PartitionResult finest_partition(const ColoredDigraph& d);

enum class ViolationKind { merged_incompatible, split_compatible };

struct PartitionViolation {
  ArcId first;
  ArcId second;
  ViolationKind kind;

  std::string explain(const ColoredDigraph& d) const;
};

/// First consecutive pair (in (first, second) order) breaking the defining
/// biconditional; nullopt when f is an H-class partition of d. Throws when f
/// does not partition A(d).
std::optional<PartitionViolation> validate_partition(const ColoredDigraph& d,
                                                     const HClassPartition& f);

struct ClassDigraph {
  /// Vertices are class ids (named F1, F2, ...); loops allowed.
  Digraph graph;
  /// One witnessing consecutive pair ((u,v) in F, (v,w) in G) per arc (F,G),
  /// indexed like graph.arcs().
  std::vector<std::pair<ArcId, ArcId>> witness;
};

ClassDigraph class_digraph(const ColoredDigraph& d, const HClassPartition& f);

/// D<F>: throws Error(invalid_argument) for an unknown class.
Subdigraph class_subdigraph(const ColoredDigraph& d, const HClassPartition& f,
                            ClassId c);
/// D<union of the listed classes>.
Subdigraph union_subdigraph(const ColoredDigraph& d, const HClassPartition& f,
                            std::span<const ClassId> classes);

/// Vertex set V(D<F>), sorted.
VertexSet class_vertices(const ColoredDigraph& d, const HClassPartition& f,
                         ClassId c);

struct ClassNeighborhoods {
  std::vector<ClassId> in;   // N-_F(x)
  std::vector<ClassId> out;  // N+_F(x)
  std::vector<ClassId> all;  // N_F(x)
};

ClassNeighborhoods neighborhoods(const ColoredDigraph& d,
                                 const HClassPartition& f, VertexId x);

struct PreservationViolation {
  ClassId from;
  ClassId to;
  VertexId vertex;  // in V(D<from>), cannot reach V(D<to>) inside D<from>
};

/// Walk-preservation: for each non-loop arc (F,G) of C_F(D), every vertex of
/// D<F> reaches V(D<G>) inside D<F>. Loops are satisfied by the length-0
/// path. Returns every violation in (F, G, vertex) order.
std::vector<PreservationViolation> walk_preservation_violations(
    const ColoredDigraph& d, const HClassPartition& f, const ClassDigraph& c);

bool is_walk_preservative(const ColoredDigraph& d, const HClassPartition& f,
                          const ClassDigraph& c);

struct ClassReport {
  ClassId id;
  bool strongly_connected;
  bool unilateral;
  bool has_sink;
  /// V(D<F>) intersected with the obstruction-free vertices of D.
  VertexSet obstruction_free;
};

std::vector<ClassReport> class_predicates(const ColoredDigraph& d,
                                          const HClassPartition& f);

}  // namespace hkernel
