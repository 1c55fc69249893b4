#pragma once

// Kernels on plain digraphs: kernels by paths, the constrained variant used by
// the class-digraph constructions, (k,l)-kernels by exhaustive search, and
// k-kernels of symmetric digraphs.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hkernel/hclass.hpp"

namespace hkernel {

inline constexpr std::size_t kDefaultBruteForceLimit = 15;

/// Smallest vertex of every terminal strong component. Throws on the empty
/// digraph.
VertexSet kernel_by_paths(const Digraph& g);

struct PathKernelViolation {
  enum class Kind { independence, absorbency } kind;
  VertexId from;
  std::optional<VertexId> to;  // absent for absorbency failures
};

std::optional<PathKernelViolation> verify_kernel_by_paths(const Digraph& g,
                                                          const VertexSet& s);

struct Swap {
  VertexId removed;
  VertexId added;
};

struct ConstrainedKernel {
  VertexSet kernel;  // vertices of D
  std::vector<Swap> swaps;
  VertexSet d1_vertices;
  VertexSet d2_vertices;
};

/// Kernel by paths of D<union of S> lying inside V(D<union of N+(S)>), found
/// by swapping members out along paths inside their class. Throws
/// Error(precondition) when f is not walk-preservative, C has a sink, or S
/// is not independent in C.
ConstrainedKernel constrained_kernel_by_paths(const ColoredDigraph& d,
                                              const HClassPartition& f,
                                              const ClassDigraph& c,
                                              std::span<const ClassId> s);

enum class SearchMode { first, all };

/// (k,l)-kernels of g in size-then-lexicographic order; empty when none
/// exists. Throws Error(size_limit) above `limit` vertices.
std::vector<VertexSet> brute_force_kl_kernel(const Digraph& g, unsigned k,
                                             unsigned l, SearchMode mode,
                                             std::size_t limit = kDefaultBruteForceLimit);

bool is_k_independent(const DistanceTable& distances, const VertexSet& s,
                      unsigned k);
bool is_l_absorbent(const DistanceTable& distances, const VertexSet& s,
                    unsigned l);
bool is_kl_kernel(const Digraph& g, const VertexSet& s, unsigned k, unsigned l);

/// Maximal k-independent set grown greedily along `order`. Throws unless g
/// is symmetric and `order` is a permutation of the vertices.
VertexSet greedy_k_independent(const Digraph& g, unsigned k,
                               std::span<const VertexId> order);
/// greedy_k_independent in id order.
VertexSet symmetric_k_kernel(const Digraph& g, unsigned k);

/// Kernel of a transitive digraph. Throws Error(precondition) naming a
/// triple (u,v,w) with (u,v),(v,w) arcs and (u,w) missing.
VertexSet transitive_kernel(const Digraph& g);

}  // namespace hkernel
