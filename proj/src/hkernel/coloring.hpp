#pragma once

// H-colored digraphs: a loopless digraph D whose arcs carry colors that are
// vertices of a pattern digraph H (loops allowed in H). An interior vertex of
// a walk is an obstruction when its in/out color pair is not an arc of H.

#include <span>
#include <string>
#include <vector>

#include "hkernel/digraph.hpp"

namespace hkernel {

using ColorId = std::uint32_t;

class PatternDigraph {
 public:
  PatternDigraph() = default;
  PatternDigraph(std::vector<std::string> colors, std::span<const Arc> arcs);

  const Digraph& graph() const { return graph_; }
  std::size_t color_count() const { return graph_.vertex_count(); }
  const std::string& color_name(ColorId c) const { return graph_.name(c); }
  std::optional<ColorId> find_color(std::string_view name) const {
    return graph_.find_vertex(name);
  }

  /// (from, to) in A(H).
  bool allows(ColorId from, ColorId to) const {
    return allowed_[static_cast<std::size_t>(from) * color_count() + to];
  }

 private:
  Digraph graph_;
  std::vector<bool> allowed_;
};

/// A(H) = {(c,c)}: H-walks are the monochromatic walks.
PatternDigraph loops_only_pattern(std::vector<std::string> colors);
/// A(H) = {(c,d) : c != d}: H-walks are the properly colored walks.
PatternDigraph alternation_pattern(std::vector<std::string> colors);

class ColoredDigraph {
 public:
  ColoredDigraph() = default;
  ColoredDigraph(Digraph graph, std::vector<ColorId> arc_colors,
                 PatternDigraph pattern);

  const Digraph& graph() const { return graph_; }
  const PatternDigraph& pattern() const { return pattern_; }
  ColorId color(ArcId a) const { return colors_[a]; }
  std::span<const ColorId> colors() const { return colors_; }

  /// Whether entering a vertex through `in` and leaving through `out` is
  /// free of obstruction.
  bool compatible(ArcId in, ArcId out) const {
    return pattern_.allows(colors_[in], colors_[out]);
  }

 private:
  Digraph graph_;
  std::vector<ColorId> colors_;
  PatternDigraph pattern_;
};

/// A directed walk x0..xn with n >= 1; vertices and arcs may repeat.
class Walk {
 public:
  /// Throws Error(invalid_argument) unless consecutive vertices are arcs of g.
  static Walk in(const Digraph& g, std::vector<VertexId> vertices);

  std::span<const VertexId> vertices() const { return vertices_; }
  std::span<const ArcId> arcs() const { return arcs_; }
  std::size_t length() const { return arcs_.size(); }
  bool closed() const { return vertices_.front() == vertices_.back(); }
  VertexId front() const { return vertices_.front(); }
  VertexId back() const { return vertices_.back(); }

  /// T u T' for walks with back() == other.front().
  Walk concatenate(const Walk& other) const;

 private:
  Walk(std::vector<VertexId> vertices, std::vector<ArcId> arcs)
      : vertices_(std::move(vertices)), arcs_(std::move(arcs)) {}

  std::vector<VertexId> vertices_;
  std::vector<ArcId> arcs_;
};

/// O_H(W): indices in 1..n-1 (0..n-1 for closed walks, predecessor of x0
/// being x_{n-1}) whose consecutive color pair is not an arc of H.
std::vector<std::size_t> obstructions(const ColoredDigraph& d, const Walk& w);
/// |O_H(W)| + 1 for open walks, |O_H(W)| for closed walks.
std::size_t h_length(const ColoredDigraph& d, const Walk& w);
bool is_h_walk(const ColoredDigraph& d, const Walk& w);

bool is_obstruction_free(const ColoredDigraph& d, VertexId x);
VertexSet obstruction_free_vertices(const ColoredDigraph& d);

/// Whether every consecutive pair inside the arc subset is compatible.
bool is_h_digraph(const ColoredDigraph& d, std::span<const ArcId> arc_subset);

/// "(u,v):color" for messages.
std::string describe_arc(const ColoredDigraph& d, ArcId a);

/// Every pair (a, b) of arcs with head(a) == tail(b), ordered by (a, b).
std::vector<std::pair<ArcId, ArcId>> consecutive_pairs(const Digraph& g);

}  // namespace hkernel
