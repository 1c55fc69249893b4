#include "hkernel/coloring.hpp"

#include <algorithm>

namespace hkernel {

PatternDigraph::PatternDigraph(std::vector<std::string> colors,
                               std::span<const Arc> arcs)
    : graph_(std::move(colors), arcs, true),
      allowed_(graph_.vertex_count() * graph_.vertex_count(), false) {
  for (const Arc& a : graph_.arcs()) {
    allowed_[static_cast<std::size_t>(a.tail) * color_count() + a.head] = true;
  }
}

namespace {

void require_colors(const std::vector<std::string>& colors) {
  if (colors.empty()) {
    fail(ErrorCode::invalid_argument, "a pattern needs at least one color");
  }
}

}  // namespace

PatternDigraph loops_only_pattern(std::vector<std::string> colors) {
  require_colors(colors);
  std::vector<Arc> arcs;
  for (ColorId c = 0; c < colors.size(); ++c) arcs.push_back({c, c});
  return PatternDigraph(std::move(colors), arcs);
}

PatternDigraph alternation_pattern(std::vector<std::string> colors) {
  require_colors(colors);
  std::vector<Arc> arcs;
  for (ColorId c = 0; c < colors.size(); ++c) {
    for (ColorId e = 0; e < colors.size(); ++e) {
      if (c != e) arcs.push_back({c, e});
    }
  }
  return PatternDigraph(std::move(colors), arcs);
}

ColoredDigraph::ColoredDigraph(Digraph graph, std::vector<ColorId> arc_colors,
                               PatternDigraph pattern)
    : graph_(std::move(graph)),
      colors_(std::move(arc_colors)),
      pattern_(std::move(pattern)) {
  if (graph_.loops_allowed()) {
    for (const Arc& a : graph_.arcs()) {
      if (a.tail == a.head) {
        fail(ErrorCode::loop_arc, "an H-colored digraph has no loops");
      }
    }
  }
  if (colors_.size() != graph_.arc_count()) {
    fail(ErrorCode::invalid_argument, "every arc needs exactly one color");
  }
  for (ColorId c : colors_) {
    if (c >= pattern_.color_count()) {
      fail(ErrorCode::unknown_color, "arc color is not a vertex of the pattern");
    }
  }
}

Walk Walk::in(const Digraph& g, std::vector<VertexId> vertices) {
  if (vertices.size() < 2) {
    fail(ErrorCode::invalid_argument, "a walk needs at least one arc");
  }
  std::vector<ArcId> arcs;
  arcs.reserve(vertices.size() - 1);
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    if (vertices[i] >= g.vertex_count() || vertices[i + 1] >= g.vertex_count()) {
      fail(ErrorCode::unknown_vertex, "walk vertex out of range");
    }
    const auto a = g.find_arc(vertices[i], vertices[i + 1]);
    if (!a) {
      fail(ErrorCode::invalid_argument,
           "not a walk: no arc ('" + g.name(vertices[i]) + "','" +
               g.name(vertices[i + 1]) + "')");
    }
    arcs.push_back(*a);
  }
  return Walk(std::move(vertices), std::move(arcs));
}

Walk Walk::concatenate(const Walk& other) const {
  if (back() != other.front()) {
    fail(ErrorCode::invalid_argument, "walks do not share the junction vertex");
  }
  std::vector<VertexId> vertices = vertices_;
  vertices.insert(vertices.end(), other.vertices_.begin() + 1,
                  other.vertices_.end());
  std::vector<ArcId> arcs = arcs_;
  arcs.insert(arcs.end(), other.arcs_.begin(), other.arcs_.end());
  return Walk(std::move(vertices), std::move(arcs));
}

namespace {

void require_walk_in(const Digraph& g, const Walk& w) {
  const auto vs = w.vertices();
  const auto as = w.arcs();
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (as[i] >= g.arc_count() || g.arc(as[i]).tail != vs[i] ||
        g.arc(as[i]).head != vs[i + 1]) {
      fail(ErrorCode::invalid_argument, "walk does not belong to this digraph");
    }
  }
}

}  // namespace

std::vector<std::size_t> obstructions(const ColoredDigraph& d, const Walk& w) {
  require_walk_in(d.graph(), w);
  const auto as = w.arcs();
  const std::size_t n = as.size();
  std::vector<std::size_t> out;
  if (w.closed() && !d.compatible(as[n - 1], as[0])) out.push_back(0);
  for (std::size_t i = 1; i < n; ++i) {
    if (!d.compatible(as[i - 1], as[i])) out.push_back(i);
  }
  return out;
}

std::size_t h_length(const ColoredDigraph& d, const Walk& w) {
  const std::size_t obstructed = obstructions(d, w).size();
  return w.closed() ? obstructed : obstructed + 1;
}

bool is_h_walk(const ColoredDigraph& d, const Walk& w) {
  return obstructions(d, w).empty();
}

bool is_obstruction_free(const ColoredDigraph& d, VertexId x) {
  const Digraph& g = d.graph();
  for (ArcId in : g.in_arcs(x)) {
    for (ArcId out : g.out_arcs(x)) {
      if (!d.compatible(in, out)) return false;
    }
  }
  return true;
}

VertexSet obstruction_free_vertices(const ColoredDigraph& d) {
  VertexSet out;
  for (VertexId v = 0; v < d.graph().vertex_count(); ++v) {
    if (is_obstruction_free(d, v)) out.push_back(v);
  }
  return out;
}

bool is_h_digraph(const ColoredDigraph& d, std::span<const ArcId> arc_subset) {
  const Digraph& g = d.graph();
  std::vector<bool> member(g.arc_count(), false);
  for (ArcId a : arc_subset) {
    if (a >= g.arc_count()) {
      fail(ErrorCode::invalid_argument, "arc subset contains an unknown arc");
    }
    member[a] = true;
  }
  for (ArcId a : arc_subset) {
    for (ArcId b : g.out_arcs(g.arc(a).head)) {
      if (member[b] && !d.compatible(a, b)) return false;
    }
  }
  return true;
}

std::string describe_arc(const ColoredDigraph& d, ArcId a) {
  const Arc& arc = d.graph().arc(a);
  return "(" + d.graph().name(arc.tail) + "," + d.graph().name(arc.head) +
         "):" + d.pattern().color_name(d.color(a));
}

std::vector<std::pair<ArcId, ArcId>> consecutive_pairs(const Digraph& g) {
  std::vector<std::pair<ArcId, ArcId>> out;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    for (ArcId b : g.out_arcs(g.arc(a).head)) out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hkernel
