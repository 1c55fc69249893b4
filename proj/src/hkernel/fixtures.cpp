#include "hkernel/fixtures.hpp"

#include <array>
#include <limits>
#include <random>
#include <set>

namespace hkernel {

namespace {

struct ArcSpec {
  const char* from;
  const char* to;
  const char* color;
};

Instance build(std::string name, std::vector<std::string> colors,
               std::vector<std::pair<std::string, std::string>> pattern,
               std::vector<std::string> vertices, const std::vector<ArcSpec>& arcs,
               std::optional<std::vector<std::vector<ArcId>>> classes,
               std::string provenance = {}) {
  const Digraph color_index(colors, std::span<const Arc>{}, true);
  std::vector<Arc> h_arcs;
  for (const auto& [a, b] : pattern) h_arcs.push_back({color_index.vertex(a), color_index.vertex(b)});
  const Digraph vertex_index(vertices, std::span<const Arc>{}, false);
  std::vector<Arc> d_arcs;
  std::vector<ColorId> arc_colors;
  for (const ArcSpec& a : arcs) {
    d_arcs.push_back({vertex_index.vertex(a.from), vertex_index.vertex(a.to)});
    arc_colors.push_back(color_index.vertex(a.color));
  }
  Instance out;
  out.digraph = ColoredDigraph(Digraph(std::move(vertices), d_arcs, false),
                               std::move(arc_colors),
                               PatternDigraph(std::move(colors), h_arcs));
  if (classes) out.partition = HClassPartition(d_arcs.size(), std::move(*classes));
  out.name = std::move(name);
  out.provenance = std::move(provenance);
  return out;
}

constexpr const char* kReconstructed = "reconstructed to stated properties";

// Six one-class colors. C_F(D): F1->F2, F5->F2, F2->F3, F4->F3, F3->F6, F6
// looped. {F6} is 3-absorbent in C_F(D), D<F6> is the 2-cycle x4<->x5, and
// x1 needs H-length 4 to reach x4.
Instance fig1_style() {
  return build("fig1-style", {"c1", "c2", "c3", "c4", "c5", "c6"}, {{"c6", "c6"}},
               {"x1", "x2", "x3", "x4", "x5", "x6", "x7"},
               {{"x1", "x2", "c1"},
                {"x2", "x3", "c2"},
                {"x3", "x5", "c3"},
                {"x6", "x3", "c4"},
                {"x7", "x2", "c5"},
                {"x4", "x5", "c6"},
                {"x5", "x4", "c6"}},
               std::vector<std::vector<ArcId>>{{0}, {1}, {2}, {3}, {4}, {5, 6}},
               kReconstructed);
}

// Monochromatic walks, one class per color. D<F2> is x3->x10 plus
// x1->x5->x6, so x3 cannot reach x6 inside F2 although (F2,F3) is an arc of
// C_F(D). {F5} is 4-absorbent in C_F(D), yet both kernels by paths of
// D<F5> leave some vertex at H-length 6.
Instance fig2_style() {
  return build("fig2-style", {"c1", "c2", "c3", "c4", "c5"},
               {{"c1", "c1"}, {"c2", "c2"}, {"c3", "c3"}, {"c4", "c4"}, {"c5", "c5"}},
               {"x1", "x3", "x5", "x6", "x7", "x8", "x9", "x10", "x11"},
               {{"x11", "x3", "c1"},
                {"x3", "x10", "c2"},
                {"x10", "x1", "c1"},
                {"x1", "x5", "c2"},
                {"x5", "x6", "c2"},
                {"x6", "x7", "c3"},
                {"x7", "x8", "c4"},
                {"x8", "x9", "c5"},
                {"x9", "x8", "c5"}},
               std::vector<std::vector<ArcId>>{{0, 2}, {1, 3, 4}, {5}, {6}, {7, 8}},
               kReconstructed);
}

Instance two_blob() {
  return build("two-blob", {"1", "2", "3"}, {{"1", "1"}, {"2", "2"}, {"3", "3"}},
               {"a", "b", "c", "x", "y", "z"},
               {{"a", "b", "1"},
                {"b", "c", "1"},
                {"c", "a", "1"},
                {"x", "y", "2"},
                {"y", "z", "2"},
                {"z", "x", "2"},
                {"c", "x", "3"}},
               std::vector<std::vector<ArcId>>{{0, 1, 2}, {3, 4, 5}, {6}});
}

// Compatible pairs chain a->b->c->a into one class that also holds the
// incompatible pair (c,a),(a,b).
Instance conflict_triangle() {
  return build("conflict-triangle", {"1", "2"}, {{"1", "2"}, {"2", "1"}}, {"a", "b", "c"},
               {{"a", "b", "1"}, {"b", "c", "2"}, {"c", "a", "1"}}, std::nullopt);
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"fig1-style", "fig2-style", "two-blob", "conflict-triangle"};
}

std::optional<Instance> fixture(std::string_view name) {
  if (name == "fig1-style") return fig1_style();
  if (name == "fig2-style") return fig2_style();
  if (name == "two-blob") return two_blob();
  if (name == "conflict-triangle") return conflict_triangle();
  return std::nullopt;
}

std::optional<Family> parse_family(std::string_view name) {
  if (name == "blobs") return Family::blobs;
  if (name == "symmetric-classes") return Family::symmetric_classes;
  if (name == "random") return Family::random;
  return std::nullopt;
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::blobs: return "blobs";
    case Family::symmetric_classes: return "symmetric-classes";
    default: return "random";
  }
}

namespace {

// Standard distributions are implementation-defined; this draw is not.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool chance(std::uint64_t numerator, std::uint64_t denominator) {
    return below(denominator) < numerator;
  }

 private:
  std::mt19937_64 engine_;
};

class Builder {
 public:
  VertexId vertex() {
    names_.push_back("v" + std::to_string(names_.size()));
    return static_cast<VertexId>(names_.size() - 1);
  }
  ColorId color() {
    colors_.push_back("c" + std::to_string(colors_.size()));
    return static_cast<ColorId>(colors_.size() - 1);
  }
  bool add(VertexId tail, VertexId head, ColorId color) {
    if (tail == head || !seen_.insert({tail, head}).second) return false;
    arcs_.push_back({tail, head});
    arc_colors_.push_back(color);
    return true;
  }
  std::size_t vertex_count() const { return names_.size(); }
  std::size_t color_count() const { return colors_.size(); }

  Instance finish(std::vector<Arc> pattern, std::string name) {
    Instance out;
    out.digraph = ColoredDigraph(Digraph(std::move(names_), arcs_, false),
                                 std::move(arc_colors_),
                                 PatternDigraph(std::move(colors_), pattern));
    out.name = std::move(name);
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::string> colors_;
  std::vector<Arc> arcs_;
  std::vector<ColorId> arc_colors_;
  std::set<std::pair<VertexId, VertexId>> seen_;
};

std::vector<Arc> loops(std::size_t colors) {
  std::vector<Arc> out;
  for (ColorId c = 0; c < colors; ++c) out.push_back({c, c});
  return out;
}

std::vector<VertexId> add_cycle(Builder& b, Draw& draw, ColorId color,
                                std::optional<VertexId> shared) {
  const std::size_t length = draw.between(2, 4);
  std::vector<VertexId> cycle;
  if (shared) cycle.push_back(*shared);
  while (cycle.size() < length) cycle.push_back(b.vertex());
  for (std::size_t i = 0; i < length; ++i) b.add(cycle[i], cycle[(i + 1) % length], color);
  return cycle;
}

Instance blobs(Draw& draw, std::size_t size, std::string name) {
  Builder b;
  std::vector<std::vector<VertexId>> blobs;
  for (std::size_t i = 0; i < size; ++i) blobs.push_back(add_cycle(b, draw, b.color(), {}));
  const std::size_t bridges = size == 1 ? 0 : draw.between(size - 1, 2 * size);
  for (std::size_t i = 0; i < bridges; ++i) {
    const std::size_t from = draw.below(size);
    std::size_t to = draw.below(size - 1);
    if (to >= from) ++to;
    const VertexId tail = blobs[from][draw.below(blobs[from].size())];
    const VertexId head = blobs[to][draw.below(blobs[to].size())];
    if (b.add(tail, head, static_cast<ColorId>(b.color_count()))) b.color();
  }
  const std::size_t colors = b.color_count();
  return b.finish(loops(colors), std::move(name));
}

Instance symmetric_classes(Draw& draw, std::size_t size, std::string name) {
  Builder b;
  std::vector<VertexId> pool;
  for (std::size_t i = 0; i < size; ++i) {
    std::optional<VertexId> shared;
    if (!pool.empty()) shared = pool[draw.below(pool.size())];
    const auto cycle = add_cycle(b, draw, b.color(), shared);
    pool.insert(pool.end(), cycle.begin() + (shared ? 1 : 0), cycle.end());
  }
  const std::size_t colors = b.color_count();
  return b.finish(loops(colors), std::move(name));
}

Instance random_instance(Draw& draw, std::size_t size, std::string name) {
  Builder b;
  for (std::size_t i = 0; i < size; ++i) b.vertex();
  const std::size_t colors = draw.between(1, 4);
  for (std::size_t i = 0; i < colors; ++i) b.color();
  constexpr std::array<std::uint64_t, 3> kDensity{2, 5, 8};  // tenths
  const std::uint64_t density = kDensity[draw.below(kDensity.size())];
  std::vector<Arc> pattern;
  for (ColorId c = 0; c < colors; ++c) {
    for (ColorId e = 0; e < colors; ++e) {
      if (draw.chance(density, 10)) pattern.push_back({c, e});
    }
  }
  for (VertexId u = 0; u < size; ++u) {
    for (VertexId v = 0; v < size; ++v) {
      if (u != v && draw.chance(3, 10)) {
        b.add(u, v, static_cast<ColorId>(draw.below(colors)));
      }
    }
  }
  return b.finish(std::move(pattern), std::move(name));
}

}  // namespace

Instance generate_instance(Family family, std::uint64_t seed, std::size_t size) {
  if (size == 0) fail(ErrorCode::invalid_argument, "size must be at least 1");
  if (size > 10000) fail(ErrorCode::invalid_argument, "size must be at most 10000");
  Draw draw(seed);
  const std::string name = std::string(family_name(family)) + "-" + std::to_string(seed) +
                           "-" + std::to_string(size);
  switch (family) {
    case Family::blobs: return blobs(draw, size, name);
    case Family::symmetric_classes: return symmetric_classes(draw, size, name);
    default: return random_instance(draw, size, name);
  }
}

}  // namespace hkernel
