#include "hkernel/hclass.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

namespace hkernel {

std::string class_name(ClassId c) { return "F" + std::to_string(c + 1); }

std::optional<ClassId> parse_class_name(std::string_view name) {
  if (name.size() < 2 || name[0] != 'F') return std::nullopt;
  unsigned value = 0;
  const auto* first = name.data() + 1;
  const auto* last = name.data() + name.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || value == 0 || name[1] == '0') {
    return std::nullopt;
  }
  return static_cast<ClassId>(value - 1);
}

HClassPartition::HClassPartition(std::size_t arc_count,
                                 std::vector<std::vector<ArcId>> classes)
    : classes_(std::move(classes)) {
  constexpr ClassId kUnset = ~ClassId{0};
  class_of_.assign(arc_count, kUnset);
  for (ClassId c = 0; c < classes_.size(); ++c) {
    auto& members = classes_[c];
    if (members.empty()) {
      fail(ErrorCode::bad_partition, "class " + class_name(c) + " is empty");
    }
    std::sort(members.begin(), members.end());
    for (ArcId a : members) {
      if (a >= arc_count) {
        fail(ErrorCode::bad_partition,
             "class " + class_name(c) + " names unknown arc " + std::to_string(a));
      }
      if (class_of_[a] != kUnset) {
        fail(ErrorCode::bad_partition,
             "arc " + std::to_string(a) + " appears in more than one class");
      }
      class_of_[a] = c;
    }
  }
  for (ArcId a = 0; a < arc_count; ++a) {
    if (class_of_[a] == kUnset) {
      fail(ErrorCode::bad_partition,
           "arc " + std::to_string(a) + " is not covered by the partition");
    }
  }
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Shortest chain of compatible consecutive links between two arcs.
std::vector<ArcId> merge_chain(const ColoredDigraph& d, ArcId from, ArcId to) {
  const Digraph& g = d.graph();
  std::vector<std::vector<ArcId>> links(g.arc_count());
  for (const auto& [a, b] : consecutive_pairs(g)) {
    if (d.compatible(a, b)) {
      links[a].push_back(b);
      links[b].push_back(a);
    }
  }
  constexpr ArcId kNone = ~ArcId{0};
  std::vector<ArcId> previous(g.arc_count(), kNone);
  std::vector<ArcId> queue{from};
  previous[from] = from;
  for (std::size_t i = 0; i < queue.size() && previous[to] == kNone; ++i) {
    for (ArcId next : links[queue[i]]) {
      if (previous[next] == kNone) {
        previous[next] = queue[i];
        queue.push_back(next);
      }
    }
  }
  std::vector<ArcId> chain;
  for (ArcId a = to; a != from; a = previous[a]) chain.push_back(a);
  chain.push_back(from);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace

std::string NoPartition::explain(const ColoredDigraph& d) const {
  std::string chain;
  for (std::size_t i = 0; i < merge_chain.size(); ++i) {
    if (i) chain += " ~ ";
    chain += describe_arc(d, merge_chain[i]);
  }
  return "no H-class partition exists: consecutive arcs " +
         describe_arc(d, first) + " and " + describe_arc(d, second) +
         " have a color pair outside A(H), yet compatible consecutive pairs "
         "force them into one class via " +
         chain;
}

PartitionResult finest_partition(const ColoredDigraph& d) {
  const Digraph& g = d.graph();
  const auto pairs = consecutive_pairs(g);
  DisjointSets sets(g.arc_count());
  for (const auto& [a, b] : pairs) {
    if (d.compatible(a, b)) sets.unite(a, b);
  }
  for (const auto& [a, b] : pairs) {
    if (!d.compatible(a, b) && sets.find(a) == sets.find(b)) {
      return NoPartition{a, b, merge_chain(d, a, b)};
    }
  }
  // Roots are the smallest arc of each set, so classes come out ordered by
  // their smallest arc.
  std::map<std::size_t, std::vector<ArcId>> grouped;
  for (ArcId a = 0; a < g.arc_count(); ++a) grouped[sets.find(a)].push_back(a);
  std::vector<std::vector<ArcId>> classes;
  for (auto& [root, members] : grouped) classes.push_back(std::move(members));
  return HClassPartition(g.arc_count(), std::move(classes));
}

std::string PartitionViolation::explain(const ColoredDigraph& d) const {
  const std::string pair = describe_arc(d, first) + ", " + describe_arc(d, second);
  if (kind == ViolationKind::merged_incompatible) {
    return "consecutive arcs " + pair +
           " share a class but their color pair is not an arc of H";
  }
  return "consecutive arcs " + pair +
         " are compatible in H but lie in different classes";
}

std::optional<PartitionViolation> validate_partition(const ColoredDigraph& d,
                                                     const HClassPartition& f) {
  const Digraph& g = d.graph();
  std::size_t covered = 0;
  for (const auto& members : f.classes()) covered += members.size();
  if (covered != g.arc_count()) {
    fail(ErrorCode::bad_partition, "partition does not cover A(D) exactly");
  }
  for (const auto& [a, b] : consecutive_pairs(g)) {
    const bool together = f.class_of(a) == f.class_of(b);
    const bool compatible = d.compatible(a, b);
    if (together && !compatible) {
      return PartitionViolation{a, b, ViolationKind::merged_incompatible};
    }
    if (!together && compatible) {
      return PartitionViolation{a, b, ViolationKind::split_compatible};
    }
  }
  return std::nullopt;
}

ClassDigraph class_digraph(const ColoredDigraph& d, const HClassPartition& f) {
  std::map<std::pair<ClassId, ClassId>, std::pair<ArcId, ArcId>> arcs;
  for (const auto& [a, b] : consecutive_pairs(d.graph())) {
    arcs.try_emplace({f.class_of(a), f.class_of(b)}, a, b);
  }
  std::vector<std::string> names;
  for (ClassId c = 0; c < f.class_count(); ++c) names.push_back(class_name(c));
  std::vector<Arc> class_arcs;
  ClassDigraph result;
  for (const auto& [key, witness] : arcs) {
    class_arcs.push_back({key.first, key.second});
    result.witness.push_back(witness);
  }
  result.graph = Digraph(std::move(names), class_arcs, true);
  return result;
}

Subdigraph class_subdigraph(const ColoredDigraph& d, const HClassPartition& f,
                            ClassId c) {
  if (c >= f.class_count()) {
    fail(ErrorCode::invalid_argument, "unknown class " + class_name(c));
  }
  return arc_induced(d.graph(), f.arcs_of(c));
}

Subdigraph union_subdigraph(const ColoredDigraph& d, const HClassPartition& f,
                            std::span<const ClassId> classes) {
  std::vector<ArcId> arcs;
  for (ClassId c : classes) {
    if (c >= f.class_count()) {
      fail(ErrorCode::invalid_argument, "unknown class " + class_name(c));
    }
    arcs.insert(arcs.end(), f.arcs_of(c).begin(), f.arcs_of(c).end());
  }
  return arc_induced(d.graph(), arcs);
}

VertexSet class_vertices(const ColoredDigraph& d, const HClassPartition& f,
                         ClassId c) {
  std::vector<VertexId> out;
  for (ArcId a : f.arcs_of(c)) {
    out.push_back(d.graph().arc(a).tail);
    out.push_back(d.graph().arc(a).head);
  }
  return make_vertex_set(std::move(out));
}

ClassNeighborhoods neighborhoods(const ColoredDigraph& d,
                                 const HClassPartition& f, VertexId x) {
  const Digraph& g = d.graph();
  if (x >= g.vertex_count()) fail(ErrorCode::unknown_vertex, "vertex out of range");
  ClassNeighborhoods n;
  for (ArcId a : g.in_arcs(x)) n.in.push_back(f.class_of(a));
  for (ArcId a : g.out_arcs(x)) n.out.push_back(f.class_of(a));
  auto normalize = [](std::vector<ClassId>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  normalize(n.in);
  normalize(n.out);
  n.all = n.in;
  n.all.insert(n.all.end(), n.out.begin(), n.out.end());
  normalize(n.all);
  return n;
}

std::vector<PreservationViolation> walk_preservation_violations(
    const ColoredDigraph& d, const HClassPartition& f, const ClassDigraph& c) {
  std::vector<PreservationViolation> out;
  std::vector<std::optional<Subdigraph>> subs(f.class_count());
  for (const Arc& arc : c.graph.arcs()) {
    if (arc.tail == arc.head) continue;
    auto& sub = subs[arc.tail];
    if (!sub) sub = class_subdigraph(d, f, arc.tail);
    std::vector<VertexId> targets;
    for (VertexId v : class_vertices(d, f, arc.head)) {
      if (auto local = sub->local(v)) targets.push_back(*local);
    }
    const VertexSet reaching = reaching_set(sub->graph, targets);
    for (VertexId z = 0; z < sub->graph.vertex_count(); ++z) {
      if (!contains(reaching, z)) {
        out.push_back({arc.tail, arc.head, sub->parent_vertex[z]});
      }
    }
  }
  return out;
}

bool is_walk_preservative(const ColoredDigraph& d, const HClassPartition& f,
                          const ClassDigraph& c) {
  return walk_preservation_violations(d, f, c).empty();
}

std::vector<ClassReport> class_predicates(const ColoredDigraph& d,
                                          const HClassPartition& f) {
  const VertexSet free_vertices = obstruction_free_vertices(d);
  std::vector<ClassReport> out;
  for (ClassId c = 0; c < f.class_count(); ++c) {
    const Subdigraph sub = class_subdigraph(d, f, c);
    ClassReport report;
    report.id = c;
    report.strongly_connected = is_strongly_connected(sub.graph);
    report.unilateral = is_unilateral(sub.graph);
    report.has_sink = !sinks(sub.graph).empty();
    for (VertexId v : sub.parent_vertex) {
      if (contains(free_vertices, v)) report.obstruction_free.push_back(v);
    }
    out.push_back(std::move(report));
  }
  return out;
}

}  // namespace hkernel
