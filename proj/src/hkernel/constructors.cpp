#include "hkernel/constructors.hpp"

#include <algorithm>
#include <array>

namespace hkernel {

namespace {

constexpr std::array<std::pair<Theorem, std::string_view>, 11> kTags{{
    {Theorem::classlema, "classlema"},
    {Theorem::prop41, "prop41"},
    {Theorem::prop42, "prop42"},
    {Theorem::prop43, "prop43"},
    {Theorem::prop44, "prop44"},
    {Theorem::thm51, "thm51"},
    {Theorem::thm52, "thm52"},
    {Theorem::thm53, "thm53"},
    {Theorem::thm54, "thm54"},
    {Theorem::thm55, "thm55"},
    {Theorem::brute, "brute"},
}};

}  // namespace

std::string_view theorem_tag(Theorem t) {
  for (const auto& [theorem, tag] : kTags) {
    if (theorem == t) return tag;
  }
  return "unknown";
}

std::optional<Theorem> parse_theorem(std::string_view tag) {
  if (tag == "thm35") return Theorem::classlema;
  for (const auto& [theorem, name] : kTags) {
    if (name == tag) return theorem;
  }
  return std::nullopt;
}

bool uses_class_kernel(Theorem t) {
  switch (t) {
    case Theorem::prop41:
    case Theorem::prop42:
    case Theorem::prop43:
    case Theorem::prop44:
    case Theorem::thm51:
    case Theorem::thm52:
    case Theorem::thm53:
      return true;
    default:
      return false;
  }
}

Verification verify_certificate(const ColoredDigraph& d, const VertexSet& kernel,
                                unsigned k, unsigned l) {
  Verification v;
  const auto dependent = verify_k_independent_by_walks(d, kernel, k);
  const auto unabsorbed = verify_l_absorbent_by_walks(d, kernel, l);
  v.independent = !dependent;
  v.absorbent = !unabsorbed;
  v.counterexample = dependent ? dependent : unabsorbed;
  return v;
}

namespace {

std::vector<ClassId> sorted_classes(std::span<const ClassId> s) {
  std::vector<ClassId> out(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void require_parameters(unsigned k, unsigned l) {
  if (k < 2) fail(ErrorCode::invalid_argument, "k must be at least 2");
  if (l < 1) fail(ErrorCode::invalid_argument, "l must be at least 1");
}

void require_known_classes(const HClassPartition& f, std::span<const ClassId> s) {
  for (ClassId c : s) {
    if (c >= f.class_count()) {
      fail(ErrorCode::invalid_argument, "unknown class " + class_name(c));
    }
  }
}

using Check = std::optional<HypothesisFailure>;

Check check_walk_preservative(const ColoredDigraph& d, const HClassPartition& f,
                              const ClassDigraph& c) {
  const auto violations = walk_preservation_violations(d, f, c);
  if (violations.empty()) return std::nullopt;
  const auto& v = violations.front();
  return HypothesisFailure{
      "walk-preservative partition",
      "(" + class_name(v.from) + "," + class_name(v.to) + "): " +
          d.graph().name(v.vertex) + " has no path inside D<" +
          class_name(v.from) + "> to V(D<" + class_name(v.to) + ">)"};
}

Check check_no_isolated(const ColoredDigraph& d) {
  const VertexSet w = isolated_vertices(d.graph());
  if (w.empty()) return std::nullopt;
  return HypothesisFailure{"no isolated vertices",
                           d.graph().name(w.front()) + " is isolated"};
}

Check check_sinkless(const ClassDigraph& c) {
  const VertexSet s = sinks(c.graph);
  if (s.empty()) return std::nullopt;
  return HypothesisFailure{"C_F(D) has no sinks", class_name(s.front()) + " is a sink"};
}

Check check_cycle_lengths(const ClassDigraph& c, unsigned k) {
  const Distance girth = min_nonloop_cycle_length(c.graph);
  if (girth.at_least(k)) return std::nullopt;
  return HypothesisFailure{
      "every cycle of C_F(D) is a loop or has length at least " + std::to_string(k),
      "C_F(D) has a cycle of length " + girth.to_string()};
}

// For x touching both S and N+(S), every class entering x belongs to S.
Check check_neighbourhood_condition(const ColoredDigraph& d,
                                    const HClassPartition& f,
                                    const ClassDigraph& c,
                                    std::span<const ClassId> s) {
  const std::vector<ClassId> members = sorted_classes(s);
  const VertexSet out_classes = proper_out_neighborhood(c.graph, members);
  const auto in_s = [&](ClassId cls) {
    return std::binary_search(members.begin(), members.end(), cls);
  };
  for (VertexId x = 0; x < d.graph().vertex_count(); ++x) {
    const ClassNeighborhoods n = neighborhoods(d, f, x);
    const bool touches_s = std::any_of(n.all.begin(), n.all.end(), in_s);
    const bool touches_out = std::any_of(n.all.begin(), n.all.end(), [&](ClassId cls) {
      return contains(out_classes, cls);
    });
    if (!touches_s || !touches_out) continue;
    for (ClassId cls : n.in) {
      if (!in_s(cls)) {
        return HypothesisFailure{
            "N-_F(x) is contained in S whenever N_F(x) meets S and N+(S)",
            d.graph().name(x) + " is entered by " + class_name(cls) +
                ", which is not in S"};
      }
    }
  }
  return std::nullopt;
}

Check check_empty_out_neighbourhood(const ClassDigraph& c, std::span<const ClassId> s) {
  const std::vector<ClassId> members = sorted_classes(s);
  const VertexSet out = proper_out_neighborhood(c.graph, members);
  if (out.empty()) return std::nullopt;
  return HypothesisFailure{"N+(S) is empty",
                           class_name(out.front()) + " is a proper out-neighbour of S"};
}

Check check_unilateral_sinkless(const ColoredDigraph& d, const HClassPartition& f,
                                std::span<const ClassId> classes,
                                const std::string& scope) {
  for (ClassId cls : classes) {
    const Subdigraph sub = class_subdigraph(d, f, cls);
    if (!is_unilateral(sub.graph)) {
      return HypothesisFailure{scope + " unilateral and sink-free",
                               "D<" + class_name(cls) + "> is not unilateral"};
    }
    if (const VertexSet s = sinks(sub.graph); !s.empty()) {
      return HypothesisFailure{scope + " unilateral and sink-free",
                               "D<" + class_name(cls) + "> has sink " +
                                   sub.graph.name(s.front())};
    }
  }
  return std::nullopt;
}

Check check_strongly_connected(const ColoredDigraph& d, const HClassPartition& f,
                               std::span<const ClassId> classes,
                               const std::string& scope) {
  for (ClassId cls : classes) {
    if (!is_strongly_connected(class_subdigraph(d, f, cls).graph)) {
      return HypothesisFailure{scope + " strongly connected",
                               "D<" + class_name(cls) + "> is not strongly connected"};
    }
  }
  return std::nullopt;
}

Check check_obstruction_free_member(const ColoredDigraph& d, const HClassPartition& f,
                                    std::span<const ClassId> classes,
                                    const std::string& scope) {
  const VertexSet free_vertices = obstruction_free_vertices(d);
  for (ClassId cls : classes) {
    const VertexSet vs = class_vertices(d, f, cls);
    if (std::none_of(vs.begin(), vs.end(),
                     [&](VertexId v) { return contains(free_vertices, v); })) {
      return HypothesisFailure{scope + " contain an obstruction-free vertex of D",
                               "D<" + class_name(cls) +
                                   "> has no obstruction-free vertex"};
    }
  }
  return std::nullopt;
}

std::vector<ClassId> all_classes(const HClassPartition& f) {
  std::vector<ClassId> out(f.class_count());
  for (ClassId c = 0; c < out.size(); ++c) out[c] = c;
  return out;
}

// Kernel by paths of D<union of S>, as vertices of D.
VertexSet union_path_kernel(const ColoredDigraph& d, const HClassPartition& f,
                            std::span<const ClassId> s) {
  if (s.empty()) return {};
  const Subdigraph sub = union_subdigraph(d, f, s);
  return sub.to_parent(kernel_by_paths(sub.graph));
}

VertexSet with_isolated(VertexSet kernel, const VertexSet& isolated) {
  kernel.insert(kernel.end(), isolated.begin(), isolated.end());
  return make_vertex_set(std::move(kernel));
}

KernelCertificate finish(const ColoredDigraph& d, Theorem theorem, VertexSet core,
                         unsigned k, unsigned l, const ConstructOptions& options) {
  KernelCertificate cert;
  cert.theorem = theorem;
  cert.isolated = isolated_vertices(d.graph());
  cert.kernel = with_isolated(std::move(core), cert.isolated);
  cert.k = k;
  cert.l = l;
  cert.unchecked = options.unchecked;
  cert.verification = verify_certificate(d, cert.kernel, k, l);
  return cert;
}

void attach_class_kernel(KernelCertificate& cert, std::span<const ClassId> s,
                         unsigned k, unsigned l) {
  cert.class_kernel = sorted_classes(s);
  cert.class_kernel_parameters = std::make_pair(k, l);
}

// Runs hypothesis checks in order and stops at the first failure.
template <typename... Checks>
Check first_failure(Checks&&... checks) {
  Check result;
  ((result = result ? result : checks()), ...);
  return result;
}

// The recipe may refuse on inputs the skipped checks would have rejected.
template <typename Recipe>
Construction run_recipe(Recipe&& recipe) {
  try {
    return recipe();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::precondition && e.code() != ErrorCode::invalid_argument) {
      throw;
    }
    return HypothesisFailure{"construction precondition", e.what()};
  }
}

// Smallest obstruction-free vertex of each class in S.
std::variant<VertexSet, HypothesisFailure> strong_class_representatives(
    const ColoredDigraph& d, const HClassPartition& f, std::span<const ClassId> s,
    bool unchecked) {
  const VertexSet free_vertices = obstruction_free_vertices(d);
  std::vector<VertexId> chosen;
  for (ClassId cls : sorted_classes(s)) {
    const VertexSet vs = class_vertices(d, f, cls);
    const auto it = std::find_if(vs.begin(), vs.end(),
                                 [&](VertexId v) { return contains(free_vertices, v); });
    if (it == vs.end()) {
      return HypothesisFailure{"classes of S contain an obstruction-free vertex of D",
                               "D<" + class_name(cls) + "> has none"};
    }
    chosen.push_back(*it);
  }
  VertexSet kernel = make_vertex_set(chosen);
  if (kernel.size() != chosen.size() && !unchecked) {
    // Independent strongly connected classes are vertex-disjoint.
    fail(ErrorCode::internal, "classes of S share an obstruction-free vertex");
  }
  return kernel;
}

Construction prop41_recipe(const ColoredDigraph& d, const HClassPartition& f,
                           const ClassDigraph& c, std::span<const ClassId> s,
                           Theorem theorem, unsigned k, unsigned l,
                           const ConstructOptions& options) {
  return run_recipe([&]() -> Construction {
    ConstrainedKernel core = constrained_kernel_by_paths(d, f, c, s);
    KernelCertificate cert = finish(d, theorem, core.kernel, k, l + 1, options);
    cert.swaps = std::move(core.swaps);
    attach_class_kernel(cert, s, k, l);
    return cert;
  });
}

Construction prop44_core(const ColoredDigraph& d, const HClassPartition& f,
                         const ClassDigraph& c, std::span<const ClassId> s,
                         Theorem theorem, unsigned k, unsigned l,
                         const ConstructOptions& options) {
  if (!options.unchecked) {
    const std::string scope = "classes of S";
    if (auto failure = first_failure(
            [&] { return check_class_kernel(c, s, k, l); },
            [&] { return check_strongly_connected(d, f, s, scope); },
            [&] { return check_obstruction_free_member(d, f, s, scope); },
            // Absorbency goes through walk-preservation, which strong
            // connectivity of the S classes alone does not give.
            [&] { return check_walk_preservative(d, f, c); })) {
      return *failure;
    }
  }
  auto representatives = strong_class_representatives(d, f, s, options.unchecked);
  if (auto* failure = std::get_if<HypothesisFailure>(&representatives)) return *failure;
  KernelCertificate cert = finish(d, theorem, std::get<VertexSet>(representatives),
                                  k + 1, l + 1, options);
  attach_class_kernel(cert, s, k, l);
  return cert;
}

Construction union_kernel_certificate(const ColoredDigraph& d,
                                      const HClassPartition& f,
                                      std::span<const ClassId> s, Theorem theorem,
                                      unsigned cert_k, unsigned cert_l, unsigned k,
                                      unsigned l, const ConstructOptions& options) {
  return run_recipe([&]() -> Construction {
    KernelCertificate cert =
        finish(d, theorem, union_path_kernel(d, f, s), cert_k, cert_l, options);
    attach_class_kernel(cert, s, k, l);
    return cert;
  });
}

}  // namespace

std::optional<HypothesisFailure> check_class_kernel(const ClassDigraph& c,
                                                    std::span<const ClassId> s,
                                                    unsigned k, unsigned l) {
  const std::vector<ClassId> members = sorted_classes(s);
  const DistanceTable distances(c.graph);
  const std::string hypothesis = "S is a (" + std::to_string(k) + "," +
                                 std::to_string(l) + ")-kernel of C_F(D)";
  for (ClassId a : members) {
    for (ClassId b : members) {
      if (a != b && !distances(a, b).at_least(k)) {
        return HypothesisFailure{hypothesis, "d(" + class_name(a) + "," + class_name(b) +
                                                 ") = " + distances(a, b).to_string()};
      }
    }
  }
  for (ClassId x = 0; x < c.graph.vertex_count(); ++x) {
    if (std::binary_search(members.begin(), members.end(), x)) continue;
    const bool absorbed = std::any_of(members.begin(), members.end(), [&](ClassId t) {
      return distances(x, t).at_most(l);
    });
    if (!absorbed) {
      return HypothesisFailure{hypothesis, class_name(x) + " is farther than " +
                                               std::to_string(l) + " from S"};
    }
  }
  return std::nullopt;
}

std::optional<HypothesisFailure> structural_failure(Theorem theorem,
                                                    const ColoredDigraph& d,
                                                    const HClassPartition& f,
                                                    const ClassDigraph& c, unsigned k) {
  const auto preserving = [&] { return check_walk_preservative(d, f, c); };
  const auto no_isolated = [&] { return check_no_isolated(d); };
  switch (theorem) {
    case Theorem::prop41:
      return first_failure(preserving, [&] { return check_sinkless(c); },
                           [&] { return check_cycle_lengths(c, k); });
    case Theorem::prop42:
    case Theorem::prop43:
      return first_failure(no_isolated, preserving);
    case Theorem::prop44:
    case Theorem::thm51:
      return preserving();
    case Theorem::thm52: {
      const Digraph& g = d.graph();
      if (g.empty() || !is_strongly_connected(g)) {
        return HypothesisFailure{"D is strongly connected", "D is not strongly connected"};
      }
      std::vector<ArcId> every_arc(g.arc_count());
      for (ArcId a = 0; a < every_arc.size(); ++a) every_arc[a] = a;
      if (is_h_digraph(d, every_arc)) return std::nullopt;
      return first_failure(preserving, [&] { return check_sinkless(c); },
                           [&] { return check_cycle_lengths(c, k); });
    }
    case Theorem::thm53:
      return first_failure(preserving, [&] {
        return check_unilateral_sinkless(d, f, all_classes(f), "every class");
      });
    case Theorem::thm54:
    case Theorem::thm55:
      return check_strongly_connected(d, f, all_classes(f), "every class");
    default:
      return std::nullopt;
  }
}

std::optional<HypothesisFailure> class_kernel_condition(
    Theorem theorem, const ColoredDigraph& d, const HClassPartition& f,
    const ClassDigraph& c, std::span<const ClassId> s) {
  const std::string scope = "classes of S";
  switch (theorem) {
    case Theorem::prop41:
    case Theorem::thm52:
      return check_neighbourhood_condition(d, f, c, s);
    case Theorem::prop42:
    case Theorem::thm51:
      return check_empty_out_neighbourhood(c, s);
    case Theorem::prop43:
    case Theorem::thm53:
      return check_unilateral_sinkless(d, f, s, scope);
    case Theorem::prop44:
      return first_failure([&] { return check_strongly_connected(d, f, s, scope); },
                           [&] { return check_obstruction_free_member(d, f, s, scope); });
    default:
      return std::nullopt;
  }
}

std::variant<VertexSet, HypothesisFailure> kernel_by_h_walks(const ColoredDigraph& d,
                                                             bool unchecked) {
  const Digraph& g = d.graph();
  const VertexSet free_vertices = obstruction_free_vertices(d);
  const ArcStateGraph states(d);
  std::vector<std::vector<Distance>> rows(g.vertex_count());
  for (VertexId x = 0; x < g.vertex_count(); ++x) {
    rows[x] = min_h_lengths_from(d, states, x);
  }
  if (!unchecked) {
    for (VertexId x = 0; x < g.vertex_count(); ++x) {
      if (contains(free_vertices, x)) continue;
      const bool reaches = std::any_of(free_vertices.begin(), free_vertices.end(),
                                       [&](VertexId w) { return rows[x][w] == Distance(1); });
      if (!reaches) {
        return HypothesisFailure{
            "every vertex has an H-walk to an obstruction-free vertex",
            g.name(x) + " has none"};
      }
    }
  }
  std::vector<std::string> names;
  for (VertexId v : free_vertices) names.push_back(g.name(v));
  std::vector<Arc> arcs;
  for (VertexId i = 0; i < free_vertices.size(); ++i) {
    for (VertexId j = 0; j < free_vertices.size(); ++j) {
      if (i != j && rows[free_vertices[i]][free_vertices[j]] == Distance(1)) {
        arcs.push_back({i, j});
      }
    }
  }
  const Digraph closure(std::move(names), arcs, false);
  VertexSet kernel;
  try {
    for (VertexId v : transitive_kernel(closure)) kernel.push_back(free_vertices[v]);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::precondition) throw;
    fail(ErrorCode::internal, std::string("H-walk closure on obstruction-free "
                                          "vertices is not transitive: ") + e.what());
  }
  return make_vertex_set(std::move(kernel));
}

Construction construct_classlema(const ColoredDigraph& d,
                                 const ConstructOptions& options) {
  auto result = kernel_by_h_walks(d, options.unchecked);
  if (auto* failure = std::get_if<HypothesisFailure>(&result)) return *failure;
  KernelCertificate cert;
  cert.theorem = Theorem::classlema;
  cert.kernel = std::get<VertexSet>(result);
  cert.unchecked = options.unchecked;
  cert.verification = verify_certificate(d, cert.kernel, 2, 1);
  return cert;
}

Construction construct_prop41(const ColoredDigraph& d, const HClassPartition& f,
                              const ClassDigraph& c, std::span<const ClassId> s,
                              unsigned k, unsigned l, const ConstructOptions& options) {
  require_parameters(k, l);
  require_known_classes(f, s);
  if (!options.unchecked) {
    if (auto failure = first_failure(
            [&] { return check_walk_preservative(d, f, c); },
            [&] { return check_class_kernel(c, s, k, l); },
            [&] { return check_sinkless(c); },
            [&] { return check_cycle_lengths(c, k); },
            [&] { return check_neighbourhood_condition(d, f, c, s); })) {
      return *failure;
    }
  }
  return prop41_recipe(d, f, c, s, Theorem::prop41, k, l, options);
}

Construction construct_prop42(const ColoredDigraph& d, const HClassPartition& f,
                              const ClassDigraph& c, std::span<const ClassId> s,
                              unsigned k, unsigned l, const ConstructOptions& options) {
  require_parameters(k, l);
  require_known_classes(f, s);
  if (!options.unchecked) {
    if (auto failure = first_failure(
            [&] { return check_no_isolated(d); },
            [&] { return check_walk_preservative(d, f, c); },
            [&] { return check_class_kernel(c, s, 2, l); },
            [&] { return check_empty_out_neighbourhood(c, s); })) {
      return *failure;
    }
  }
  return union_kernel_certificate(d, f, s, Theorem::prop42, k, l + 1, k, l, options);
}

Construction construct_prop43(const ColoredDigraph& d, const HClassPartition& f,
                              const ClassDigraph& c, std::span<const ClassId> s,
                              unsigned k, unsigned l, const ConstructOptions& options) {
  require_parameters(k, l);
  if (k < 3) fail(ErrorCode::invalid_argument, "this construction needs k >= 3");
  require_known_classes(f, s);
  if (!options.unchecked) {
    if (auto failure = first_failure(
            [&] { return check_no_isolated(d); },
            [&] { return check_walk_preservative(d, f, c); },
            [&] { return check_class_kernel(c, s, k, l); },
            [&] { return check_unilateral_sinkless(d, f, s, "classes of S"); })) {
      return *failure;
    }
  }
  return union_kernel_certificate(d, f, s, Theorem::prop43, k - 1, l + 1, k, l,
                                  options);
}

Construction construct_prop44(const ColoredDigraph& d, const HClassPartition& f,
                              const ClassDigraph& c, std::span<const ClassId> s,
                              unsigned k, unsigned l, const ConstructOptions& options) {
  require_parameters(k, l);
  if (k < 3) fail(ErrorCode::invalid_argument, "this construction needs k >= 3");
  require_known_classes(f, s);
  return prop44_core(d, f, c, s, Theorem::prop44, k, l, options);
}

Construction construct_thm51(const ColoredDigraph& d, const HClassPartition& f,
                             const ClassDigraph& c, std::span<const ClassId> s,
                             unsigned k, unsigned l, const ConstructOptions& options) {
  require_parameters(k, l);
  require_known_classes(f, s);
  if (!options.unchecked) {
    if (auto failure = first_failure(
            [&] { return check_walk_preservative(d, f, c); },
            [&] { return check_class_kernel(c, s, k, l); },
            [&] { return check_empty_out_neighbourhood(c, s); })) {
      return *failure;
    }
  }
  return union_kernel_certificate(d, f, s, Theorem::thm51, k, l + 1, k, l, options);
}

Construction construct_thm52(const ColoredDigraph& d, const HClassPartition& f,
                             const ClassDigraph& c, std::span<const ClassId> s,
                             unsigned k, unsigned l, const ConstructOptions& options) {
  require_parameters(k, l);
  require_known_classes(f, s);
  const Digraph& g = d.graph();
  if (!options.unchecked && (g.empty() || !is_strongly_connected(g))) {
    return HypothesisFailure{"D is strongly connected",
                             g.empty() ? std::string("D is empty")
                                       : "D has " +
                                             std::to_string(strong_components(g).members.size()) +
                                             " strong components"};
  }
  std::vector<ArcId> every_arc(g.arc_count());
  for (ArcId a = 0; a < every_arc.size(); ++a) every_arc[a] = a;
  if (!g.empty() && is_h_digraph(d, every_arc)) {
    return run_recipe([&]() -> Construction {
      return finish(d, Theorem::thm52, kernel_by_paths(g), k, l, options);
    });
  }
  if (!options.unchecked) {
    if (auto failure = first_failure(
            [&] { return check_walk_preservative(d, f, c); },
            [&] { return check_class_kernel(c, s, k, l); },
            [&] { return check_sinkless(c); },
            [&] { return check_cycle_lengths(c, k); },
            [&] { return check_neighbourhood_condition(d, f, c, s); })) {
      return *failure;
    }
  }
  return prop41_recipe(d, f, c, s, Theorem::thm52, k, l, options);
}

Construction construct_thm53(const ColoredDigraph& d, const HClassPartition& f,
                             const ClassDigraph& c, std::span<const ClassId> s,
                             unsigned k, unsigned l, const ConstructOptions& options) {
  require_parameters(k, l);
  if (k < 3) fail(ErrorCode::invalid_argument, "this construction needs k >= 3");
  require_known_classes(f, s);
  if (!options.unchecked) {
    const std::vector<ClassId> every = all_classes(f);
    if (auto failure = first_failure(
            [&] { return check_walk_preservative(d, f, c); },
            [&] { return check_unilateral_sinkless(d, f, every, "every class"); },
            [&] { return check_class_kernel(c, s, k, l); })) {
      return *failure;
    }
  }
  return union_kernel_certificate(d, f, s, Theorem::thm53, k - 1, l + 1, k, l,
                                  options);
}

Construction construct_thm54(const ColoredDigraph& d, const HClassPartition& f,
                             const ClassDigraph& c, unsigned k, unsigned l,
                             const ConstructOptions& options) {
  require_parameters(k, l);
  if (l < k + 1) fail(ErrorCode::invalid_argument, "this construction needs l >= k+1");
  if (!options.unchecked) {
    if (auto failure =
            check_strongly_connected(d, f, all_classes(f), "every class")) {
      return *failure;
    }
    if (!is_symmetric(c.graph)) {
      fail(ErrorCode::internal, "strongly connected classes gave an asymmetric C_F(D)");
    }
  }
  return run_recipe([&]() -> Construction {
    const VertexSet s = symmetric_k_kernel(c.graph, k + 1);
    KernelCertificate cert =
        finish(d, Theorem::thm54, union_path_kernel(d, f, s), k, l, options);
    attach_class_kernel(cert, s, k + 1, l - 1);
    return cert;
  });
}

Construction construct_thm55(const ColoredDigraph& d, const HClassPartition& f,
                             const ClassDigraph& c, unsigned k,
                             const ConstructOptions& options) {
  if (k < 2) fail(ErrorCode::invalid_argument, "k must be at least 2");
  const std::vector<ClassId> every = all_classes(f);
  if (!options.unchecked) {
    const std::string scope = "every class";
    if (auto failure = first_failure(
            [&] { return check_strongly_connected(d, f, every, scope); },
            [&] { return check_obstruction_free_member(d, f, every, scope); })) {
      return *failure;
    }
  }
  if (k == 2) {
    // The hypotheses imply every vertex has an H-walk to an obstruction-free
    // vertex inside its class; the check below confirms it.
    auto result = kernel_by_h_walks(d, options.unchecked);
    if (auto* failure = std::get_if<HypothesisFailure>(&result)) {
      if (!options.unchecked) fail(ErrorCode::internal, failure->witness);
      return *failure;
    }
    return finish(d, Theorem::thm55, std::get<VertexSet>(result), 2, 1, options);
  }
  return run_recipe([&]() -> Construction {
    const VertexSet s = symmetric_k_kernel(c.graph, k - 1);
    return prop44_core(d, f, c, s, Theorem::thm55, k - 1, k - 2, options);
  });
}

ClassKernelResult find_class_kernel(Theorem theorem, const ColoredDigraph& d,
                                    const HClassPartition& f, const ClassDigraph& c,
                                    unsigned k, unsigned l,
                                    const std::optional<std::vector<ClassId>>& supplied,
                                    const ConstructOptions& options) {
  require_parameters(k, l);
  const auto condition = [&](std::span<const ClassId> s) -> Check {
    if (options.unchecked) return std::nullopt;
    return class_kernel_condition(theorem, d, f, c, s);
  };
  if (supplied) {
    require_known_classes(f, *supplied);
    const std::vector<ClassId> s = sorted_classes(*supplied);
    if (!options.unchecked) {
      if (auto failure = check_class_kernel(c, s, k, l)) return *failure;
    }
    return ClassKernel{s, ClassKernelSource::supplied};
  }
  if (l + 1 >= k && is_symmetric(c.graph)) {
    const VertexSet s = symmetric_k_kernel(c.graph, k);
    if (!condition(s)) return ClassKernel{s, ClassKernelSource::symmetric};
  }
  if (c.graph.vertex_count() > options.brute_force_limit) {
    return NotFound{"C_F(D) has " + std::to_string(c.graph.vertex_count()) +
                    " classes, above the search bound of " +
                    std::to_string(options.brute_force_limit) +
                    "; supply a class kernel"};
  }
  for (const VertexSet& s :
       brute_force_kl_kernel(c.graph, k, l, SearchMode::all, options.brute_force_limit)) {
    if (!condition(s)) return ClassKernel{s, ClassKernelSource::search};
  }
  return NotFound{"no (" + std::to_string(k) + "," + std::to_string(l) +
                  ")-kernel of C_F(D) meets the conditions of " +
                  std::string(theorem_tag(theorem))};
}

KernelOutcome construct_kernel(const ColoredDigraph& d,
                               const std::optional<HClassPartition>& supplied,
                               const KernelRequest& request) {
  const ConstructOptions& options = request.options;
  const auto lift = [](Construction&& c) -> KernelOutcome {
    if (auto* cert = std::get_if<KernelCertificate>(&c)) return std::move(*cert);
    return std::get<HypothesisFailure>(std::move(c));
  };

  // Parameter ranges are input errors, reported before any search.
  require_parameters(request.k, request.theorem == Theorem::thm55 ? 1 : request.l);
  switch (request.theorem) {
    case Theorem::prop43:
    case Theorem::prop44:
    case Theorem::thm53:
      if (request.k < 3) fail(ErrorCode::invalid_argument, "this construction needs k >= 3");
      break;
    case Theorem::thm54:
      if (request.l < request.k + 1) {
        fail(ErrorCode::invalid_argument, "this construction needs l >= k+1");
      }
      break;
    default:
      break;
  }

  if (request.theorem == Theorem::brute) {
    const auto found = exhaustive_klh_kernels(d, request.k, request.l, SearchMode::first,
                                              options.brute_force_limit);
    if (found.empty()) {
      return NotFound{"no (" + std::to_string(request.k) + "," +
                      std::to_string(request.l) + ",H)-kernel by walks exists"};
    }
    KernelCertificate cert;
    cert.theorem = Theorem::brute;
    cert.kernel = found.front();
    cert.k = request.k;
    cert.l = request.l;
    cert.unchecked = options.unchecked;
    cert.verification = verify_certificate(d, cert.kernel, cert.k, cert.l);
    return cert;
  }
  if (request.theorem == Theorem::classlema) return lift(construct_classlema(d, options));

  HClassPartition f;
  PartitionSource source = PartitionSource::finest;
  if (supplied) {
    if (auto violation = validate_partition(d, *supplied)) {
      return HypothesisFailure{"H-class partition", violation->explain(d)};
    }
    f = *supplied;
    source = PartitionSource::supplied;
  } else {
    PartitionResult finest = finest_partition(d);
    if (auto* none = std::get_if<NoPartition>(&finest)) return *none;
    f = std::get<HClassPartition>(std::move(finest));
  }
  const ClassDigraph c = class_digraph(d, f);

  std::vector<ArcId> every_arc(d.graph().arc_count());
  for (ArcId a = 0; a < every_arc.size(); ++a) every_arc[a] = a;
  const bool skip_class_kernel = request.theorem == Theorem::thm52 &&
                                 !d.graph().empty() && is_h_digraph(d, every_arc);

  if (!options.unchecked) {
    if (auto failure = structural_failure(request.theorem, d, f, c, request.k)) {
      return *failure;
    }
  }

  std::vector<ClassId> s;
  if (uses_class_kernel(request.theorem) && !skip_class_kernel) {
    ClassKernelResult found = find_class_kernel(request.theorem, d, f, c, request.k,
                                                request.l, request.class_kernel, options);
    if (auto* failure = std::get_if<HypothesisFailure>(&found)) return *failure;
    if (auto* missing = std::get_if<NotFound>(&found)) return *missing;
    s = std::get<ClassKernel>(found).classes;
  }

  Construction built;
  const unsigned k = request.k;
  const unsigned l = request.l;
  switch (request.theorem) {
    case Theorem::prop41: built = construct_prop41(d, f, c, s, k, l, options); break;
    case Theorem::prop42: built = construct_prop42(d, f, c, s, k, l, options); break;
    case Theorem::prop43: built = construct_prop43(d, f, c, s, k, l, options); break;
    case Theorem::prop44: built = construct_prop44(d, f, c, s, k, l, options); break;
    case Theorem::thm51: built = construct_thm51(d, f, c, s, k, l, options); break;
    case Theorem::thm52: built = construct_thm52(d, f, c, s, k, l, options); break;
    case Theorem::thm53: built = construct_thm53(d, f, c, s, k, l, options); break;
    case Theorem::thm54: built = construct_thm54(d, f, c, k, l, options); break;
    case Theorem::thm55: built = construct_thm55(d, f, c, k, options); break;
    default: fail(ErrorCode::internal, "unhandled theorem");
  }
  if (auto* cert = std::get_if<KernelCertificate>(&built)) {
    cert->partition_source = source;
  }
  return lift(std::move(built));
}

}  // namespace hkernel
