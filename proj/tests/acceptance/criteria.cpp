#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <string>

#include "acceptance.hpp"
#include "generators.hpp"
#include "hkernel/constructors.hpp"
#include "hkernel/fixtures.hpp"
#include "oracles.hpp"

namespace hkaccept {

using namespace hkernel;
using hktest::BlobSpec;
using hktest::Bridges;
using hktest::GluedSpec;
using hktest::Rng;

void Result::fail(const std::string& what) {
  pass = false;
  if (notes.size() < 8) notes.push_back(what);
}

std::optional<std::size_t> finite(const Distance& d) {
  if (!d.is_finite()) return std::nullopt;
  return static_cast<std::size_t>(d.value());
}

std::vector<std::vector<bool>> class_membership(const ColoredDigraph& d,
                                                const HClassPartition& f) {
  const Digraph& g = d.graph();
  std::vector<std::vector<bool>> in(f.class_count(), std::vector<bool>(g.vertex_count()));
  for (ClassId c = 0; c < f.class_count(); ++c) {
    for (ArcId a : f.arcs_of(c)) {
      in[c][g.arc(a).tail] = true;
      in[c][g.arc(a).head] = true;
    }
  }
  return in;
}

bool walk_preservative_reference(const ColoredDigraph& d, const HClassPartition& f) {
  const Digraph& g = d.graph();
  const auto adjacent = hktest::class_adjacency(d, f);
  const auto in = class_membership(d, f);
  for (ClassId from = 0; from < f.class_count(); ++from) {
    std::vector<std::vector<VertexId>> out(g.vertex_count());
    for (ArcId a : f.arcs_of(from)) out[g.arc(a).tail].push_back(g.arc(a).head);
    for (ClassId to = 0; to < f.class_count(); ++to) {
      if (to == from || !adjacent[from][to]) continue;
      for (VertexId x = 0; x < g.vertex_count(); ++x) {
        if (!in[from][x]) continue;
        std::vector<bool> seen(g.vertex_count());
        std::deque<VertexId> queue{x};
        seen[x] = true;
        bool reached = false;
        while (!queue.empty() && !reached) {
          const VertexId u = queue.front();
          queue.pop_front();
          reached = in[to][u];
          for (VertexId v : out[u]) {
            if (!seen[v]) {
              seen[v] = true;
              queue.push_back(v);
            }
          }
        }
        if (!reached) return false;
      }
    }
  }
  return true;
}

namespace {

std::string pair_text(unsigned k, unsigned l) {
  return "(" + std::to_string(k) + "," + std::to_string(l) + ")";
}

}  // namespace

// ---------------------------------------------------------------- AC1

namespace {

// Walks leaving u with at most `max_arcs` arcs, saturating at `cap`.
std::size_t walk_count(const Digraph& g, VertexId u, std::size_t max_arcs, std::size_t cap) {
  std::vector<std::size_t> ending(g.vertex_count(), 0);
  ending[u] = 1;
  std::size_t total = 0;
  for (std::size_t step = 0; step < max_arcs; ++step) {
    std::vector<std::size_t> next(g.vertex_count(), 0);
    for (const Arc& a : g.arcs()) next[a.head] = std::min(cap, next[a.head] + ending[a.tail]);
    ending = std::move(next);
    for (std::size_t c : ending) total = std::min(cap, total + c);
    if (total == cap) break;
  }
  return total;
}

// Depth-first enumeration is run where the walk count stays below this.
constexpr std::size_t kEnumerationBudget = 20000;

}  // namespace

Result oracle_cross_validation() {
  Result result;
  Rng rng(0xAC1);
  constexpr std::array<double, 3> kDensity{0.2, 0.5, 0.8};
  std::size_t pairs = 0;
  std::size_t finite_pairs = 0;
  std::size_t enumerated_pairs = 0;
  for (int instance = 0; instance < 500; ++instance) {
    const std::size_t n = rng.between(2, 8);
    const double p = static_cast<double>(rng.between(1, 9)) / 10.0;
    const std::size_t colors = rng.between(1, 4);
    const double density = kDensity[rng.below(kDensity.size())];
    const ColoredDigraph d = hktest::random_colored(rng, n, p, 14, colors, density);
    const std::size_t m = d.graph().arc_count();
    for (VertexId u = 0; u < n; ++u) {
      const auto library = min_h_lengths_from(d, u);
      const auto short_cutoff = hktest::layered_min_h_lengths_from(d, u, 2 * m);
      const auto long_cutoff = hktest::layered_min_h_lengths_from(d, u, 4 * m);
      const bool enumerate = walk_count(d.graph(), u, 2 * m, kEnumerationBudget) < kEnumerationBudget;
      for (VertexId v = 0; v < n; ++v) {
        if (v == u) continue;
        ++pairs;
        const auto got = finite(library[v]);
        if (got) ++finite_pairs;
        bool agree = got == short_cutoff[v] && short_cutoff[v] == long_cutoff[v];
        if (enumerate) {
          ++enumerated_pairs;
          agree = agree && hktest::enumerated_min_h_length(d, u, v, 2 * m) == got;
        }
        if (!agree) {
          result.fail("instance " + std::to_string(instance) + " pair (" +
                      d.graph().name(u) + "," + d.graph().name(v) + ")");
        }
      }
    }
  }
  result.summary = "500 instances, " + std::to_string(pairs) + " ordered pairs (" +
                   std::to_string(finite_pairs) + " finite, " + std::to_string(enumerated_pairs) +
                   " also by depth-first enumeration), " + std::to_string(result.notes.size()) +
                   " mismatches";
  return result;
}

// ---------------------------------------------------------------- AC2

namespace {

struct Trial {
  ColoredDigraph d;
  unsigned k;
  unsigned l;
};

BlobSpec blobs_with(Bridges bridges) {
  BlobSpec spec;
  spec.bridges = bridges;
  return spec;
}

ColoredDigraph glued(Rng& rng, double tail) {
  GluedSpec spec;
  spec.tail = tail;
  return hktest::glued_cycles(rng, spec);
}

unsigned draw(Rng& rng, unsigned lo, unsigned hi) {
  return static_cast<unsigned>(rng.between(lo, hi));
}

// Instances shaped so that the theorem's hypotheses often hold. Whether they
// do is decided by the constructor's own checks; only certificates count.
Trial targeted(Theorem t, Rng& rng) {
  using hktest::cycles_and_bridges;
  switch (t) {
    case Theorem::classlema: {
      ColoredDigraph d = rng.chance(0.5)
                             ? hktest::random_colored(rng, rng.between(2, 7), 0.35, 12,
                                                      rng.between(1, 3), 0.8)
                             : cycles_and_bridges(rng, BlobSpec{});
      return {std::move(d), 2, 1};
    }
    case Theorem::prop41:
      return {cycles_and_bridges(rng, blobs_with(Bridges::every_exits)), draw(rng, 2, 4),
              draw(rng, 1, 3)};
    case Theorem::prop42:
      return {cycles_and_bridges(rng, blobs_with(Bridges::acyclic)), draw(rng, 2, 4),
              draw(rng, 1, 3)};
    case Theorem::prop43: {
      ColoredDigraph d =
          rng.chance(0.5) ? cycles_and_bridges(rng, BlobSpec{}) : glued(rng, 0.0);
      return {std::move(d), draw(rng, 3, 4), draw(rng, 1, 3)};
    }
    case Theorem::prop44: {
      BlobSpec spec;
      spec.min_cycle = 3;
      spec.max_extra_bridges = 1;
      ColoredDigraph d = rng.chance(0.5) ? cycles_and_bridges(rng, spec) : glued(rng, 0.0);
      return {std::move(d), draw(rng, 3, 4), draw(rng, 1, 3)};
    }
    case Theorem::thm51: {
      BlobSpec spec = blobs_with(Bridges::acyclic);
      spec.max_isolated = 2;
      return {cycles_and_bridges(rng, spec), draw(rng, 2, 4), draw(rng, 1, 3)};
    }
    case Theorem::thm52: {
      ColoredDigraph d = rng.chance(0.5)
                             ? cycles_and_bridges(rng, blobs_with(Bridges::ring))
                             : hktest::strong_h_digraph(rng, rng.between(2, 7),
                                                        rng.between(1, 3));
      return {std::move(d), draw(rng, 2, 4), draw(rng, 1, 3)};
    }
    case Theorem::thm53:
      return {glued(rng, 0.3), draw(rng, 3, 4), draw(rng, 1, 3)};
    case Theorem::thm54: {
      const unsigned k = draw(rng, 2, 3);
      return {glued(rng, 0.0), k, draw(rng, k + 1, k + 2)};
    }
    default: {
      const unsigned k = draw(rng, 2, 4);
      return {glued(rng, 0.0), k, k - 1};
    }
  }
}

struct Labelled {
  const char* label;
  Theorem theorem;
};

constexpr Labelled kConstructors[] = {
    {"thm35", Theorem::classlema}, {"prop41", Theorem::prop41}, {"prop42", Theorem::prop42},
    {"prop43", Theorem::prop43},   {"prop44", Theorem::prop44}, {"thm51", Theorem::thm51},
    {"thm52", Theorem::thm52},     {"thm53", Theorem::thm53},   {"thm54", Theorem::thm54},
    {"thm55", Theorem::thm55},
};

}  // namespace

Result constructor_soundness() {
  constexpr std::size_t kTarget = 100;
  constexpr std::size_t kMaxAttempts = 5000;
  Result result;
  std::size_t total = 0;
  std::size_t short_of_target = 0;
  for (const auto& [label, theorem] : kConstructors) {
    Rng rng(0xAC2 + static_cast<std::uint64_t>(theorem));
    std::size_t met = 0;
    std::size_t attempts = 0;
    std::size_t failures = 0;
    while (met < kTarget && attempts < kMaxAttempts) {
      ++attempts;
      const Trial trial = targeted(theorem, rng);
      KernelRequest request;
      request.theorem = theorem;
      request.k = trial.k;
      request.l = trial.l;
      const KernelOutcome outcome = construct_kernel(trial.d, std::nullopt, request);
      const auto* cert = std::get_if<KernelCertificate>(&outcome);
      if (!cert) continue;
      ++met;
      const auto table = hktest::layered_table(trial.d, 2 * trial.d.graph().arc_count());
      const bool ok = cert->theorem == theorem && cert->verification.passed() &&
                      !verify_klh_kernel(trial.d, cert->kernel, cert->k, cert->l) &&
                      hktest::is_klh_kernel_reference(table, cert->kernel, cert->k, cert->l);
      if (!ok) {
        ++failures;
        result.fail(std::string(label) + ": certificate " + pair_text(cert->k, cert->l) +
                    " rejected (attempt " + std::to_string(attempts) + ")");
      }
    }
    total += met;
    if (met < kTarget) {
      ++short_of_target;
      result.pass = false;
    }
    result.notes.push_back(std::string(label) + ": " + std::to_string(met) + " certificates from " +
                           std::to_string(attempts) + " instances, " +
                           std::to_string(failures) + " failures");
  }
  result.summary = std::to_string(total) + " certificates over 10 constructors, " +
                   std::to_string(short_of_target) + " short of " +
                   std::to_string(kTarget) + " instances";
  return result;
}

// ---------------------------------------------------------------- AC3

Result greedy_symmetric_kernels() {
  Result result;
  Rng rng(0xAC3);
  std::size_t checked = 0;
  for (int instance = 0; instance < 200; ++instance) {
    const std::size_t n = rng.between(1, 10);
    const double p = static_cast<double>(rng.between(1, 7)) / 10.0;
    const Digraph g = hktest::random_symmetric(rng, n, p);
    std::vector<VertexId> order(n);
    for (VertexId v = 0; v < n; ++v) order[v] = v;
    for (unsigned k = 2; k <= 4; ++k) {
      const auto kernels = brute_force_kl_kernel(g, k, k - 1, SearchMode::all);
      for (int round = 0; round < 5; ++round) {
        rng.shuffle(order);
        const VertexSet s = greedy_k_independent(g, k, order);
        ++checked;
        const bool reference = hktest::is_kl_kernel_reference(g, s, k, k - 1);
        const bool listed = std::find(kernels.begin(), kernels.end(), s) != kernels.end();
        if (!reference || !listed) {
          result.fail("instance " + std::to_string(instance) + ", k=" + std::to_string(k) +
                      ": greedy set is not a " + std::to_string(k) + "-kernel");
        }
      }
    }
  }
  result.summary = "200 symmetric digraphs, " + std::to_string(checked) +
                   " greedy sets checked, " + std::to_string(result.notes.size()) +
                   " counterexamples";
  return result;
}

// ---------------------------------------------------------------- AC5

namespace {

bool absorbed_within(const std::vector<std::vector<std::optional<std::size_t>>>& table,
                     const VertexSet& k, std::size_t l) {
  for (VertexId x = 0; x < table.size(); ++x) {
    if (contains(k, x)) continue;
    if (std::none_of(k.begin(), k.end(),
                     [&](VertexId y) { return table[x][y] && *table[x][y] <= l; })) {
      return false;
    }
  }
  return true;
}

}  // namespace

Result tightness_fixtures() {
  Result result;
  const auto expect = [&](bool holds, const std::string& what) {
    if (!holds) result.fail(what);
  };
  std::size_t checks = 0;
  const auto check = [&](bool holds, const std::string& what) {
    ++checks;
    expect(holds, what);
  };

  {
    const Instance fig1 = *fixture("fig1-style");
    const ColoredDigraph& d = fig1.digraph;
    const HClassPartition& f = *fig1.partition;
    const ClassDigraph c = class_digraph(d, f);
    const VertexSet s{5};  // F6
    check(is_walk_preservative(d, f, c) && walk_preservative_reference(d, f),
          "fig1: partition is not walk-preservative");
    check(is_kl_kernel(c.graph, s, 2, 3) && hktest::is_kl_kernel_reference(c.graph, s, 2, 3),
          "fig1: {F6} is not 3-absorbent in C_F(D)");
    const Subdigraph inner = class_subdigraph(d, f, 5);
    const VertexId x4 = d.graph().vertex("x4");
    const VertexSet local{*inner.local(x4)};
    check(!verify_kernel_by_paths(inner.graph, local) &&
              hktest::is_path_kernel(inner.graph, local),
          "fig1: {x4} is not a kernel by paths of D<F6>");
    const VertexSet k{x4};
    const auto table = hktest::layered_table(d, 2 * d.graph().arc_count());
    for (unsigned r = 1; r <= 3; ++r) {
      check(verify_l_absorbent_by_walks(d, k, r).has_value() && !absorbed_within(table, k, r),
            "fig1: {x4} is (" + std::to_string(r) + ",H)-absorbent");
    }
    check(!verify_l_absorbent_by_walks(d, k, 4) && absorbed_within(table, k, 4),
          "fig1: {x4} is not (4,H)-absorbent");
  }

  {
    const Instance fig2 = *fixture("fig2-style");
    const ColoredDigraph& d = fig2.digraph;
    const HClassPartition& f = *fig2.partition;
    const ClassDigraph c = class_digraph(d, f);
    check(!validate_partition(d, f), "fig2: not an H-class partition");
    check(!is_walk_preservative(d, f, c) && !walk_preservative_reference(d, f),
          "fig2: partition is walk-preservative");
    const VertexSet s{4};  // F5
    check(is_kl_kernel(c.graph, s, 2, 4) && hktest::is_kl_kernel_reference(c.graph, s, 2, 4),
          "fig2: {F5} is not 4-absorbent in C_F(D)");
    const Subdigraph inner = class_subdigraph(d, f, 4);
    const auto kernels = hktest::all_path_kernels(inner.graph);
    check(!kernels.empty(), "fig2: D<F5> has no kernel by paths");
    const auto table = hktest::layered_table(d, 2 * d.graph().arc_count());
    for (const VertexSet& local : kernels) {
      const VertexSet k = inner.to_parent(local);
      check(verify_l_absorbent_by_walks(d, k, 5).has_value() && !absorbed_within(table, k, 5),
            "fig2: a kernel by paths of D<F5> is (5,H)-absorbent");
    }
  }
  result.summary = std::to_string(checks) + " fixture checks, " +
                   std::to_string(result.notes.size()) + " failed";
  return result;
}

// ---------------------------------------------------------------- AC6

namespace {

// A random nonempty independent set of C: no arc joins two distinct members.
std::vector<ClassId> random_independent(Rng& rng, const Digraph& c) {
  std::vector<ClassId> order(c.vertex_count());
  for (ClassId i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  std::vector<ClassId> s;
  const std::size_t want = rng.between(1, order.size());
  for (ClassId x : order) {
    if (s.size() == want) break;
    const bool free = std::none_of(s.begin(), s.end(), [&](ClassId y) {
      return c.has_arc(x, y) || c.has_arc(y, x);
    });
    if (free) s.push_back(x);
  }
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

Result swap_loop() {
  Result result;
  Rng rng(0xAC6);
  std::size_t instances = 0;
  std::size_t attempts = 0;
  std::size_t swaps = 0;
  std::size_t max_swaps = 0;
  while (instances < 200 && attempts < 20000) {
    ++attempts;
    ColoredDigraph d = rng.chance(0.5)
                           ? hktest::cycles_and_bridges(rng, blobs_with(Bridges::every_exits))
                           : glued(rng, 0.0);
    const auto finest = finest_partition(d);
    if (!std::holds_alternative<HClassPartition>(finest)) continue;
    const HClassPartition& f = std::get<HClassPartition>(finest);
    const ClassDigraph c = class_digraph(d, f);
    // Hypotheses, from the definitions.
    const auto adjacent = hktest::class_adjacency(d, f);
    // A loop does not keep a class from being a sink.
    bool sinkless = true;
    for (ClassId x = 0; x < f.class_count(); ++x) {
      bool exits = false;
      for (ClassId y = 0; y < f.class_count(); ++y) exits = exits || (y != x && adjacent[x][y]);
      sinkless = sinkless && exits;
    }
    if (!sinkless || !walk_preservative_reference(d, f)) continue;
    const std::vector<ClassId> s = random_independent(rng, c.graph);
    ++instances;

    ConstrainedKernel found;
    try {
      found = constrained_kernel_by_paths(d, f, c, s);
    } catch (const Error& e) {
      result.fail("instance " + std::to_string(instances) + " threw: " + e.what());
      continue;
    }
    // V(D1), V(D2) and kernels by paths of D1, independently.
    const auto in = class_membership(d, f);
    std::vector<bool> in_s(f.class_count()), in_n(f.class_count());
    for (ClassId x : s) in_s[x] = true;
    for (ClassId x : s) {
      for (ClassId y = 0; y < f.class_count(); ++y) {
        if (adjacent[x][y] && !in_s[y]) in_n[y] = true;
      }
    }
    std::size_t d1_size = 0;
    for (VertexId v = 0; v < d.graph().vertex_count(); ++v) {
      bool any = false;
      for (ClassId x : s) any = any || in[x][v];
      d1_size += any;
    }
    const Subdigraph d1 = union_subdigraph(d, f, s);
    std::vector<VertexId> local;
    bool inside_d1 = true;
    for (VertexId v : found.kernel) {
      const auto id = d1.local(v);
      inside_d1 = inside_d1 && id.has_value();
      if (id) local.push_back(*id);
    }
    const VertexSet local_set = make_vertex_set(local);
    bool inside_d2 = true;
    for (VertexId v : found.kernel) {
      bool any = false;
      for (ClassId y = 0; y < f.class_count(); ++y) any = any || (in_n[y] && in[y][v]);
      inside_d2 = inside_d2 && any;
    }
    swaps += found.swaps.size();
    max_swaps = std::max(max_swaps, found.swaps.size());
    const std::string where = "instance " + std::to_string(instances);
    if (found.swaps.size() > d1_size) result.fail(where + ": more swaps than |V(D1)|");
    if (found.d1_vertices.size() != d1_size) result.fail(where + ": V(D1) mismatch");
    if (!inside_d1 || verify_kernel_by_paths(d1.graph, local_set) ||
        !hktest::is_path_kernel(d1.graph, local_set)) {
      result.fail(where + ": not a kernel by paths of D1");
    }
    if (!inside_d2) result.fail(where + ": kernel leaves V(D2)");
  }
  if (instances < 200) result.fail("only " + std::to_string(instances) + " instances");
  result.summary = std::to_string(instances) + " instances, " + std::to_string(swaps) +
                   " swaps in total (max " + std::to_string(max_swaps) + "), " +
                   std::to_string(result.notes.size()) + " failures";
  return result;
}

}  // namespace hkaccept
