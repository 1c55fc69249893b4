#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "generators.hpp"
#include "hkernel/fixtures.hpp"
#include "hkernel/kernels.hpp"
#include "named.hpp"
#include "oracles.hpp"

namespace {

using namespace hkernel;
using hktest::ids;
using hktest::named_colored;
using hktest::named_digraph;

TEST(KernelsTest, KernelByPaths) {
  const Digraph path = named_digraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  EXPECT_EQ(kernel_by_paths(path), ids(path, {"c"}));
  const Digraph digons = named_digraph(
      {"a", "b", "c", "d"}, {{"a", "b"}, {"b", "a"}, {"c", "d"}, {"d", "c"}});
  EXPECT_EQ(kernel_by_paths(digons), ids(digons, {"a", "c"}));
  const Digraph cycle = named_digraph({"a", "b", "c"}, {{"b", "c"}, {"c", "a"}, {"a", "b"}});
  EXPECT_EQ(kernel_by_paths(cycle).size(), 1u);
  EXPECT_THROW(kernel_by_paths(Digraph()), Error);
}

TEST(KernelsTest, VerifyKernelByPaths) {
  const Digraph cycle = named_digraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  const auto both = verify_kernel_by_paths(cycle, ids(cycle, {"a", "b"}));
  ASSERT_TRUE(both.has_value());
  EXPECT_EQ(both->kind, PathKernelViolation::Kind::independence);
  const auto none = verify_kernel_by_paths(cycle, {});
  ASSERT_TRUE(none.has_value());
  EXPECT_EQ(none->kind, PathKernelViolation::Kind::absorbency);
  EXPECT_FALSE(verify_kernel_by_paths(cycle, ids(cycle, {"b"})).has_value());
}

// F1 = a<->b (color 1), then b->c, c->d, d->a in fresh colors, so C_F(D) is
// F1 (looped) -> F2 -> F3 -> F4 -> F1.
ColoredDigraph one_swap_instance(const hktest::Names& order) {
  return named_colored(order,
                       {{"a", "b", "1"}, {"b", "a", "1"}, {"b", "c", "2"}, {"c", "d", "3"},
                        {"d", "a", "4"}},
                       {"1", "2", "3", "4"}, {{"1", "1"}, {"2", "2"}, {"3", "3"}, {"4", "4"}});
}

TEST(KernelsTest, ConstrainedKernelSwapsOnce) {
  const ColoredDigraph d = one_swap_instance({"a", "b", "c", "d"});
  const auto f = std::get<HClassPartition>(finest_partition(d));
  const ClassDigraph c = class_digraph(d, f);
  const std::vector<ClassId> s{f.class_of(0)};
  const ConstrainedKernel result = constrained_kernel_by_paths(d, f, c, s);
  const Digraph& g = d.graph();
  ASSERT_EQ(result.swaps.size(), 1u);
  EXPECT_EQ(result.swaps[0].removed, g.vertex("a"));
  EXPECT_EQ(result.swaps[0].added, g.vertex("b"));
  EXPECT_EQ(result.kernel, ids(g, {"b"}));
  EXPECT_EQ(result.d2_vertices, ids(g, {"b", "c"}));
  const Subdigraph d1 = union_subdigraph(d, f, s);
  VertexSet local;
  for (VertexId v : result.kernel) local.push_back(*d1.local(v));
  EXPECT_TRUE(hktest::is_path_kernel(d1.graph, local));
}

TEST(KernelsTest, ConstrainedKernelWithoutSwaps) {
  const ColoredDigraph d = one_swap_instance({"b", "a", "c", "d"});
  const auto f = std::get<HClassPartition>(finest_partition(d));
  const ClassDigraph c = class_digraph(d, f);
  const std::vector<ClassId> s{f.class_of(0)};
  const ConstrainedKernel result = constrained_kernel_by_paths(d, f, c, s);
  EXPECT_TRUE(result.swaps.empty());
  EXPECT_EQ(result.kernel, ids(d.graph(), {"b"}));
}

TEST(KernelsTest, ConstrainedKernelPreconditions) {
  // In two-blob the color-2 triangle is a sink of C_F(D).
  const Instance blob = *fixture("two-blob");
  const ClassDigraph blob_c = class_digraph(blob.digraph, *blob.partition);
  const std::vector<ClassId> f2{1};
  EXPECT_THROW(constrained_kernel_by_paths(blob.digraph, *blob.partition, blob_c, f2), Error);

  const Instance fig2 = *fixture("fig2-style");
  const ClassDigraph fig2_c = class_digraph(fig2.digraph, *fig2.partition);
  const std::vector<ClassId> f5{4};
  EXPECT_THROW(constrained_kernel_by_paths(fig2.digraph, *fig2.partition, fig2_c, f5), Error);

  const ColoredDigraph d = one_swap_instance({"a", "b", "c", "d"});
  const auto f = std::get<HClassPartition>(finest_partition(d));
  const std::vector<ClassId> adjacent{0, 1};
  try {
    constrained_kernel_by_paths(d, f, class_digraph(d, f), adjacent);
    FAIL() << "dependent class set accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::precondition);
    EXPECT_NE(std::string(e.what()).find("independent"), std::string::npos);
  }
}

TEST(KernelsTest, BruteForceKernels) {
  const Digraph arcless = Digraph::with_indices(3, {}, false);
  for (unsigned k : {2u, 5u}) {
    EXPECT_EQ(brute_force_kl_kernel(arcless, k, 1, SearchMode::all),
              (std::vector<VertexSet>{{0, 1, 2}}));
  }
  const Digraph square =
      named_digraph({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
  EXPECT_EQ(brute_force_kl_kernel(square, 2, 1, SearchMode::all),
            (std::vector<VertexSet>{ids(square, {"a", "c"}), ids(square, {"b", "d"})}));
  EXPECT_EQ(brute_force_kl_kernel(square, 2, 1, SearchMode::first).size(), 1u);
  const Digraph triangle = named_digraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  EXPECT_TRUE(brute_force_kl_kernel(triangle, 2, 1, SearchMode::all).empty());
  const Digraph big = Digraph::with_indices(16, {}, false);
  try {
    brute_force_kl_kernel(big, 2, 1, SearchMode::first);
    FAIL() << "size bound ignored";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::size_limit);
  }
  EXPECT_THROW(brute_force_kl_kernel(square, 1, 1, SearchMode::first), Error);
}

TEST(KernelsTest, SymmetricKernels) {
  const Digraph path =
      named_digraph({"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"}});
  EXPECT_EQ(symmetric_k_kernel(path, 2), ids(path, {"a", "c"}));
  EXPECT_TRUE(hktest::is_kl_kernel_reference(path, ids(path, {"a", "c"}), 2, 1));
  EXPECT_EQ(symmetric_k_kernel(path, 3), ids(path, {"a"}));
  EXPECT_TRUE(hktest::is_kl_kernel_reference(path, ids(path, {"a"}), 3, 2));
  EXPECT_EQ(symmetric_k_kernel(Digraph::with_indices(1, {}, false), 2), (VertexSet{0}));
  EXPECT_THROW(symmetric_k_kernel(named_digraph({"a", "b"}, {{"a", "b"}}), 2), Error);
  const std::vector<VertexId> short_order{0, 1};
  EXPECT_THROW(greedy_k_independent(path, 2, short_order), Error);
}

TEST(KernelsTest, TransitiveKernels) {
  const Digraph tournament =
      named_digraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  EXPECT_EQ(transitive_kernel(tournament), ids(tournament, {"c"}));
  const Digraph complete = named_digraph(
      {"a", "b", "c"}, {{"a", "b"}, {"b", "a"}, {"a", "c"}, {"c", "a"}, {"b", "c"}, {"c", "b"}});
  EXPECT_EQ(transitive_kernel(complete).size(), 1u);
  const Digraph pair = named_digraph(
      {"a", "b", "c", "x", "y", "z"},
      {{"a", "b"}, {"b", "c"}, {"a", "c"}, {"x", "y"}, {"y", "z"}, {"x", "z"}});
  EXPECT_EQ(transitive_kernel(pair), ids(pair, {"c", "z"}));
  const Digraph path = named_digraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  try {
    transitive_kernel(path);
    FAIL() << "non-transitive digraph accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::precondition);
    EXPECT_NE(std::string(e.what()).find("(a,b,c)"), std::string::npos);
  }
}

TEST(KernelsProperty, PathKernelsMatchDefinition) {
  hktest::Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const Digraph g = hktest::random_digraph(rng, rng.between(1, 8), 0.25);
    const VertexSet k = kernel_by_paths(g);
    EXPECT_FALSE(verify_kernel_by_paths(g, k).has_value());
    EXPECT_TRUE(hktest::is_path_kernel(g, k));
    VertexSet shifted = k;
    if (shifted.size() < g.vertex_count()) {
      // Adding any vertex breaks independence or was redundant.
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (!contains(k, v)) {
          shifted.push_back(v);
          break;
        }
      }
      EXPECT_FALSE(hktest::is_path_kernel(g, make_vertex_set(shifted)));
      EXPECT_TRUE(verify_kernel_by_paths(g, make_vertex_set(shifted)).has_value());
    }
  }
}

// (2,1)-kernels are the classical kernels: no arc inside S, an arc from
// every other vertex into S.
TEST(KernelsProperty, BruteForceTwoOneMatchesClassicalKernels) {
  hktest::Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = rng.between(1, 5);
    const Digraph g = hktest::random_digraph(rng, n, 0.35);
    std::vector<VertexSet> expected;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      VertexSet s;
      for (VertexId v = 0; v < n; ++v) {
        if (mask & (1u << v)) s.push_back(v);
      }
      bool ok = true;
      for (VertexId u : s) {
        for (VertexId v : s) ok = ok && !g.has_arc(u, v);
      }
      for (VertexId x = 0; x < n && ok; ++x) {
        if (contains(s, x)) continue;
        ok = std::any_of(s.begin(), s.end(), [&](VertexId t) { return g.has_arc(x, t); });
      }
      if (ok) expected.push_back(s);
    }
    std::sort(expected.begin(), expected.end(), [](const VertexSet& a, const VertexSet& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    EXPECT_EQ(brute_force_kl_kernel(g, 2, 1, SearchMode::all), expected);
  }
}

TEST(KernelsProperty, BruteForceMatchesReferenceForLargerParameters) {
  hktest::Rng rng(33);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = rng.between(1, 6);
    const Digraph g = hktest::random_digraph(rng, n, 0.3);
    const unsigned k = static_cast<unsigned>(rng.between(2, 4));
    const unsigned l = static_cast<unsigned>(rng.between(1, 3));
    const auto found = brute_force_kl_kernel(g, k, l, SearchMode::all);
    std::size_t count = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      VertexSet s;
      for (VertexId v = 0; v < n; ++v) {
        if (mask & (1u << v)) s.push_back(v);
      }
      const bool reference = hktest::is_kl_kernel_reference(g, s, k, l);
      count += reference;
      EXPECT_EQ(std::find(found.begin(), found.end(), s) != found.end(), reference);
      EXPECT_EQ(is_kl_kernel(g, s, k, l), reference);
    }
    EXPECT_EQ(found.size(), count);
  }
}

TEST(KernelsProperty, TransitiveKernelOnTransitiveClosures) {
  hktest::Rng rng(34);
  for (int trial = 0; trial < 150; ++trial) {
    const Digraph g = hktest::random_digraph(rng, rng.between(1, 7), 0.2);
    const auto reach = hktest::closure(g);
    std::vector<Arc> arcs;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (u != v && reach[u][v]) arcs.push_back({u, v});
      }
    }
    const Digraph closed = Digraph::with_indices(g.vertex_count(), arcs, false);
    const VertexSet k = transitive_kernel(closed);
    EXPECT_TRUE(hktest::is_kl_kernel_reference(closed, k, 2, 1));
  }
}

}  // namespace
