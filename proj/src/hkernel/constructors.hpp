#pragma once

// Constructive existence results for (k,l,H)-kernels by walks. Each
// constructor checks its own hypotheses, builds the set the corresponding
// proof describes, and runs the brute-force oracle over the result before
// handing back a certificate.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hkernel/hclass.hpp"
#include "hkernel/kernels.hpp"
#include "hkernel/oracle.hpp"

namespace hkernel {

enum class Theorem {
  classlema,
  prop41,
  prop42,
  prop43,
  prop44,
  thm51,
  thm52,
  thm53,
  thm54,
  thm55,
  brute,
};

std::string_view theorem_tag(Theorem t);
/// Accepts every tag plus the CLI alias "thm35" for classlema.
std::optional<Theorem> parse_theorem(std::string_view tag);
/// Whether the construction goes through a (k,l)-kernel of C_F(D).
bool uses_class_kernel(Theorem t);

enum class PartitionSource { none, finest, supplied };

struct Verification {
  bool independent = false;
  bool absorbent = false;
  std::optional<KernelViolation> counterexample;

  bool passed() const { return independent && absorbent; }
};

struct KernelCertificate {
  Theorem theorem = Theorem::brute;
  VertexSet kernel;
  unsigned k = 2;
  unsigned l = 1;
  std::optional<std::vector<ClassId>> class_kernel;
  std::optional<std::pair<unsigned, unsigned>> class_kernel_parameters;
  PartitionSource partition_source = PartitionSource::none;
  VertexSet isolated;  // W, appended to the core construction
  std::vector<Swap> swaps;
  bool unchecked = false;
  Verification verification;
};

struct HypothesisFailure {
  std::string hypothesis;
  std::string witness;
};

struct NotFound {
  std::string reason;
};

struct ConstructOptions {
  /// Skip hypothesis checks; the oracle still decides whether the set holds.
  bool unchecked = false;
  std::size_t brute_force_limit = kDefaultBruteForceLimit;
};

using Construction = std::variant<KernelCertificate, HypothesisFailure>;

/// Fills the verification block from the oracle.
Verification verify_certificate(const ColoredDigraph& d, const VertexSet& kernel,
                                unsigned k, unsigned l);

/// Kernel by H-walks via the transitive closure digraph on obstruction-free
/// vertices. Fails when some vertex has no H-walk to an obstruction-free one.
std::variant<VertexSet, HypothesisFailure> kernel_by_h_walks(const ColoredDigraph& d,
                                                             bool unchecked = false);

Construction construct_classlema(const ColoredDigraph& d,
                                 const ConstructOptions& options = {});

/// The class-kernel constructors take S as class ids; (k,l) are the
/// parameters of S in C_F(D).
Construction construct_prop41(const ColoredDigraph& d, const HClassPartition& f,
                              const ClassDigraph& c, std::span<const ClassId> s,
                              unsigned k, unsigned l,
                              const ConstructOptions& options = {});
Construction construct_prop42(const ColoredDigraph& d, const HClassPartition& f,
                              const ClassDigraph& c, std::span<const ClassId> s,
                              unsigned k, unsigned l,
                              const ConstructOptions& options = {});
Construction construct_prop43(const ColoredDigraph& d, const HClassPartition& f,
                              const ClassDigraph& c, std::span<const ClassId> s,
                              unsigned k, unsigned l,
                              const ConstructOptions& options = {});
Construction construct_prop44(const ColoredDigraph& d, const HClassPartition& f,
                              const ClassDigraph& c, std::span<const ClassId> s,
                              unsigned k, unsigned l,
                              const ConstructOptions& options = {});
Construction construct_thm51(const ColoredDigraph& d, const HClassPartition& f,
                             const ClassDigraph& c, std::span<const ClassId> s,
                             unsigned k, unsigned l,
                             const ConstructOptions& options = {});
/// S is ignored (and may be empty) when D is an H-digraph.
Construction construct_thm52(const ColoredDigraph& d, const HClassPartition& f,
                             const ClassDigraph& c, std::span<const ClassId> s,
                             unsigned k, unsigned l,
                             const ConstructOptions& options = {});
Construction construct_thm53(const ColoredDigraph& d, const HClassPartition& f,
                             const ClassDigraph& c, std::span<const ClassId> s,
                             unsigned k, unsigned l,
                             const ConstructOptions& options = {});
/// Certificate parameters (k,l) with k >= 2 and l >= k+1.
Construction construct_thm54(const ColoredDigraph& d, const HClassPartition& f,
                             const ClassDigraph& c, unsigned k, unsigned l,
                             const ConstructOptions& options = {});
/// Certificate parameters (k,k-1).
Construction construct_thm55(const ColoredDigraph& d, const HClassPartition& f,
                             const ClassDigraph& c, unsigned k,
                             const ConstructOptions& options = {});

/// The theorem-specific condition a class kernel S must meet beyond being a
/// (k,l)-kernel of C_F(D); nullopt when it holds.
std::optional<HypothesisFailure> class_kernel_condition(
    Theorem theorem, const ColoredDigraph& d, const HClassPartition& f,
    const ClassDigraph& c, std::span<const ClassId> s);

/// The theorem's hypotheses that do not depend on S (partition shape, C_F(D)
/// structure, D itself); nullopt when they hold or the theorem has none.
std::optional<HypothesisFailure> structural_failure(Theorem theorem,
                                                    const ColoredDigraph& d,
                                                    const HClassPartition& f,
                                                    const ClassDigraph& c, unsigned k);

/// Nullopt when S is a (k,l)-kernel of C_F(D); otherwise the reason.
std::optional<HypothesisFailure> check_class_kernel(const ClassDigraph& c,
                                                    std::span<const ClassId> s,
                                                    unsigned k, unsigned l);

enum class ClassKernelSource { supplied, symmetric, search };

struct ClassKernel {
  std::vector<ClassId> classes;
  ClassKernelSource source;
};

using ClassKernelResult = std::variant<ClassKernel, HypothesisFailure, NotFound>;

/// A (k,l)-kernel S of C_F(D) meeting the theorem's condition: the supplied
/// set (validated), else the greedy set when C_F(D) is symmetric and
/// l >= k-1, else the first qualifying kernel in canonical order.
ClassKernelResult find_class_kernel(Theorem theorem, const ColoredDigraph& d,
                                    const HClassPartition& f, const ClassDigraph& c,
                                    unsigned k, unsigned l,
                                    const std::optional<std::vector<ClassId>>& supplied,
                                    const ConstructOptions& options = {});

struct KernelRequest {
  Theorem theorem = Theorem::brute;
  unsigned k = 2;
  unsigned l = 1;
  std::optional<std::vector<ClassId>> class_kernel;
  ConstructOptions options;
};

using KernelOutcome =
    std::variant<KernelCertificate, HypothesisFailure, NotFound, NoPartition>;

/// Full pipeline: partition (supplied, validated, or finest), class digraph,
/// class kernel where needed, construction, verification.
KernelOutcome construct_kernel(const ColoredDigraph& d,
                               const std::optional<HClassPartition>& supplied,
                               const KernelRequest& request);

}  // namespace hkernel
