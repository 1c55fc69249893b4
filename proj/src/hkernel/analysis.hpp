#pragma once

// Structural report on a colored digraph: the partition, C_F(D), every
// predicate the constructors check, and which constructions go through.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hkernel/constructors.hpp"

namespace hkernel {

enum class Applicability { applicable, needs_class_kernel, not_applicable };

std::string_view applicability_name(Applicability a);

struct GridPoint {
  unsigned k;  // requested parameters
  unsigned l;
  unsigned certificate_k;
  unsigned certificate_l;
  std::optional<std::vector<ClassId>> class_kernel;
};

struct TheoremStatus {
  Theorem theorem;
  Applicability status = Applicability::not_applicable;
  /// Points of the sampled grid where the construction produced a verified
  /// certificate.
  std::vector<GridPoint> points;
  /// Grid points where only a class kernel was missing.
  std::vector<std::pair<unsigned, unsigned>> missing_class_kernel;
  /// First failure seen when nothing was applicable.
  std::string witness;
};

struct AnalysisReport {
  std::optional<HClassPartition> partition;
  PartitionSource partition_source = PartitionSource::none;
  /// Why no usable partition exists (NoPartition or an invalid supplied one).
  std::string partition_problem;
  std::optional<ClassDigraph> class_digraph;
  std::optional<bool> walk_preservative;
  std::optional<PreservationViolation> preservation_violation;
  std::vector<ClassReport> classes;
  std::optional<bool> class_digraph_symmetric;
  VertexSet class_sinks;
  Distance class_girth;
  VertexSet obstruction_free;
  bool h_digraph = false;
  bool strongly_connected = false;
  VertexSet isolated;
  std::vector<TheoremStatus> theorems;
};

AnalysisReport analyze(const ColoredDigraph& d,
                       const std::optional<HClassPartition>& supplied = std::nullopt,
                       const ConstructOptions& options = {});

std::string report_json(const ColoredDigraph& d, const AnalysisReport& report);
std::string report_text(const ColoredDigraph& d, const AnalysisReport& report);

/// One line per class: "F1: (u,v):c (v,w):c".
std::string partition_text(const ColoredDigraph& d, const HClassPartition& f);

enum class ViewFormat { text, json, dot };

/// C_F(D) with each arc's witnessing consecutive pair. DOT is a convenience
/// view; JSON is the normative form.
std::string class_digraph_view(const ColoredDigraph& d, const HClassPartition& f,
                               const ClassDigraph& c, ViewFormat format);

}  // namespace hkernel
