#pragma once

// JSON instance and certificate documents.
//
// Instance:
//   {"pattern":   {"colors": [..], "arcs": [[c, d], ..]},
//    "digraph":   {"vertices": [..], "arcs": [{"from", "to", "color"}, ..]},
//    "partition": [[arc index, ..], ..],           (optional)
//    "metadata":  {"name": .., "provenance": ..}}  (optional)
//
// Colors and vertices may be strings or integers; integers are read as their
// decimal spelling.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hkernel/constructors.hpp"

namespace hkernel {

struct Instance {
  ColoredDigraph digraph;
  std::optional<HClassPartition> partition;
  std::string name;
  std::string provenance;
};

/// Throws Error(malformed_document) with a line/column or field path for
/// syntax and shape problems, and the matching semantic code otherwise.
Instance parse_instance(std::string_view text);

/// Colors, vertices and arcs sorted by name; partition indices follow the
/// arcs, class order is kept.
Instance canonical_instance(const Instance& instance);
/// Pretty-printed JSON of the instance as given (not re-sorted).
std::string emit_instance(const Instance& instance);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

std::string emit_certificate(const ColoredDigraph& d, const KernelCertificate& cert,
                             std::string_view instance_digest);

struct CertificateDocument {
  std::string instance_digest;
  std::string theorem;
  unsigned k = 2;
  unsigned l = 1;
  std::vector<std::string> kernel;
};

CertificateDocument parse_certificate(std::string_view text);

/// Resolves names against the digraph; throws Error(unknown_vertex).
VertexSet vertex_set_from_names(const Digraph& g, const std::vector<std::string>& names);
std::vector<std::string> vertex_names(const Digraph& g, const VertexSet& s);

}  // namespace hkernel
