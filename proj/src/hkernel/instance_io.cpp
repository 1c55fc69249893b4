#include "hkernel/instance_io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <map>
#include "json.hpp"
#include <numeric>

namespace hkernel {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void malformed(const std::string& path, const std::string& what) {
  fail(ErrorCode::malformed_document, path + ": " + what);
}

const json& require_field(const json& object, const char* key, const std::string& path) {
  const auto it = object.find(key);
  if (it == object.end()) malformed(path, std::string("missing field \"") + key + "\"");
  return *it;
}

void require_kind(const json& value, json::value_t kind, const std::string& path,
                  const char* expected) {
  const bool ok = kind == json::value_t::number_unsigned
                      ? value.is_number_integer() && !value.is_number_float() &&
                            value.get<std::int64_t>() >= 0
                      : value.type() == kind;
  if (!ok) malformed(path, std::string("expected ") + expected);
}

void reject_unknown_fields(const json& object, std::initializer_list<const char*> allowed,
                           const std::string& path) {
  for (const auto& [key, value] : object.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* name) { return key == name; })) {
      malformed(path.empty() ? key : path + "." + key, "unknown field");
    }
  }
}

std::string read_identifier(const json& value, const std::string& path) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
  malformed(path, "expected a string or integer identifier");
}

std::string position_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::malformed_document,
         "invalid JSON at " + position_of(text, e.byte > 0 ? e.byte - 1 : 0));
  }
}

// Keeps the first failing field path when construction rejects an arc.
template <typename Build>
auto with_path(const std::string& path, Build&& build) {
  try {
    return build();
  } catch (const Error& e) {
    fail(e.code(), path + ": " + e.what());
  }
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const json doc = parse_json(text);
  require_kind(doc, json::value_t::object, "(document)", "an object");
  reject_unknown_fields(doc, {"pattern", "digraph", "partition", "metadata"}, "");

  const json& pattern = require_field(doc, "pattern", "(document)");
  require_kind(pattern, json::value_t::object, "pattern", "an object");
  reject_unknown_fields(pattern, {"colors", "arcs"}, "pattern");
  const json& colors = require_field(pattern, "colors", "pattern");
  require_kind(colors, json::value_t::array, "pattern.colors", "an array");
  std::vector<std::string> color_names;
  for (std::size_t i = 0; i < colors.size(); ++i) {
    color_names.push_back(
        read_identifier(colors[i], "pattern.colors[" + std::to_string(i) + "]"));
  }
  const Digraph color_index = with_path("pattern.colors", [&] {
    return Digraph(color_names, std::span<const Arc>{}, true);
  });

  std::vector<Arc> pattern_arcs;
  const json empty_array = json::array();
  const auto pattern_arcs_it = pattern.find("arcs");
  const json& h_arcs = pattern_arcs_it == pattern.end() ? empty_array : *pattern_arcs_it;
  require_kind(h_arcs, json::value_t::array, "pattern.arcs", "an array");
  for (std::size_t i = 0; i < h_arcs.size(); ++i) {
    const std::string path = "pattern.arcs[" + std::to_string(i) + "]";
    const json& pair = h_arcs[i];
    if (!pair.is_array() || pair.size() != 2) malformed(path, "expected a pair of colors");
    Arc arc{};
    for (std::size_t side = 0; side < 2; ++side) {
      const std::string name = read_identifier(pair[side], path + "[" + std::to_string(side) + "]");
      const auto id = color_index.find_vertex(name);
      if (!id) fail(ErrorCode::unknown_color, path + ": unknown color '" + name + "'");
      (side == 0 ? arc.tail : arc.head) = *id;
    }
    pattern_arcs.push_back(arc);
  }
  PatternDigraph h = with_path("pattern.arcs", [&] {
    return PatternDigraph(color_names, pattern_arcs);
  });

  const json& digraph = require_field(doc, "digraph", "(document)");
  require_kind(digraph, json::value_t::object, "digraph", "an object");
  reject_unknown_fields(digraph, {"vertices", "arcs"}, "digraph");
  const json& vertices = require_field(digraph, "vertices", "digraph");
  require_kind(vertices, json::value_t::array, "digraph.vertices", "an array");
  std::vector<std::string> vertex_names_list;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    vertex_names_list.push_back(
        read_identifier(vertices[i], "digraph.vertices[" + std::to_string(i) + "]"));
  }
  const Digraph vertex_index = with_path("digraph.vertices", [&] {
    return Digraph(vertex_names_list, std::span<const Arc>{}, false);
  });

  const auto d_arcs_it = digraph.find("arcs");
  const json& d_arcs = d_arcs_it == digraph.end() ? empty_array : *d_arcs_it;
  require_kind(d_arcs, json::value_t::array, "digraph.arcs", "an array");
  std::vector<Arc> arcs;
  std::vector<ColorId> arc_colors;
  std::map<std::pair<VertexId, VertexId>, std::size_t> seen;
  for (std::size_t i = 0; i < d_arcs.size(); ++i) {
    const std::string path = "digraph.arcs[" + std::to_string(i) + "]";
    const json& record = d_arcs[i];
    require_kind(record, json::value_t::object, path, "an object");
    reject_unknown_fields(record, {"from", "to", "color"}, path);
    Arc arc{};
    for (const char* end : {"from", "to"}) {
      const std::string name = read_identifier(require_field(record, end, path), path + "." + end);
      const auto id = vertex_index.find_vertex(name);
      if (!id) fail(ErrorCode::unknown_vertex, path + "." + end + ": unknown vertex '" + name + "'");
      (std::string_view(end) == "from" ? arc.tail : arc.head) = *id;
    }
    if (arc.tail == arc.head) {
      fail(ErrorCode::loop_arc, path + ": loop at '" + vertex_names_list[arc.tail] +
                                    "'; the colored digraph must be loopless");
    }
    if (const auto [it, inserted] = seen.emplace(std::make_pair(arc.tail, arc.head), i);
        !inserted) {
      fail(ErrorCode::parallel_arc,
           path + ": repeats digraph.arcs[" + std::to_string(it->second) + "]");
    }
    const std::string color = read_identifier(require_field(record, "color", path), path + ".color");
    const auto color_id = h.find_color(color);
    if (!color_id) fail(ErrorCode::unknown_color, path + ".color: unknown color '" + color + "'");
    arcs.push_back(arc);
    arc_colors.push_back(*color_id);
  }

  Instance instance;
  instance.digraph = ColoredDigraph(Digraph(vertex_names_list, arcs, false),
                                    std::move(arc_colors), std::move(h));

  if (const auto it = doc.find("partition"); it != doc.end() && !it->is_null()) {
    require_kind(*it, json::value_t::array, "partition", "an array of arc-index arrays");
    std::vector<std::vector<ArcId>> classes;
    for (std::size_t c = 0; c < it->size(); ++c) {
      const std::string path = "partition[" + std::to_string(c) + "]";
      const json& cls = (*it)[c];
      require_kind(cls, json::value_t::array, path, "an array of arc indices");
      std::vector<ArcId> members;
      for (std::size_t j = 0; j < cls.size(); ++j) {
        require_kind(cls[j], json::value_t::number_unsigned,
                     path + "[" + std::to_string(j) + "]", "a non-negative arc index");
        const auto index = cls[j].get<std::uint64_t>();
        if (index >= arcs.size()) {
          fail(ErrorCode::bad_partition, path + "[" + std::to_string(j) + "]: arc index " +
                                             std::to_string(index) + " out of range");
        }
        members.push_back(static_cast<ArcId>(index));
      }
      classes.push_back(std::move(members));
    }
    instance.partition = with_path("partition", [&] {
      return HClassPartition(arcs.size(), std::move(classes));
    });
  }

  if (const auto it = doc.find("metadata"); it != doc.end() && !it->is_null()) {
    require_kind(*it, json::value_t::object, "metadata", "an object");
    for (const char* key : {"name", "provenance"}) {
      if (const auto field = it->find(key); field != it->end()) {
        require_kind(*field, json::value_t::string, std::string("metadata.") + key, "a string");
        (std::string_view(key) == "name" ? instance.name : instance.provenance) =
            field->get<std::string>();
      }
    }
  }
  return instance;
}

namespace {

std::vector<std::uint32_t> sorted_order(std::span<const std::string> names) {
  std::vector<std::uint32_t> order(names.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return names[a] < names[b]; });
  return order;
}

std::vector<std::uint32_t> inverse(const std::vector<std::uint32_t>& order) {
  std::vector<std::uint32_t> out(order.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) out[order[i]] = i;
  return out;
}

}  // namespace

Instance canonical_instance(const Instance& instance) {
  const ColoredDigraph& d = instance.digraph;
  const Digraph& hg = d.pattern().graph();
  const Digraph& g = d.graph();

  const auto color_order = sorted_order(hg.names());
  const auto color_rank = inverse(color_order);
  std::vector<std::string> colors;
  for (auto c : color_order) colors.push_back(hg.name(c));
  std::vector<Arc> h_arcs;
  for (const Arc& a : hg.arcs()) h_arcs.push_back({color_rank[a.tail], color_rank[a.head]});
  std::sort(h_arcs.begin(), h_arcs.end(), [](const Arc& a, const Arc& b) {
    return std::pair(a.tail, a.head) < std::pair(b.tail, b.head);
  });

  const auto vertex_order = sorted_order(g.names());
  const auto vertex_rank = inverse(vertex_order);
  std::vector<std::string> vertices;
  for (auto v : vertex_order) vertices.push_back(g.name(v));
  std::vector<ArcId> arc_order(g.arc_count());
  std::iota(arc_order.begin(), arc_order.end(), 0);
  std::sort(arc_order.begin(), arc_order.end(), [&](ArcId a, ArcId b) {
    return std::pair(vertex_rank[g.arc(a).tail], vertex_rank[g.arc(a).head]) <
           std::pair(vertex_rank[g.arc(b).tail], vertex_rank[g.arc(b).head]);
  });
  std::vector<ArcId> arc_rank(g.arc_count());
  std::vector<Arc> arcs;
  std::vector<ColorId> arc_colors;
  for (ArcId i = 0; i < arc_order.size(); ++i) {
    const ArcId a = arc_order[i];
    arc_rank[a] = i;
    arcs.push_back({vertex_rank[g.arc(a).tail], vertex_rank[g.arc(a).head]});
    arc_colors.push_back(color_rank[d.color(a)]);
  }

  Instance out;
  out.digraph = ColoredDigraph(Digraph(std::move(vertices), arcs, false),
                               std::move(arc_colors), PatternDigraph(std::move(colors), h_arcs));
  if (instance.partition) {
    std::vector<std::vector<ArcId>> classes;
    for (const auto& members : instance.partition->classes()) {
      std::vector<ArcId> remapped;
      for (ArcId a : members) remapped.push_back(arc_rank[a]);
      classes.push_back(std::move(remapped));
    }
    out.partition = HClassPartition(arcs.size(), std::move(classes));
  }
  out.name = instance.name;
  out.provenance = instance.provenance;
  return out;
}

std::string emit_instance(const Instance& instance) {
  const ColoredDigraph& d = instance.digraph;
  const Digraph& hg = d.pattern().graph();
  const Digraph& g = d.graph();
  ordered_json doc;
  ordered_json pattern;
  pattern["colors"] = std::vector<std::string>(hg.names().begin(), hg.names().end());
  pattern["arcs"] = ordered_json::array();
  for (const Arc& a : hg.arcs()) pattern["arcs"].push_back({hg.name(a.tail), hg.name(a.head)});
  doc["pattern"] = std::move(pattern);
  ordered_json digraph;
  digraph["vertices"] = std::vector<std::string>(g.names().begin(), g.names().end());
  digraph["arcs"] = ordered_json::array();
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    ordered_json record;
    record["from"] = g.name(g.arc(a).tail);
    record["to"] = g.name(g.arc(a).head);
    record["color"] = d.pattern().color_name(d.color(a));
    digraph["arcs"].push_back(std::move(record));
  }
  doc["digraph"] = std::move(digraph);
  if (instance.partition) doc["partition"] = instance.partition->classes();
  if (!instance.name.empty() || !instance.provenance.empty()) {
    ordered_json metadata;
    if (!instance.name.empty()) metadata["name"] = instance.name;
    if (!instance.provenance.empty()) metadata["provenance"] = instance.provenance;
    doc["metadata"] = std::move(metadata);
  }
  return doc.dump(2) + "\n";
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::internal, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::vector<std::string> vertex_names(const Digraph& g, const VertexSet& s) {
  std::vector<std::string> out;
  for (VertexId v : s) out.push_back(g.name(v));
  return out;
}

VertexSet vertex_set_from_names(const Digraph& g, const std::vector<std::string>& names) {
  std::vector<VertexId> out;
  for (const auto& name : names) out.push_back(g.vertex(name));
  return make_vertex_set(std::move(out));
}

namespace {

std::string_view source_name(PartitionSource source) {
  switch (source) {
    case PartitionSource::finest: return "finest";
    case PartitionSource::supplied: return "supplied";
    default: return "none";
  }
}

ordered_json distance_json(const Distance& d) {
  if (d.is_finite()) return d.value();
  return "infinity";
}

}  // namespace

std::string emit_certificate(const ColoredDigraph& d, const KernelCertificate& cert,
                             std::string_view instance_digest) {
  const Digraph& g = d.graph();
  ordered_json doc;
  doc["format"] = "hkernel-certificate/1";
  doc["instance_digest"] = "sha256:" + std::string(instance_digest);
  doc["theorem"] = std::string(theorem_tag(cert.theorem));
  doc["k"] = cert.k;
  doc["l"] = cert.l;
  doc["kernel"] = vertex_names(g, cert.kernel);
  if (cert.class_kernel) {
    std::vector<std::string> names;
    for (ClassId c : *cert.class_kernel) names.push_back(class_name(c));
    doc["class_kernel"] = names;
    doc["class_kernel_parameters"] = {{"k", cert.class_kernel_parameters->first},
                                      {"l", cert.class_kernel_parameters->second}};
  } else {
    doc["class_kernel"] = nullptr;
    doc["class_kernel_parameters"] = nullptr;
  }
  doc["partition"] = std::string(source_name(cert.partition_source));
  doc["isolated_vertices"] = vertex_names(g, cert.isolated);
  doc["swaps"] = ordered_json::array();
  for (const Swap& s : cert.swaps) {
    doc["swaps"].push_back({{"removed", g.name(s.removed)}, {"added", g.name(s.added)}});
  }
  doc["unchecked"] = cert.unchecked;
  ordered_json verification;
  verification["independent"] = cert.verification.independent;
  verification["absorbent"] = cert.verification.absorbent;
  if (const auto& v = cert.verification.counterexample) {
    ordered_json counter;
    counter["property"] =
        v->kind == KernelViolation::Kind::independence ? "independence" : "absorbency";
    counter["from"] = g.name(v->from);
    counter["to"] = v->to ? ordered_json(g.name(*v->to)) : ordered_json(nullptr);
    counter["h_length"] = distance_json(v->h_length);
    verification["counterexample"] = std::move(counter);
  } else {
    verification["counterexample"] = nullptr;
  }
  doc["verification"] = std::move(verification);
  return doc.dump(2) + "\n";
}

CertificateDocument parse_certificate(std::string_view text) {
  const json doc = parse_json(text);
  require_kind(doc, json::value_t::object, "(document)", "an object");
  CertificateDocument out;
  const json& digest = require_field(doc, "instance_digest", "(document)");
  require_kind(digest, json::value_t::string, "instance_digest", "a string");
  out.instance_digest = digest.get<std::string>();
  if (out.instance_digest.rfind("sha256:", 0) == 0) out.instance_digest.erase(0, 7);
  const json& theorem = require_field(doc, "theorem", "(document)");
  require_kind(theorem, json::value_t::string, "theorem", "a string");
  out.theorem = theorem.get<std::string>();
  for (const char* key : {"k", "l"}) {
    const json& value = require_field(doc, key, "(document)");
    require_kind(value, json::value_t::number_unsigned, key, "a non-negative integer");
    (std::string_view(key) == "k" ? out.k : out.l) = value.get<unsigned>();
  }
  const json& kernel = require_field(doc, "kernel", "(document)");
  require_kind(kernel, json::value_t::array, "kernel", "an array");
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    out.kernel.push_back(read_identifier(kernel[i], "kernel[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace hkernel
