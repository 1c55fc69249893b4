#include "hkernel/analysis.hpp"

#include <sstream>

#include "json.hpp"

namespace hkernel {

using nlohmann::ordered_json;

std::string_view applicability_name(Applicability a) {
  switch (a) {
    case Applicability::applicable: return "applicable";
    case Applicability::needs_class_kernel: return "needs_class_kernel";
    default: return "not_applicable";
  }
}

namespace {

std::vector<std::pair<unsigned, unsigned>> grid_for(Theorem t) {
  std::vector<std::pair<unsigned, unsigned>> out;
  switch (t) {
    case Theorem::classlema:
      out.emplace_back(2, 1);
      break;
    case Theorem::thm54:
      for (unsigned k = 2; k <= 4; ++k) out.emplace_back(k, k + 1);
      break;
    case Theorem::thm55:
      for (unsigned k = 2; k <= 4; ++k) out.emplace_back(k, k - 1);
      break;
    default: {
      const bool needs_three = t == Theorem::prop43 || t == Theorem::prop44 ||
                               t == Theorem::thm53;
      for (unsigned k = needs_three ? 3 : 2; k <= 4; ++k) {
        for (unsigned l = 1; l <= 3; ++l) out.emplace_back(k, l);
      }
    }
  }
  return out;
}

TheoremStatus evaluate(const ColoredDigraph& d, const std::optional<HClassPartition>& f,
                       const AnalysisReport& report, Theorem theorem,
                       const ConstructOptions& options) {
  TheoremStatus status;
  status.theorem = theorem;
  if (theorem != Theorem::classlema && !report.partition) {
    status.witness = report.partition_problem;
    return status;
  }
  for (const auto& [k, l] : grid_for(theorem)) {
    KernelRequest request{theorem, k, l, std::nullopt, options};
    request.options.unchecked = false;
    KernelOutcome outcome;
    try {
      outcome = construct_kernel(d, f, request);
    } catch (const Error& e) {
      if (status.witness.empty()) status.witness = e.what();
      continue;
    }
    if (auto* cert = std::get_if<KernelCertificate>(&outcome)) {
      if (!cert->verification.passed()) {
        // A checked construction that fails verification is a library bug.
        fail(ErrorCode::internal, std::string(theorem_tag(theorem)) +
                                      " produced a set the oracle rejects");
      }
      status.points.push_back({k, l, cert->k, cert->l, cert->class_kernel});
    } else if (std::holds_alternative<NotFound>(outcome)) {
      status.missing_class_kernel.emplace_back(k, l);
      if (status.witness.empty()) status.witness = std::get<NotFound>(outcome).reason;
    } else if (auto* failure = std::get_if<HypothesisFailure>(&outcome)) {
      if (status.witness.empty()) {
        status.witness = failure->hypothesis + ": " + failure->witness;
      }
    } else {
      status.witness = std::get<NoPartition>(outcome).explain(d);
    }
  }
  if (!status.points.empty()) {
    status.status = Applicability::applicable;
    status.witness.clear();
  } else if (!status.missing_class_kernel.empty()) {
    status.status = Applicability::needs_class_kernel;
  }
  return status;
}

}  // namespace

AnalysisReport analyze(const ColoredDigraph& d,
                       const std::optional<HClassPartition>& supplied,
                       const ConstructOptions& options) {
  const Digraph& g = d.graph();
  AnalysisReport report;
  report.obstruction_free = obstruction_free_vertices(d);
  std::vector<ArcId> every_arc(g.arc_count());
  for (ArcId a = 0; a < every_arc.size(); ++a) every_arc[a] = a;
  report.h_digraph = is_h_digraph(d, every_arc);
  report.strongly_connected = !g.empty() && is_strongly_connected(g);
  report.isolated = isolated_vertices(g);

  if (supplied) {
    if (auto violation = validate_partition(d, *supplied)) {
      report.partition_problem = "supplied partition is not an H-class partition: " +
                                 violation->explain(d);
    } else {
      report.partition = *supplied;
      report.partition_source = PartitionSource::supplied;
    }
  } else {
    PartitionResult finest = finest_partition(d);
    if (auto* none = std::get_if<NoPartition>(&finest)) {
      report.partition_problem = none->explain(d);
    } else {
      report.partition = std::get<HClassPartition>(std::move(finest));
      report.partition_source = PartitionSource::finest;
    }
  }

  if (report.partition) {
    const HClassPartition& f = *report.partition;
    report.class_digraph = class_digraph(d, f);
    const ClassDigraph& c = *report.class_digraph;
    const auto violations = walk_preservation_violations(d, f, c);
    report.walk_preservative = violations.empty();
    if (!violations.empty()) report.preservation_violation = violations.front();
    report.classes = class_predicates(d, f);
    report.class_digraph_symmetric = is_symmetric(c.graph);
    report.class_sinks = sinks(c.graph);
    report.class_girth = min_nonloop_cycle_length(c.graph);
  }

  for (Theorem t : {Theorem::classlema, Theorem::prop41, Theorem::prop42, Theorem::prop43,
                    Theorem::prop44, Theorem::thm51, Theorem::thm52, Theorem::thm53,
                    Theorem::thm54, Theorem::thm55}) {
    report.theorems.push_back(evaluate(d, supplied, report, t, options));
  }
  return report;
}

namespace {

ordered_json names_json(const Digraph& g, const VertexSet& s) {
  ordered_json out = ordered_json::array();
  for (VertexId v : s) out.push_back(g.name(v));
  return out;
}

ordered_json classes_json(const std::vector<ClassId>& s) {
  ordered_json out = ordered_json::array();
  for (ClassId c : s) out.push_back(class_name(c));
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> vertex_list(const Digraph& g, const VertexSet& s) {
  std::vector<std::string> out;
  for (VertexId v : s) out.push_back(g.name(v));
  return out;
}

std::vector<std::string> class_list(std::span<const ClassId> s) {
  std::vector<std::string> out;
  for (ClassId c : s) out.push_back(class_name(c));
  return out;
}

}  // namespace

std::string report_json(const ColoredDigraph& d, const AnalysisReport& report) {
  const Digraph& g = d.graph();
  ordered_json doc;
  if (report.partition) {
    ordered_json partition;
    partition["source"] =
        report.partition_source == PartitionSource::supplied ? "supplied" : "finest";
    partition["classes"] = ordered_json::array();
    for (ClassId c = 0; c < report.partition->class_count(); ++c) {
      ordered_json arcs = ordered_json::array();
      for (ArcId a : report.partition->arcs_of(c)) arcs.push_back(describe_arc(d, a));
      partition["classes"].push_back({{"name", class_name(c)}, {"arcs", arcs}});
    }
    doc["partition"] = std::move(partition);
  } else {
    doc["partition"] = {{"error", report.partition_problem}};
  }

  if (report.class_digraph) {
    const Digraph& cg = report.class_digraph->graph;
    ordered_json arcs = ordered_json::array();
    for (const Arc& a : cg.arcs()) arcs.push_back({cg.name(a.tail), cg.name(a.head)});
    doc["class_digraph"] = {{"arcs", arcs},
                            {"symmetric", *report.class_digraph_symmetric},
                            {"sinks", classes_json(report.class_sinks)},
                            {"min_nonloop_cycle_length",
                             report.class_girth.is_finite()
                                 ? ordered_json(report.class_girth.value())
                                 : ordered_json("infinity")}};
  } else {
    doc["class_digraph"] = nullptr;
  }

  if (report.walk_preservative) {
    doc["walk_preservative"] = *report.walk_preservative;
  } else {
    doc["walk_preservative"] = nullptr;
  }
  if (const auto& v = report.preservation_violation) {
    doc["walk_preservation_violation"] = {{"from", class_name(v->from)},
                                          {"to", class_name(v->to)},
                                          {"vertex", g.name(v->vertex)}};
  } else {
    doc["walk_preservation_violation"] = nullptr;
  }

  doc["classes"] = ordered_json::array();
  for (const ClassReport& r : report.classes) {
    doc["classes"].push_back({{"name", class_name(r.id)},
                              {"strongly_connected", r.strongly_connected},
                              {"unilateral", r.unilateral},
                              {"has_sink", r.has_sink},
                              {"obstruction_free", names_json(g, r.obstruction_free)}});
  }
  doc["obstruction_free"] = names_json(g, report.obstruction_free);
  doc["h_digraph"] = report.h_digraph;
  doc["strongly_connected"] = report.strongly_connected;
  doc["isolated_vertices"] = names_json(g, report.isolated);

  doc["theorems"] = ordered_json::array();
  for (const TheoremStatus& t : report.theorems) {
    ordered_json entry;
    entry["theorem"] = std::string(theorem_tag(t.theorem));
    entry["status"] = std::string(applicability_name(t.status));
    ordered_json points = ordered_json::array();
    for (const GridPoint& p : t.points) {
      ordered_json point;
      point["k"] = p.k;
      point["l"] = p.l;
      point["certificate"] = {{"k", p.certificate_k}, {"l", p.certificate_l}};
      point["class_kernel"] = p.class_kernel ? classes_json(*p.class_kernel)
                                             : ordered_json(nullptr);
      points.push_back(std::move(point));
    }
    entry["points"] = std::move(points);
    ordered_json missing = ordered_json::array();
    for (const auto& [k, l] : t.missing_class_kernel) missing.push_back({{"k", k}, {"l", l}});
    entry["missing_class_kernel"] = std::move(missing);
    entry["witness"] = t.witness.empty() ? ordered_json(nullptr) : ordered_json(t.witness);
    doc["theorems"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

std::string report_text(const ColoredDigraph& d, const AnalysisReport& report) {
  const Digraph& g = d.graph();
  std::ostringstream out;
  out << "vertices: " << g.vertex_count() << ", arcs: " << g.arc_count()
      << ", colors: " << d.pattern().color_count() << "\n";
  if (!report.partition) {
    out << "partition: none (" << report.partition_problem << ")\n";
  } else {
    out << "partition ("
        << (report.partition_source == PartitionSource::supplied ? "supplied" : "finest")
        << "): " << report.partition->class_count() << " classes\n";
    for (ClassId c = 0; c < report.partition->class_count(); ++c) {
      std::vector<std::string> arcs;
      for (ArcId a : report.partition->arcs_of(c)) arcs.push_back(describe_arc(d, a));
      out << "  " << class_name(c) << ": " << join(arcs, " ") << "\n";
    }
    const Digraph& cg = report.class_digraph->graph;
    std::vector<std::string> arcs;
    for (const Arc& a : cg.arcs()) arcs.push_back(cg.name(a.tail) + "->" + cg.name(a.head));
    out << "class digraph: " << (arcs.empty() ? "(no arcs)" : join(arcs, " ")) << "\n";
    out << "  symmetric: " << (*report.class_digraph_symmetric ? "yes" : "no")
        << ", sinks: " << (report.class_sinks.empty() ? "none" : join(class_list(report.class_sinks), ","))
        << ", shortest non-loop cycle: " << report.class_girth.to_string() << "\n";
    out << "walk-preservative: " << (*report.walk_preservative ? "yes" : "no");
    if (const auto& v = report.preservation_violation) {
      out << " (" << class_name(v->from) << "," << class_name(v->to) << ") at "
          << g.name(v->vertex);
    }
    out << "\n";
    for (const ClassReport& r : report.classes) {
      out << "  " << class_name(r.id) << ": "
          << (r.strongly_connected ? "strongly connected" : "not strongly connected") << ", "
          << (r.unilateral ? "unilateral" : "not unilateral") << ", "
          << (r.has_sink ? "has a sink" : "sink-free") << ", obstruction-free {"
          << join(vertex_list(g, r.obstruction_free), ",") << "}\n";
    }
  }
  out << "obstruction-free vertices: {" << join(vertex_list(g, report.obstruction_free), ",")
      << "}\n";
  out << "H-digraph: " << (report.h_digraph ? "yes" : "no")
      << ", strongly connected: " << (report.strongly_connected ? "yes" : "no")
      << ", isolated: {" << join(vertex_list(g, report.isolated), ",") << "}\n";
  out << "theorems:\n";
  for (const TheoremStatus& t : report.theorems) {
    out << "  " << theorem_tag(t.theorem) << ": " << applicability_name(t.status);
    if (t.status == Applicability::applicable) {
      std::vector<std::string> points;
      for (const GridPoint& p : t.points) {
        std::string point = "(" + std::to_string(p.k) + "," + std::to_string(p.l) + ")->(" +
                            std::to_string(p.certificate_k) + "," +
                            std::to_string(p.certificate_l) + ")";
        if (p.class_kernel) point += " S={" + join(class_list(*p.class_kernel), ",") + "}";
        points.push_back(point);
      }
      out << " " << join(points, "; ");
    } else if (!t.witness.empty()) {
      out << " (" << t.witness << ")";
    }
    out << "\n";
  }
  return out.str();
}

std::string partition_text(const ColoredDigraph& d, const HClassPartition& f) {
  std::string out;
  for (ClassId c = 0; c < f.class_count(); ++c) {
    std::vector<std::string> arcs;
    for (ArcId a : f.arcs_of(c)) arcs.push_back(describe_arc(d, a));
    out += class_name(c) + ": " + join(arcs, " ") + "\n";
  }
  return out;
}

std::string class_digraph_view(const ColoredDigraph& d, const HClassPartition& f,
                               const ClassDigraph& c, ViewFormat format) {
  const Digraph& cg = c.graph;
  switch (format) {
    case ViewFormat::json: {
      ordered_json doc;
      doc["classes"] = ordered_json::array();
      for (ClassId id = 0; id < f.class_count(); ++id) {
        ordered_json arcs = ordered_json::array();
        for (ArcId a : f.arcs_of(id)) arcs.push_back(describe_arc(d, a));
        doc["classes"].push_back({{"name", class_name(id)}, {"arcs", arcs}});
      }
      doc["arcs"] = ordered_json::array();
      for (ArcId a = 0; a < cg.arc_count(); ++a) {
        const auto& [in, out] = c.witness[a];
        doc["arcs"].push_back({{"from", cg.name(cg.arc(a).tail)},
                               {"to", cg.name(cg.arc(a).head)},
                               {"witness", {describe_arc(d, in), describe_arc(d, out)}}});
      }
      return doc.dump(2) + "\n";
    }
    case ViewFormat::dot: {
      std::string out = "digraph C {\n";
      for (ClassId id = 0; id < cg.vertex_count(); ++id) {
        out += "  \"" + cg.name(id) + "\";\n";
      }
      for (const Arc& a : cg.arcs()) {
        out += "  \"" + cg.name(a.tail) + "\" -> \"" + cg.name(a.head) + "\";\n";
      }
      return out + "}\n";
    }
    default: {
      std::string out = partition_text(d, f);
      for (ArcId a = 0; a < cg.arc_count(); ++a) {
        const auto& [in, next] = c.witness[a];
        out += cg.name(cg.arc(a).tail) + " -> " + cg.name(cg.arc(a).head) + "  via " +
               describe_arc(d, in) + " " + describe_arc(d, next) + "\n";
      }
      return out;
    }
  }
}

}  // namespace hkernel
