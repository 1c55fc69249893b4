#include <gtest/gtest.h>

#include <functional>
#include <string>

#include "hkernel/fixtures.hpp"
#include "hkernel/instance_io.hpp"

namespace {

using namespace hkernel;

constexpr const char* kMinimal = R"({
  "pattern": {"colors": ["red", "blue"], "arcs": [["red", "blue"]]},
  "digraph": {"vertices": ["u", "v", "w"],
              "arcs": [{"from": "u", "to": "v", "color": "red"},
                       {"from": "v", "to": "w", "color": "blue"}]}
})";

void expect_error(const std::string& text, ErrorCode code, const std::string& fragment) {
  try {
    parse_instance(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

std::string with_arcs(const std::string& arcs) {
  return R"({"pattern": {"colors": ["r"], "arcs": [["r", "r"]]},
             "digraph": {"vertices": ["a", "b"], "arcs": [)" +
         arcs + "]}}";
}

TEST(InstanceIo, ParsesMinimalDocument) {
  const Instance instance = parse_instance(kMinimal);
  const ColoredDigraph& d = instance.digraph;
  EXPECT_EQ(d.graph().vertex_count(), 3u);
  EXPECT_EQ(d.graph().arc_count(), 2u);
  EXPECT_EQ(d.pattern().color_name(d.color(1)), "blue");
  EXPECT_FALSE(instance.partition.has_value());
  EXPECT_TRUE(instance.name.empty());
}

TEST(InstanceIo, EmitParseRoundTrip) {
  for (const auto& name : fixture_names()) {
    const Instance original = *fixture(name);
    const std::string text = emit_instance(original);
    const Instance back = parse_instance(text);
    EXPECT_EQ(emit_instance(back), text) << name;
    EXPECT_EQ(back.name, original.name);
    EXPECT_EQ(back.provenance, original.provenance);
    EXPECT_EQ(back.partition.has_value(), original.partition.has_value());
  }
}

TEST(InstanceIo, IntegerIdentifiersReadAsDecimal) {
  const Instance instance = parse_instance(R"({
    "pattern": {"colors": [1, 2], "arcs": [[1, 2]]},
    "digraph": {"vertices": [10, 20], "arcs": [{"from": 10, "to": 20, "color": 2}]}
  })");
  EXPECT_EQ(instance.digraph.graph().name(0), "10");
  EXPECT_EQ(instance.digraph.pattern().color_name(instance.digraph.color(0)), "2");
}

TEST(InstanceIo, CanonicalFormSortsNamesAndRemapsPartition) {
  const Instance instance = parse_instance(R"({
    "pattern": {"colors": ["z", "a"], "arcs": [["z", "z"], ["a", "a"]]},
    "digraph": {"vertices": ["q", "p"],
                "arcs": [{"from": "q", "to": "p", "color": "z"},
                         {"from": "p", "to": "q", "color": "a"}]},
    "partition": [[0], [1]]
  })");
  const Instance canonical = canonical_instance(instance);
  const Digraph& g = canonical.digraph.graph();
  EXPECT_EQ(g.name(0), "p");
  EXPECT_EQ(g.name(g.arc(0).tail), "p");
  EXPECT_EQ(canonical.digraph.pattern().color_name(canonical.digraph.color(0)), "a");
  // Class order is kept; the arc q->p moved to index 1.
  ASSERT_TRUE(canonical.partition.has_value());
  EXPECT_EQ(canonical.partition->classes()[0], std::vector<ArcId>{1});
  EXPECT_EQ(canonical.partition->classes()[1], std::vector<ArcId>{0});
  EXPECT_EQ(emit_instance(canonical_instance(canonical)), emit_instance(canonical));
}

TEST(InstanceIo, CanonicalFormIgnoresInputOrder) {
  const Instance a = parse_instance(kMinimal);
  const Instance b = parse_instance(R"({
    "pattern": {"colors": ["blue", "red"], "arcs": [["red", "blue"]]},
    "digraph": {"vertices": ["w", "v", "u"],
                "arcs": [{"from": "v", "to": "w", "color": "blue"},
                         {"from": "u", "to": "v", "color": "red"}]}
  })");
  EXPECT_EQ(emit_instance(canonical_instance(a)), emit_instance(canonical_instance(b)));
}

TEST(InstanceIo, SemanticErrors) {
  expect_error(with_arcs(R"({"from": "a", "to": "a", "color": "r"})"), ErrorCode::loop_arc,
               "digraph.arcs[0]");
  expect_error(with_arcs(R"({"from": "a", "to": "b", "color": "g"})"),
               ErrorCode::unknown_color, "digraph.arcs[0].color");
  expect_error(with_arcs(R"({"from": "a", "to": "c", "color": "r"})"),
               ErrorCode::unknown_vertex, "digraph.arcs[0].to");
  expect_error(with_arcs(R"({"from": "a", "to": "b", "color": "r"},
                            {"from": "a", "to": "b", "color": "r"})"),
               ErrorCode::parallel_arc, "digraph.arcs[1]");
  expect_error(R"({"pattern": {"colors": ["r", "r"]}, "digraph": {"vertices": []}})",
               ErrorCode::duplicate_id, "pattern.colors");
  expect_error(R"({"pattern": {"colors": ["r"]}, "digraph": {"vertices": ["a", "a"]}})",
               ErrorCode::duplicate_id, "digraph.vertices");
  expect_error(R"({"pattern": {"colors": ["r"], "arcs": [["r", "s"]]},
                   "digraph": {"vertices": []}})",
               ErrorCode::unknown_color, "pattern.arcs[0]");
}

TEST(InstanceIo, PartitionErrors) {
  const std::string two_arcs = R"({"pattern": {"colors": ["r"], "arcs": [["r", "r"]]},
    "digraph": {"vertices": ["a", "b"], "arcs": [{"from": "a", "to": "b", "color": "r"},
                                                 {"from": "b", "to": "a", "color": "r"}]},
    "partition": )";
  expect_error(two_arcs + "[[0], [2]]}", ErrorCode::bad_partition, "partition[1][0]");
  expect_error(two_arcs + "[[0]]}", ErrorCode::bad_partition, "partition");
  expect_error(two_arcs + "[[0, 1], [1]]}", ErrorCode::bad_partition, "partition");
  expect_error(two_arcs + "[[-1]]}", ErrorCode::malformed_document, "partition[0][0]");
}

TEST(InstanceIo, MalformedDocuments) {
  expect_error("{\n  \"pattern\": [,\n}", ErrorCode::malformed_document, "line 2");
  expect_error("{\n  \"pattern\": [,\n}", ErrorCode::malformed_document, "column");
  expect_error("[]", ErrorCode::malformed_document, "expected an object");
  expect_error(R"({"digraph": {"vertices": []}})", ErrorCode::malformed_document,
               "missing field \"pattern\"");
  expect_error(R"({"pattern": {"colors": ["r"]}, "digraph": {"vertices": []}, "extra": 1})",
               ErrorCode::malformed_document, "extra: unknown field");
  expect_error(R"({"pattern": {"colors": ["r"], "shade": 1}, "digraph": {"vertices": []}})",
               ErrorCode::malformed_document, "pattern.shade: unknown field");
  expect_error(with_arcs(R"({"from": "a", "to": "b", "color": "r", "w": 2})"),
               ErrorCode::malformed_document, "digraph.arcs[0].w: unknown field");
  expect_error(with_arcs(R"({"from": "a", "to": "b"})"), ErrorCode::malformed_document,
               "missing field \"color\"");
  expect_error(with_arcs(R"({"from": 1.5, "to": "b", "color": "r"})"),
               ErrorCode::malformed_document, "digraph.arcs[0].from");
  expect_error(R"({"pattern": {"colors": ["r"], "arcs": [["r"]]}, "digraph": {"vertices": []}})",
               ErrorCode::malformed_document, "pattern.arcs[0]");
  expect_error(R"({"pattern": {"colors": ["r"]}, "digraph": {"vertices": []},
                   "metadata": {"name": 3}})",
               ErrorCode::malformed_document, "metadata.name");
}

TEST(InstanceIo, MetadataIsKept) {
  const Instance instance = parse_instance(R"({
    "pattern": {"colors": ["r"]}, "digraph": {"vertices": ["a"]},
    "metadata": {"name": "solo", "provenance": "hand-written"}})");
  EXPECT_EQ(instance.name, "solo");
  EXPECT_EQ(instance.provenance, "hand-written");
  EXPECT_NE(emit_instance(instance).find("\"provenance\": \"hand-written\""), std::string::npos);
}

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Certificate, EmitParseRoundTrip) {
  const Instance instance = *fixture("two-blob");
  KernelRequest request;
  request.theorem = Theorem::prop44;
  request.k = 3;
  request.l = 2;
  const auto outcome = construct_kernel(instance.digraph, instance.partition, request);
  const auto& cert = std::get<KernelCertificate>(outcome);
  const std::string digest = sha256_hex(emit_instance(instance));
  const std::string text = emit_certificate(instance.digraph, cert, digest);
  EXPECT_NE(text.find("\"format\": \"hkernel-certificate/1\""), std::string::npos);
  EXPECT_NE(text.find("\"partition\": \"supplied\""), std::string::npos);

  const CertificateDocument doc = parse_certificate(text);
  EXPECT_EQ(doc.instance_digest, digest);
  EXPECT_EQ(doc.theorem, "prop44");
  EXPECT_EQ(doc.k, cert.k);
  EXPECT_EQ(doc.l, cert.l);
  EXPECT_EQ(vertex_set_from_names(instance.digraph.graph(), doc.kernel), cert.kernel);
}

TEST(Certificate, RejectsBadDocuments) {
  EXPECT_THROW(parse_certificate("{}"), Error);
  EXPECT_THROW(parse_certificate(R"({"instance_digest": "x", "theorem": "thm55", "k": -2,
                                     "l": 1, "kernel": []})"),
               Error);
  const auto doc = parse_certificate(
      R"({"instance_digest": "abc", "theorem": "thm55", "k": 2, "l": 1, "kernel": [7]})");
  EXPECT_EQ(doc.instance_digest, "abc");
  EXPECT_EQ(doc.kernel, std::vector<std::string>{"7"});
}

TEST(VertexNames, UnknownNameThrows) {
  const Instance instance = *fixture("two-blob");
  try {
    vertex_set_from_names(instance.digraph.graph(), {"a", "nope"});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unknown_vertex);
  }
}

}  // namespace
