#include "hkernel/hkernel.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>

#include "hkernel/analysis.hpp"
#include "hkernel/fixtures.hpp"
#include "hkernel/instance_io.hpp"
#include "json.hpp"

struct hk_instance {
  hkernel::Instance instance;
  std::string digest;
};

namespace {

using hkernel::ErrorCode;
using nlohmann::ordered_json;

thread_local std::string last_error;

hk_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_document: return HK_ERR_MALFORMED;
    case ErrorCode::loop_arc: return HK_ERR_LOOP_ARC;
    case ErrorCode::unknown_color: return HK_ERR_UNKNOWN_COLOR;
    case ErrorCode::unknown_vertex: return HK_ERR_UNKNOWN_VERTEX;
    case ErrorCode::duplicate_id: return HK_ERR_DUPLICATE_ID;
    case ErrorCode::parallel_arc: return HK_ERR_PARALLEL_ARC;
    case ErrorCode::bad_partition: return HK_ERR_BAD_PARTITION;
    case ErrorCode::invalid_argument:
    case ErrorCode::precondition: return HK_ERR_INVALID_ARGUMENT;
    case ErrorCode::size_limit: return HK_ERR_SIZE_LIMIT;
    default: return HK_ERR_INTERNAL;
  }
}

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename Body>
hk_status guarded(Body&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const hkernel::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const IoError& e) {
    last_error = e.what();
    return HK_ERR_IO;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HK_ERR_INTERNAL;
  }
}

void put(char** out, const std::string& text) {
  if (!out) return;
  char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
  if (!buffer) throw std::bad_alloc();
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  *out = buffer;
}

void require(const void* pointer, const char* what) {
  if (!pointer) hkernel::fail(ErrorCode::invalid_argument, std::string(what) + " is null");
}

std::string read_file(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open ") + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError(std::string("cannot read ") + path);
  return buffer.str();
}

std::vector<std::string> split_list(const char* text) {
  std::vector<std::string> out;
  if (!text) return out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) continue;
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

hk_instance* wrap(hkernel::Instance instance, std::string_view bytes) {
  auto* handle = new hk_instance{std::move(instance), hkernel::sha256_hex(bytes)};
  return handle;
}

// The supplied partition when valid, else the finest; the explanation when
// neither exists.
std::variant<std::pair<hkernel::HClassPartition, bool>, std::string> resolve_partition(
    const hk_instance& h) {
  const hkernel::ColoredDigraph& d = h.instance.digraph;
  if (h.instance.partition) {
    if (auto violation = hkernel::validate_partition(d, *h.instance.partition)) {
      return "supplied partition is not an H-class partition: " + violation->explain(d);
    }
    return std::make_pair(*h.instance.partition, true);
  }
  auto finest = hkernel::finest_partition(d);
  if (auto* none = std::get_if<hkernel::NoPartition>(&finest)) {
    return "NoPartition: " + none->explain(d);
  }
  return std::make_pair(std::get<hkernel::HClassPartition>(std::move(finest)), false);
}

std::string outcome_json(ordered_json doc) { return doc.dump(2) + "\n"; }

}  // namespace

extern "C" {

const char* hk_last_error(void) { return last_error.c_str(); }

const char* hk_status_name(hk_status status) {
  switch (status) {
    case HK_OK: return "ok";
    case HK_FALSE: return "false";
    case HK_ERR_MALFORMED: return "malformed document";
    case HK_ERR_LOOP_ARC: return "loop arc";
    case HK_ERR_UNKNOWN_COLOR: return "unknown color";
    case HK_ERR_UNKNOWN_VERTEX: return "unknown vertex";
    case HK_ERR_DUPLICATE_ID: return "duplicate identifier";
    case HK_ERR_PARALLEL_ARC: return "parallel arc";
    case HK_ERR_BAD_PARTITION: return "bad partition";
    case HK_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HK_ERR_SIZE_LIMIT: return "size limit";
    case HK_ERR_IO: return "i/o error";
    case HK_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void hk_string_free(char* s) { std::free(s); }

hk_status hk_instance_parse(const char* bytes, size_t length, hk_instance** out) {
  return guarded([&] {
    require(bytes, "bytes");
    require(out, "out");
    const std::string_view text(bytes, length);
    *out = wrap(hkernel::parse_instance(text), text);
    return HK_OK;
  });
}

hk_status hk_instance_load(const char* path, hk_instance** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    const std::string text = read_file(path);
    try {
      *out = wrap(hkernel::parse_instance(text), text);
    } catch (const hkernel::Error& e) {
      hkernel::fail(e.code(), std::string(path) + ": " + e.what());
    }
    return HK_OK;
  });
}

hk_status hk_instance_fixture(const char* name, hk_instance** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    auto instance = hkernel::fixture(name);
    if (!instance) {
      hkernel::fail(ErrorCode::invalid_argument, std::string("no fixture named ") + name);
    }
    const std::string text = hkernel::emit_instance(*instance);
    *out = wrap(std::move(*instance), text);
    return HK_OK;
  });
}

void hk_instance_free(hk_instance* instance) { delete instance; }

size_t hk_instance_vertex_count(const hk_instance* instance) {
  return instance ? instance->instance.digraph.graph().vertex_count() : 0;
}

size_t hk_instance_arc_count(const hk_instance* instance) {
  return instance ? instance->instance.digraph.graph().arc_count() : 0;
}

hk_status hk_instance_digest(const hk_instance* instance, char** out) {
  return guarded([&] {
    require(instance, "instance");
    put(out, instance->digest);
    return HK_OK;
  });
}

hk_status hk_instance_canonical_json(const hk_instance* instance, char** out) {
  return guarded([&] {
    require(instance, "instance");
    put(out, hkernel::emit_instance(hkernel::canonical_instance(instance->instance)));
    return HK_OK;
  });
}

hk_status hk_instance_json(const hk_instance* instance, char** out) {
  return guarded([&] {
    require(instance, "instance");
    put(out, hkernel::emit_instance(instance->instance));
    return HK_OK;
  });
}

hk_status hk_partition_text(const hk_instance* instance, char** out) {
  return guarded([&] {
    require(instance, "instance");
    auto resolved = resolve_partition(*instance);
    if (auto* problem = std::get_if<std::string>(&resolved)) {
      put(out, *problem + "\n");
      return HK_FALSE;
    }
    const auto& [f, supplied] = std::get<0>(resolved);
    put(out, std::string("partition: ") + (supplied ? "supplied" : "finest") + ", " +
                 std::to_string(f.class_count()) + " classes\n" +
                 hkernel::partition_text(instance->instance.digraph, f));
    return HK_OK;
  });
}

hk_status hk_class_digraph(const hk_instance* instance, hk_format format, char** out) {
  return guarded([&] {
    require(instance, "instance");
    hkernel::ViewFormat view;
    switch (format) {
      case HK_FORMAT_TEXT: view = hkernel::ViewFormat::text; break;
      case HK_FORMAT_JSON: view = hkernel::ViewFormat::json; break;
      case HK_FORMAT_DOT: view = hkernel::ViewFormat::dot; break;
      default: hkernel::fail(ErrorCode::invalid_argument, "unknown format");
    }
    auto resolved = resolve_partition(*instance);
    if (auto* problem = std::get_if<std::string>(&resolved)) {
      put(out, *problem + "\n");
      return HK_FALSE;
    }
    const hkernel::HClassPartition& f = std::get<0>(resolved).first;
    const hkernel::ColoredDigraph& d = instance->instance.digraph;
    put(out, hkernel::class_digraph_view(d, f, hkernel::class_digraph(d, f), view));
    return HK_OK;
  });
}

hk_status hk_analyze(const hk_instance* instance, hk_format format, char** out) {
  return guarded([&] {
    require(instance, "instance");
    if (format != HK_FORMAT_TEXT && format != HK_FORMAT_JSON) {
      hkernel::fail(ErrorCode::invalid_argument, "analyze supports text and json");
    }
    const hkernel::ColoredDigraph& d = instance->instance.digraph;
    const auto report = hkernel::analyze(d, instance->instance.partition);
    put(out, format == HK_FORMAT_JSON ? hkernel::report_json(d, report)
                                      : hkernel::report_text(d, report));
    return HK_OK;
  });
}

hk_status hk_construct_kernel(const hk_instance* instance,
                              const hk_kernel_request* request, char** out) {
  return guarded([&] {
    require(instance, "instance");
    require(request, "request");
    require(request->method, "method");
    const auto theorem = hkernel::parse_theorem(request->method);
    if (!theorem) {
      hkernel::fail(ErrorCode::invalid_argument,
                    std::string("unknown method ") + request->method);
    }
    hkernel::KernelRequest req;
    req.theorem = *theorem;
    req.k = request->k;
    req.l = request->l;
    req.options.unchecked = request->unchecked != 0;
    if (request->brute_force_limit) req.options.brute_force_limit = request->brute_force_limit;
    if (request->class_kernel) {
      std::vector<hkernel::ClassId> s;
      for (const std::string& name : split_list(request->class_kernel)) {
        const auto id = hkernel::parse_class_name(name);
        if (!id) hkernel::fail(ErrorCode::invalid_argument, "not a class name: " + name);
        s.push_back(*id);
      }
      req.class_kernel = std::move(s);
    }

    const hkernel::ColoredDigraph& d = instance->instance.digraph;
    hkernel::KernelOutcome outcome = hkernel::construct_kernel(d, instance->instance.partition, req);
    if (auto* cert = std::get_if<hkernel::KernelCertificate>(&outcome)) {
      if (cert->verification.passed()) {
        put(out, hkernel::emit_certificate(d, *cert, instance->digest));
        return HK_OK;
      }
      put(out, outcome_json({{"outcome", "rejected_by_oracle"},
                             {"theorem", std::string(hkernel::theorem_tag(cert->theorem))},
                             {"kernel", hkernel::vertex_names(d.graph(), cert->kernel)},
                             {"explanation", cert->verification.counterexample->explain(
                                                 d.graph(), cert->k, cert->l)}}));
      return HK_FALSE;
    }
    if (auto* failure = std::get_if<hkernel::HypothesisFailure>(&outcome)) {
      put(out, outcome_json({{"outcome", "hypothesis_failure"},
                             {"hypothesis", failure->hypothesis},
                             {"witness", failure->witness}}));
    } else if (auto* missing = std::get_if<hkernel::NotFound>(&outcome)) {
      put(out, outcome_json({{"outcome", "not_found"}, {"reason", missing->reason}}));
    } else {
      put(out, outcome_json({{"outcome", "no_partition"},
                             {"explanation", std::get<hkernel::NoPartition>(outcome).explain(d)}}));
    }
    return HK_FALSE;
  });
}

hk_status hk_verify_set(const hk_instance* instance, const char* vertices, unsigned k,
                        unsigned l, char** out) {
  return guarded([&] {
    require(instance, "instance");
    if (k < 2) hkernel::fail(ErrorCode::invalid_argument, "k must be at least 2");
    if (l < 1) hkernel::fail(ErrorCode::invalid_argument, "l must be at least 1");
    const hkernel::ColoredDigraph& d = instance->instance.digraph;
    const hkernel::VertexSet s = hkernel::vertex_set_from_names(d.graph(), split_list(vertices));
    const std::string label = "(" + std::to_string(k) + "," + std::to_string(l) + ",H)-kernel by walks";
    if (auto violation = hkernel::verify_klh_kernel(d, s, k, l)) {
      put(out, "not a " + label + ": " + violation->explain(d.graph(), k, l) + "\n");
      return HK_FALSE;
    }
    put(out, "a " + label + "\n");
    return HK_OK;
  });
}

hk_status hk_verify_certificate(const hk_instance* instance, const char* certificate,
                                size_t length, char** out) {
  return guarded([&] {
    require(instance, "instance");
    require(certificate, "certificate");
    const auto doc = hkernel::parse_certificate(std::string_view(certificate, length));
    if (doc.instance_digest != instance->digest) {
      put(out, "certificate digest " + doc.instance_digest + " does not match instance " +
                   instance->digest + "\n");
      return HK_FALSE;
    }
    if (!hkernel::parse_theorem(doc.theorem)) {
      hkernel::fail(ErrorCode::malformed_document, "theorem: unknown tag " + doc.theorem);
    }
    std::string names;
    for (const std::string& v : doc.kernel) names += (names.empty() ? "" : ",") + v;
    return hk_verify_set(instance, names.c_str(), doc.k, doc.l, out);
  });
}

hk_status hk_fixture_names(char** out) {
  return guarded([&] {
    std::string text;
    for (const std::string& name : hkernel::fixture_names()) text += name + "\n";
    put(out, text);
    return HK_OK;
  });
}

hk_status hk_fixtures_emit(const char* directory, char** out) {
  return guarded([&] {
    require(directory, "directory");
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec) throw IoError(std::string("cannot create ") + directory + ": " + ec.message());
    std::string written;
    for (const std::string& name : hkernel::fixture_names()) {
      const fs::path path = fs::path(directory) / (name + ".json");
      std::ofstream file(path, std::ios::binary);
      file << hkernel::emit_instance(*hkernel::fixture(name));
      if (!file) throw IoError("cannot write " + path.string());
      written += path.string() + "\n";
    }
    put(out, written);
    return HK_OK;
  });
}

hk_status hk_generate(const char* family, uint64_t seed, size_t size, char** out) {
  return guarded([&] {
    require(family, "family");
    const auto f = hkernel::parse_family(family);
    if (!f) hkernel::fail(ErrorCode::invalid_argument, std::string("unknown family ") + family);
    put(out, hkernel::emit_instance(hkernel::generate_instance(*f, seed, size)));
    return HK_OK;
  });
}

}  // extern "C"
