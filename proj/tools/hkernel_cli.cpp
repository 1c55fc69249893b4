// hkernel: command-line front end over the C API.
//
// Exit codes: 0 success / property holds, 1 property false / hypothesis
// failure / nothing found, 2 input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hkernel/hkernel.h"

namespace {

constexpr int kExitFalse = 1;
constexpr int kExitInput = 2;

// Owns a string returned through a char** out-parameter.
class Owned {
 public:
  Owned() = default;
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  ~Owned() { hk_string_free(raw_); }

  char** slot() {
    hk_string_free(raw_);
    raw_ = nullptr;
    return &raw_;
  }
  const char* get() const { return raw_ ? raw_ : ""; }

 private:
  char* raw_ = nullptr;
};

struct InstanceDeleter {
  void operator()(hk_instance* i) const { hk_instance_free(i); }
};
using InstancePtr = std::unique_ptr<hk_instance, InstanceDeleter>;

struct Failure {
  int exit_code;
};

int exit_code_of(hk_status status) {
  if (status == HK_OK) return 0;
  if (status == HK_FALSE) return kExitFalse;
  return kExitInput;
}

// Errors print to stderr and abort the command; OK and FALSE return.
hk_status check(hk_status status) {
  if (status != HK_OK && status != HK_FALSE) {
    std::cerr << "error (" << hk_status_name(status) << "): " << hk_last_error() << "\n";
    throw Failure{kExitInput};
  }
  return status;
}

void input_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  throw Failure{kExitInput};
}

// A path that does not exist but names a shipped fixture loads the fixture.
InstancePtr load(const std::string& source) {
  hk_instance* raw = nullptr;
  std::error_code ec;
  if (!std::filesystem::exists(source, ec)) {
    Owned names;
    check(hk_fixture_names(names.slot()));
    std::istringstream list(names.get());
    for (std::string name; std::getline(list, name);) {
      if (name == source) {
        check(hk_instance_fixture(source.c_str(), &raw));
        return InstancePtr(raw);
      }
    }
    input_error(source + ": no such file or fixture");
  }
  check(hk_instance_load(source.c_str(), &raw));
  return InstancePtr(raw);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) input_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::optional<std::string>& path, const char* text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path, std::ios::binary);
  out << text;
  if (!out) input_error("cannot write " + *path);
}

size_t brute_force_limit_from_environment() {
  // Raising the bound makes exhaustive searches exponential; not for CI.
  const char* value = std::getenv("HKERNEL_BRUTE_FORCE_LIMIT");
  if (!value || !*value) return 0;
  char* end = nullptr;
  const unsigned long parsed = std::strtoul(value, &end, 10);
  if (*end != '\0' || parsed == 0 || parsed > 30) {
    input_error("HKERNEL_BRUTE_FORCE_LIMIT must be an integer in 1..30");
  }
  return parsed;
}

hk_format parse_format(const std::string& name) {
  if (name == "json") return HK_FORMAT_JSON;
  if (name == "dot") return HK_FORMAT_DOT;
  return HK_FORMAT_TEXT;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(k,l,H)-kernels by walks in H-colored digraphs"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";
  std::optional<std::string> output;

  auto* validate = app.add_subcommand("validate", "Parse and check an instance");
  validate->add_option("file", file, "Instance JSON or fixture name")->required();
  bool canonical = false;
  validate->add_flag("--canonical", canonical, "Print the canonical form");

  auto* partition = app.add_subcommand("partition", "Print the H-class partition");
  partition->add_option("file", file)->required();

  auto* class_digraph = app.add_subcommand("class-digraph", "Print C_F(D)");
  class_digraph->add_option("file", file)->required();
  class_digraph->add_option("--format", format)->check(CLI::IsMember({"text", "json", "dot"}));

  auto* analyze = app.add_subcommand("analyze", "Report which constructions apply");
  analyze->add_option("file", file)->required();
  analyze->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* kernel = app.add_subcommand("kernel", "Construct a certified kernel");
  kernel->add_option("file", file)->required();
  std::string method;
  unsigned k = 2;
  unsigned l = 1;
  std::optional<std::string> class_kernel;
  bool unchecked = false;
  kernel
      ->add_option("--method", method)
      ->required()
      ->check(CLI::IsMember({"thm35", "classlema", "prop41", "prop42", "prop43", "prop44",
                             "thm51", "thm52", "thm53", "thm54", "thm55", "brute"}));
  kernel->add_option("--k", k);
  kernel->add_option("--l", l);
  kernel->add_option("--class-kernel", class_kernel, "Class set such as F6,F9");
  kernel->add_flag("--unchecked", unchecked, "Skip hypothesis checks (the oracle still runs)");
  kernel->add_option("-o,--output", output, "Certificate path (default stdout)");

  auto* verify = app.add_subcommand("verify", "Check a set or a certificate");
  verify->add_option("file", file)->required();
  std::optional<std::string> set;
  std::optional<std::string> certificate;
  auto* set_option = verify->add_option("--set", set, "Comma-separated vertices");
  auto* cert_option = verify->add_option("--certificate", certificate, "Certificate JSON");
  set_option->excludes(cert_option);
  verify->add_option("--k", k);
  verify->add_option("--l", l);

  auto* fixtures = app.add_subcommand("fixtures", "Shipped fixtures");
  fixtures->require_subcommand(1);
  auto* fixtures_emit = fixtures->add_subcommand("emit", "Write every fixture as JSON");
  std::string directory;
  fixtures_emit->add_option("dir", directory)->required();
  auto* fixtures_list = fixtures->add_subcommand("list", "List fixture names");

  auto* gen = app.add_subcommand("gen", "Generate a reproducible instance");
  std::string family;
  std::uint64_t seed = 0;
  std::size_t size = 0;
  gen->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember({"blobs", "symmetric-classes", "random"}));
  gen->add_option("--seed", seed)->required();
  gen->add_option("--size", size)->required()->check(CLI::Range(1, 10000));
  gen->add_option("-o,--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    Owned text;
    hk_status status = HK_OK;
    if (validate->parsed()) {
      InstancePtr instance = load(file);
      if (canonical) {
        check(hk_instance_canonical_json(instance.get(), text.slot()));
        std::cout << text.get();
      } else {
        check(hk_instance_digest(instance.get(), text.slot()));
        std::cout << "valid: " << hk_instance_vertex_count(instance.get()) << " vertices, "
                  << hk_instance_arc_count(instance.get()) << " arcs, sha256:" << text.get()
                  << "\n";
      }
    } else if (partition->parsed()) {
      InstancePtr instance = load(file);
      status = check(hk_partition_text(instance.get(), text.slot()));
      std::cout << text.get();
    } else if (class_digraph->parsed()) {
      InstancePtr instance = load(file);
      status = check(hk_class_digraph(instance.get(), parse_format(format), text.slot()));
      std::cout << text.get();
    } else if (analyze->parsed()) {
      InstancePtr instance = load(file);
      status = check(hk_analyze(instance.get(), parse_format(format), text.slot()));
      std::cout << text.get();
    } else if (kernel->parsed()) {
      InstancePtr instance = load(file);
      const hk_kernel_request request{method.c_str(), k, l,
                                      class_kernel ? class_kernel->c_str() : nullptr,
                                      unchecked ? 1 : 0, brute_force_limit_from_environment()};
      status = check(hk_construct_kernel(instance.get(), &request, text.slot()));
      if (status == HK_OK) {
        write_output(output, text.get());
      } else {
        std::cout << text.get();
      }
    } else if (verify->parsed()) {
      InstancePtr instance = load(file);
      if (certificate) {
        const std::string doc = read_file(*certificate);
        status = check(hk_verify_certificate(instance.get(), doc.data(), doc.size(),
                                             text.slot()));
      } else {
        if (!set) input_error("verify needs --set or --certificate");
        status = check(hk_verify_set(instance.get(), set->c_str(), k, l, text.slot()));
      }
      std::cout << text.get();
    } else if (fixtures_emit->parsed()) {
      check(hk_fixtures_emit(directory.c_str(), text.slot()));
      std::cout << text.get();
    } else if (fixtures_list->parsed()) {
      check(hk_fixture_names(text.slot()));
      std::cout << text.get();
    } else if (gen->parsed()) {
      check(hk_generate(family.c_str(), seed, size, text.slot()));
      write_output(output, text.get());
    }
    return exit_code_of(status);
  } catch (const Failure& f) {
    return f.exit_code;
  }
}
