#pragma once

#include <stdexcept>
#include <string>

namespace hkernel {

/// Failure categories surfaced through the C API as distinct status codes.
enum class ErrorCode {
  invalid_argument,
  malformed_document,
  loop_arc,
  unknown_color,
  unknown_vertex,
  duplicate_id,
  parallel_arc,
  bad_partition,
  precondition,
  size_limit,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hkernel
