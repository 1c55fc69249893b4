#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "hkernel/error.hpp"

namespace hkernel {

/// A walk length or H-length that may be infinite (no walk exists).
class Distance {
 public:
  constexpr Distance() = default;  // infinite
  constexpr explicit Distance(std::uint32_t value) : value_(value) {}

  static constexpr Distance infinite() { return Distance(); }

  constexpr bool is_finite() const { return value_.has_value(); }

  std::uint32_t value() const {
    if (!value_) fail(ErrorCode::internal, "value() on an infinite distance");
    return *value_;
  }

  std::string to_string() const {
    return value_ ? std::to_string(*value_) : std::string("infinity");
  }

  friend constexpr bool operator==(const Distance&, const Distance&) = default;

  friend constexpr std::strong_ordering operator<=>(const Distance& a,
                                                    const Distance& b) {
    if (a.value_ && b.value_) return *a.value_ <=> *b.value_;
    if (!a.value_ && !b.value_) return std::strong_ordering::equal;
    return a.value_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  /// Compares against a plain bound; infinity exceeds every bound.
  constexpr bool at_most(std::uint32_t bound) const {
    return value_ && *value_ <= bound;
  }
  constexpr bool at_least(std::uint32_t bound) const {
    return !value_ || *value_ >= bound;
  }

 private:
  std::optional<std::uint32_t> value_;
};

}  // namespace hkernel
