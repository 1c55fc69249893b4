#pragma once

// Named instances shipped with the library and the reproducible instance
// families behind `gen`.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hkernel/instance_io.hpp"

namespace hkernel {

/// fig1-style, fig2-style, two-blob, conflict-triangle.
std::vector<std::string> fixture_names();
std::optional<Instance> fixture(std::string_view name);

enum class Family { blobs, symmetric_classes, random };

std::optional<Family> parse_family(std::string_view name);
std::string_view family_name(Family f);

/// Fully determined by (family, seed, size); size >= 1.
///  blobs: `size` monochromatic cycles, each in its own color, joined by
///    bridge arcs that each get a fresh color; H has only loops.
///  symmetric-classes: `size` monochromatic cycles glued at shared vertices,
///    so every class is strongly connected and C_F(D) is symmetric.
///  random: `size` vertices, random arcs over up to four colors and a random
///    pattern digraph.
Instance generate_instance(Family family, std::uint64_t seed, std::size_t size);

}  // namespace hkernel
