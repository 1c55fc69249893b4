#pragma once

#include <cstddef>
#include <vector>

#include "hkernel/digraph.hpp"

namespace hkernel {

/// Visits every subset of {0..n-1} ordered by size, then lexicographically.
/// The visitor returns false to stop early.
template <typename Visitor>
void for_each_subset_by_size(std::size_t n, Visitor&& visit) {
  for (std::size_t size = 0; size <= n; ++size) {
    VertexSet pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = static_cast<VertexId>(i);
    while (true) {
      if (!visit(static_cast<const VertexSet&>(pick))) return;
      // Advance to the next combination in lexicographic order.
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
}

}  // namespace hkernel
