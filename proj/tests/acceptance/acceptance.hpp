#pragma once

// Acceptance criteria. Each check returns its verdict and a one-line summary;
// the runner adds timing and the runtime bound.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hkernel/hclass.hpp"

namespace hkaccept {

struct Result {
  bool pass = true;
  std::string summary;
  /// Counterexamples and per-part counts, printed under the verdict line.
  std::vector<std::string> notes;

  /// Records a counterexample; keeps the first few descriptions.
  void fail(const std::string& what);
};

Result oracle_cross_validation();    // AC1
Result constructor_soundness();      // AC2
Result greedy_symmetric_kernels();   // AC3
Result lemma_suite();                // AC4
Result tightness_fixtures();         // AC5
Result swap_loop();                  // AC6
Result exhaustive_agreement();       // AC7

std::optional<std::size_t> finite(const hkernel::Distance& d);

/// Walk-preservation straight from the definition: breadth-first search
/// inside each D<F> from every vertex of D<F>.
bool walk_preservative_reference(const hkernel::ColoredDigraph& d,
                                 const hkernel::HClassPartition& f);

/// V(D<F>) for every class, as membership rows.
std::vector<std::vector<bool>> class_membership(const hkernel::ColoredDigraph& d,
                                                const hkernel::HClassPartition& f);

}  // namespace hkaccept
