#pragma once

// Heuristic (F, alpha) pairs whose Weyl-derivative extrema track a target
// profile Psi. alpha is the constant-quotient continued fraction
// [0; a, a, ...]; F places one sine at each convergent denominator q_j with
// amplitude chosen so the coherent contribution near N ~ q_{j+1} lands on
// Psi(q_{j+1}):
//
//   F(x) = sum_{j=1..J} c_j sin(2 pi q_j x),
//   c_j  = min(1, Psi(q_{j+1}) / (2 pi q_j q_{j+1})) * s,
//
// with s <= 1 a common rescale keeping sum c_j <= 1. This is a documented
// stand-in for an existence proof, not a reconstruction of it; its claims are
// checked empirically by the scan suite.

#include <cstdint>
#include <utility>

#include "slowdiff/fourier.hpp"
#include "slowdiff/psi.hpp"
#include "slowdiff/rotation.hpp"

namespace slowdiff {

struct ResonantPair {
  FourierSeries F;
  RotationNumber alpha;
  std::vector<std::int64_t> scales;  // q_1 .. q_{J+1}
};

/// depth = number of harmonics J (1 <= J <= 16); quotient >= 1 sets the
/// continued-fraction growth rate (default 2, the silver ratio).
ResonantPair resonant_pair(const PsiSpec& psi, int depth, int quotient = 2);

}  // namespace slowdiff
