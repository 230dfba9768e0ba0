#include "slowdiff/resonant.hpp"

#include <cmath>
#include <stdexcept>

#include "slowdiff/numeric.hpp"

namespace slowdiff {

ResonantPair resonant_pair(const PsiSpec& psi, int depth, int quotient) {
  if (depth < 1) throw std::invalid_argument("resonant_pair: depth must be >= 1");
  if (quotient < 1) throw std::invalid_argument("resonant_pair: quotient must be >= 1");

  // q_{k+1} = a q_k + q_{k-1}; need q_1..q_{J+1}, and q_J * q_{J+1} must stay
  // well below 1/eps for the resonance phases to be resolvable in double.
  std::vector<std::int64_t> q;
  std::int64_t q_prev = 1, q_cur = quotient;
  q.push_back(q_cur);
  for (int k = 1; k <= depth; ++k) {
    const double next = static_cast<double>(quotient) * static_cast<double>(q_cur) +
                        static_cast<double>(q_prev);
    if (next * static_cast<double>(q_cur) > 4e14) {
      throw std::invalid_argument("resonant_pair: depth too large for working precision");
    }
    const std::int64_t q_next = quotient * q_cur + q_prev;
    q_prev = q_cur;
    q_cur = q_next;
    q.push_back(q_cur);
  }

  std::vector<double> raw(static_cast<std::size_t>(depth));
  double total = 0.0;
  for (int j = 0; j < depth; ++j) {
    const double qj = static_cast<double>(q[static_cast<std::size_t>(j)]);
    const double qn = static_cast<double>(q[static_cast<std::size_t>(j) + 1]);
    raw[static_cast<std::size_t>(j)] = std::min(1.0, psi.eval(qn) / (kTwoPi * qj * qn));
    total += raw[static_cast<std::size_t>(j)];
  }
  const double rescale = total > 1.0 ? 1.0 / total : 1.0;

  std::vector<FourierHarmonic> harmonics;
  harmonics.reserve(static_cast<std::size_t>(depth));
  for (int j = 0; j < depth; ++j) {
    harmonics.push_back({q[static_cast<std::size_t>(j)], 0.0, raw[static_cast<std::size_t>(j)] * rescale});
  }

  ResonantPair out{FourierSeries(0.0, std::move(harmonics)),
                   RotationNumber::cf_constant(quotient), std::move(q)};
  return out;
}

}  // namespace slowdiff
