#pragma once

// Flux pairings on (S^1 x S^2, omega) with omega = (1/2) d lambda ^ d theta ^ d z
// (normalized so the total volume is 1), evaluated against the 2-cycle
// C = {lambda_0} x S^2. The swept 3-chain of an isotopy is integrated by
// composite Gauss-Legendre quadrature of the pullback determinant.

#include <string>

#include "slowdiff/diffeo.hpp"

namespace slowdiff {

struct FluxReport {
  double value = 0.0;       // pairing before reduction
  double value_mod1 = 0.0;  // in [0,1)
  std::string method;       // "analytic" or "quadrature"
  double abs_error_estimate = 0.0;
  std::string cycle;
  bool has_analytic = false;
  double analytic_value = 0.0;
  bool flagged = false;
  std::string flag;
};

/// Full rotation loop gamma_t(lambda, w) = (lambda + t, w) for t in [0, t_end].
/// t_end = 1 sweeps the whole manifold once: pairing 1.
FluxReport generator_loop_flux(double t_end = 1.0);

/// Path f_t(lambda,w) = (lambda + t s alpha, R_{t s A(z)F(lambda)}(w)), t in [0,1].
/// s = 1 is the example-1 isotopy (pairing alpha mod 1); s = 2 tests additivity.
FluxReport flux_example1(const MapConfig& cfg, double time_scale = 1.0);

/// 2-D quadrature of A(z)F(theta) over theta in [0,1], z in [-1,1]; vanishes
/// mod 1 for zero-mean F, and is reported flagged otherwise.
FluxReport flux_example2(const MapConfig& cfg);

}  // namespace slowdiff
