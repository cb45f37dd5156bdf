// Shared implementation core for r-, the local-squeezing closed forms and
// their domain boundary. Internal; the public surface lives in
// decomposition.hpp and eof.hpp.
#pragma once

#include "geof/decomposition.hpp"
#include "geof/state.hpp"

namespace geof::detail {

// x- = e^{4 r-} and x+ are the two roots of the quadratic
// lambda- x^2 - 2 kappa x + lambda+ = 0; the local-squeezing radicand
// gamma (zeta1 + zeta2) equals -gamma lambda- (x - x-)(x - x+) / (2x),
// which is the cancellation-free form used for evaluation.
struct BoundCore {
  double r_minus = 0.0;
  double x_minus = 1.0;
  double x_plus = 1.0;
  double gamma = 0.0;
  double det_sigma = 1.0;
  bool pure = false;
  LowerBoundScalars scalars;
};

/// Throws NotEntangled for separable inputs, NumericalDomain when the
/// discriminant falls below -1e-9.
BoundCore bound_core(const StandardForm& sf);

/// Closed forms evaluated against a precomputed core (hot path of the
/// exact-EoF objective). r_prime within 1e-12 below r- is clamped up.
LocalSqueezings local_squeezings_at(const StandardForm& sf, const BoundCore& core,
                                    double r_prime);

}  // namespace geof::detail
