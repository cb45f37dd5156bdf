// The Sigma-> / Sigma<- preparation machinery: minimal two-mode squeezing
// r-, the closed-form local squeezings (r1', r2') at a given r', the k(r')
// map onto the forward decomposition, and the PSD residual / classical-core
// checks that certify a decomposition.
//
// Pure functions over immutable inputs; evaluation across r' grid points
// may run concurrently.
#pragma once

#include "geof/state.hpp"

namespace geof {

enum class Direction {
  forward,  // Sigma->  = L(r1, r2) S2(r)
  reverse,  // Sigma<-  = S2(r) L(r1, r2)
};

struct SymplecticDecomposition {
  Direction direction = Direction::forward;
  double r = 0.0;  // two-mode squeezing, >= 0
  double r1 = 0.0;
  double r2 = 0.0;
};

/// kappa and lambda+- entering the r- closed form.
struct LowerBoundScalars {
  double kappa = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
};

struct LowerBoundResult {
  double r_minus = 0.0;
  LowerBoundScalars scalars;
};

/// Intermediates of the closed-form local squeezings; exposed so tests can
/// pin each scalar independently.
struct LocalSqueezingScalars {
  double xi_plus = 0.0;
  double xi_minus = 0.0;
  double theta = 0.0;
  double omega = 0.0;
  double gamma = 0.0;
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  double chi = 1.0;
};

struct LocalSqueezings {
  double r1 = 0.0;
  double r2 = 0.0;
  LocalSqueezingScalars scalars;
};

struct Residual {
  Eigen::Matrix4d phi = Eigen::Matrix4d::Zero();
  double min_eigenvalue = 0.0;
};

/// Minimal two-mode squeezing of the reverse decomposition,
/// r- = (1/4) ln[(kappa - sqrt(kappa^2 - l+ l-)) / l-], evaluated in a
/// cancellation-free form. Requires an entangled input.
LowerBoundResult r_lower(const StandardForm& sf);

/// Closed-form single-mode squeezings for the reverse decomposition at
/// two-mode squeezing r_prime >= r-(sf). Inputs within 1e-12 below r- are
/// clamped up to the boundary.
LocalSqueezings local_squeezings(const StandardForm& sf, double r_prime);

/// Two-mode squeezing of the forward decomposition equivalent to the
/// reverse one (r_prime, r1, r2); k >= r_prime with equality iff r1 == r2.
double k_of(double r_prime, double r1, double r2);

/// Symplectic matrix of the decomposition (L S2 forward, S2 L reverse).
SymplecticMatrix decomposition_matrix(const SymplecticDecomposition& dec);

/// The pure state Sigma Sigma^T prepared from vacuum.
CovarianceMatrix assemble_pure(const SymplecticDecomposition& dec);

/// phi = expand(sf) - assemble_pure(dec); the decomposition is valid iff
/// min_eigenvalue >= -1e-9. Validity is data, not an error.
Residual residual(const StandardForm& sf, const SymplecticDecomposition& dec);

/// Sigma^-1 sigma Sigma^-T; classical iff dec prepares sf from a classical
/// state. At r_prime = r- the smallest eigenvalue sits on the boundary 1.
CovarianceMatrix classical_core(const StandardForm& sf, const SymplecticDecomposition& dec);

}  // namespace geof
