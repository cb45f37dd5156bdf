// Two-mode Gaussian state representation: covariance matrices, the
// (a, b, c1, c2) standard form, the purity parametrization, symplectic
// spectra and the classicality / separability predicates.
//
// All types are immutable values and all functions are pure; everything
// here is safe to call concurrently.
#pragma once

#include <Eigen/Dense>

#include "geof/errors.hpp"
#include "geof/symplectic.hpp"

namespace geof {

// Physicality tolerance on the smallest symplectic eigenvalue (nu- >= 1 - tol)
// and the element-wise symmetry tolerance, both in vacuum units.
inline constexpr double kPhysicalTol = 1e-9;
inline constexpr double kSymmetryTol = 1e-12;

class CovarianceMatrix {
 public:
  /// Validates symmetry (1e-12 element-wise), positive definiteness and
  /// physicality (nu- >= 1 - 1e-9). Throws NotPhysical.
  static CovarianceMatrix from_matrix(const Eigen::Matrix4d& m);

  /// Skips validation; for results that are valid by construction.
  static CovarianceMatrix unchecked(const Eigen::Matrix4d& m) { return CovarianceMatrix(m); }

  const Eigen::Matrix4d& m() const { return m_; }

 private:
  explicit CovarianceMatrix(const Eigen::Matrix4d& m) : m_(m) {}
  Eigen::Matrix4d m_;
};

/// Standard form: A = diag(a,a), B = diag(b,b), C = diag(c1,c2) with
/// a >= b >= 1 and c1 >= |c2| >= 0.
struct StandardForm {
  double a = 1.0;
  double b = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Generator coordinates (local purities, global purity, beta).
struct PurityParams {
  double mu_a = 1.0;
  double mu_b = 1.0;
  double mu = 1.0;
  double beta = 0.0;
};

/// Intermediate scalars of the purity parametrization.
struct PurityDerived {
  double s = 1.0;
  double d = 0.0;
  double g = 1.0;
  double z = 0.0;
  double w = 0.0;
};

struct SymplecticSpectrum {
  double nu_minus = 1.0;
  double nu_plus = 1.0;
  double delta = 2.0;  // Delta for the state spectrum, E for the PT spectrum
};

struct Purities {
  double mu = 1.0;
  double mu_a = 1.0;
  double mu_b = 1.0;
};

struct ReducedForm {
  StandardForm sf;
  SymplecticMatrix transform;  // S with S c S^T = expand(sf)
};

/// Standard form of the two-mode squeezed vacuum with squeezing r.
StandardForm tmsv_standard_form(double r);

CovarianceMatrix expand(const StandardForm& sf);

PurityDerived purity_derived(const PurityParams& p);

/// Maps purity parameters to the standard form. Validates the constraint
/// set and round-trips the purities from the expanded matrix; a mismatch
/// beyond 1e-6 raises ParametrizationMismatch.
StandardForm from_purity_params(const PurityParams& p);

/// Brings an arbitrary physical covariance matrix to standard form by
/// per-mode symplectic transformations (plus a mode swap when needed to
/// order a >= b). The returned S satisfies S c S^T = expand(sf).
ReducedForm reduce_to_standard_form(const CovarianceMatrix& c);

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& c);
SymplecticSpectrum symplectic_spectrum(const StandardForm& sf);

/// Spectrum of the partial transpose (1 (+) Z) c (1 (+) Z).
SymplecticSpectrum pt_spectrum(const CovarianceMatrix& c);
SymplecticSpectrum pt_spectrum(const StandardForm& sf);

/// True iff all ordinary eigenvalues of the standard-form expansion are
/// >= 1 - 1e-9 (the criterion sigma_sf >= 1).
bool is_classical(const CovarianceMatrix& c);

/// True iff the smallest PT symplectic eigenvalue is >= 1 - 1e-9.
bool is_separable(const CovarianceMatrix& c);
bool is_separable(const StandardForm& sf);

Purities purities(const CovarianceMatrix& c);
Purities purities(const StandardForm& sf);

CovarianceMatrix apply(const SymplecticMatrix& s, const CovarianceMatrix& c);

}  // namespace geof
