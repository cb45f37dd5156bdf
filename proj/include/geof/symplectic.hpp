// Symplectic operations on two-mode covariance matrices.
// Quadrature ordering is (x1, p1, x2, p2) throughout, hbar = 2,
// so the vacuum covariance matrix is the identity.
#pragma once

#include <Eigen/Dense>

namespace geof {

struct SymplecticMatrix {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
};

/// The fixed two-mode symplectic form Omega = omega (+) omega,
/// omega = [[0,1],[-1,0]].
const Eigen::Matrix4d& symplectic_form();

/// S Omega S^T = Omega within tol.
bool is_symplectic(const Eigen::Matrix4d& m, double tol = 1e-12);

/// Two-mode squeezer S2(r): cosh r on the diagonal blocks, sinh r * Z off.
SymplecticMatrix two_mode_squeezer(double r);

/// L(r1, r2) = exp(r1 Z) (+) exp(r2 Z) = diag(e^r1, e^-r1, e^r2, e^-r2).
SymplecticMatrix local_squeezer(double r1, double r2);

/// Permutation exchanging the two modes (itself symplectic).
SymplecticMatrix mode_swap();

}  // namespace geof
