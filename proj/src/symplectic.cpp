#include "geof/symplectic.hpp"

#include <cmath>

namespace geof {

const Eigen::Matrix4d& symplectic_form() {
  static const Eigen::Matrix4d omega = [] {
    Eigen::Matrix4d w = Eigen::Matrix4d::Zero();
    w(0, 1) = 1.0;
    w(1, 0) = -1.0;
    w(2, 3) = 1.0;
    w(3, 2) = -1.0;
    return w;
  }();
  return omega;
}

bool is_symplectic(const Eigen::Matrix4d& m, double tol) {
  const Eigen::Matrix4d& w = symplectic_form();
  return ((m * w * m.transpose()) - w).cwiseAbs().maxCoeff() <= tol;
}

SymplecticMatrix two_mode_squeezer(double r) {
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  SymplecticMatrix s;
  s.m << ch, 0, sh, 0,
         0, ch, 0, -sh,
         sh, 0, ch, 0,
         0, -sh, 0, ch;
  return s;
}

SymplecticMatrix local_squeezer(double r1, double r2) {
  SymplecticMatrix s;
  s.m = Eigen::Vector4d(std::exp(r1), std::exp(-r1), std::exp(r2), std::exp(-r2)).asDiagonal();
  return s;
}

SymplecticMatrix mode_swap() {
  SymplecticMatrix s;
  s.m = Eigen::Matrix4d::Zero();
  s.m(0, 2) = s.m(1, 3) = s.m(2, 0) = s.m(3, 1) = 1.0;
  return s;
}

}  // namespace geof
