#include "geof/state.hpp"

#include <cmath>
#include <utility>

#include "geof/detail/dd.hpp"

namespace geof {

namespace {

using detail::Dd;

// Radicands like Delta^2 - 4 det sigma sit exactly on zero for pure states;
// plain double evaluation turns machine epsilon into sqrt(eps) ~ 1e-8 there,
// which the 1e-9 physicality tolerance cannot absorb. The determinants and
// the radicand therefore run in compensated arithmetic.
struct InvariantDets {
  Dd det_a, det_b, det_c, det_sigma;
};

Dd det2_dd(double m00, double m01, double m10, double m11) {
  return detail::dd_sub(detail::two_prod(m00, m11), detail::two_prod(m01, m10));
}

InvariantDets sf_dets(const StandardForm& sf) {
  const Dd ab = detail::two_prod(sf.a, sf.b);
  const Dd q1 = detail::dd_sub(ab, detail::two_prod(sf.c1, sf.c1));
  const Dd q2 = detail::dd_sub(ab, detail::two_prod(sf.c2, sf.c2));
  return {detail::two_prod(sf.a, sf.a), detail::two_prod(sf.b, sf.b),
          detail::two_prod(sf.c1, sf.c2), detail::dd_mul(q1, q2)};
}

InvariantDets block_dets(const Eigen::Matrix4d& m) {
  InvariantDets d;
  d.det_a = det2_dd(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
  d.det_b = det2_dd(m(2, 2), m(2, 3), m(3, 2), m(3, 3));
  d.det_c = det2_dd(m(0, 2), m(0, 3), m(1, 2), m(1, 3));
  // Laplace expansion over complementary 2x2 minors of rows (0,1) and (2,3)
  const Dd p01 = det2_dd(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
  const Dd p02 = det2_dd(m(0, 0), m(0, 2), m(1, 0), m(1, 2));
  const Dd p03 = det2_dd(m(0, 0), m(0, 3), m(1, 0), m(1, 3));
  const Dd p12 = det2_dd(m(0, 1), m(0, 2), m(1, 1), m(1, 2));
  const Dd p13 = det2_dd(m(0, 1), m(0, 3), m(1, 1), m(1, 3));
  const Dd p23 = det2_dd(m(0, 2), m(0, 3), m(1, 2), m(1, 3));
  const Dd q01 = det2_dd(m(2, 0), m(2, 1), m(3, 0), m(3, 1));
  const Dd q02 = det2_dd(m(2, 0), m(2, 2), m(3, 0), m(3, 2));
  const Dd q03 = det2_dd(m(2, 0), m(2, 3), m(3, 0), m(3, 3));
  const Dd q12 = det2_dd(m(2, 1), m(2, 2), m(3, 1), m(3, 2));
  const Dd q13 = det2_dd(m(2, 1), m(2, 3), m(3, 1), m(3, 3));
  const Dd q23 = det2_dd(m(2, 2), m(2, 3), m(3, 2), m(3, 3));
  Dd det = detail::dd_sub(detail::dd_mul(p01, q23), detail::dd_mul(p02, q13));
  det = detail::dd_add(det, detail::dd_mul(p03, q12));
  det = detail::dd_add(det, detail::dd_mul(p12, q03));
  det = detail::dd_sub(det, detail::dd_mul(p13, q02));
  det = detail::dd_add(det, detail::dd_mul(p23, q01));
  d.det_sigma = det;
  return d;
}

// nu+- = sqrt[(D +- sqrt(D^2 - 4 det sigma))/2] from the invariant D
// (Delta, or E for the partial transpose). The small eigenvalue uses the
// quotient form 2 det / (D + sqrt(rad)), stable for large states.
SymplecticSpectrum spectrum_from_invariant(Dd inv, Dd det_sigma) {
  if (det_sigma.hi <= 0.0) throw NotPhysical("covariance matrix determinant is not positive");
  Dd rad = detail::dd_sub(detail::dd_mul(inv, inv), detail::dd_mul_d(det_sigma, 4.0));
  if (rad.hi < -1e-9) throw NumericalDomain("symplectic spectrum radicand below tolerance");
  if (rad.hi < 0.0) rad = detail::dd_from(0.0);
  const double den = detail::dd_to_double(detail::dd_add(inv, detail::dd_sqrt(rad)));
  SymplecticSpectrum sp;
  sp.delta = detail::dd_to_double(inv);
  sp.nu_plus = std::sqrt(den / 2.0);
  sp.nu_minus = std::sqrt(2.0 * detail::dd_to_double(det_sigma) / den);
  return sp;
}

SymplecticSpectrum spectrum_of(const InvariantDets& d, double c_sign) {
  const Dd inv = detail::dd_add(detail::dd_add(d.det_a, d.det_b),
                                detail::dd_mul_d(d.det_c, 2.0 * c_sign));
  return spectrum_from_invariant(inv, d.det_sigma);
}

}  // namespace

CovarianceMatrix CovarianceMatrix::from_matrix(const Eigen::Matrix4d& m) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol)
    throw NotPhysical("covariance matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw NotPhysical("covariance matrix is not positive definite");
  CovarianceMatrix c(m);
  if (symplectic_spectrum(c).nu_minus < 1.0 - kPhysicalTol)
    throw NotPhysical("smallest symplectic eigenvalue below 1");
  return c;
}

StandardForm tmsv_standard_form(double r) {
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  return {ch, ch, std::abs(sh), -std::abs(sh)};
}

CovarianceMatrix expand(const StandardForm& sf) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = m(1, 1) = sf.a;
  m(2, 2) = m(3, 3) = sf.b;
  m(0, 2) = m(2, 0) = sf.c1;
  m(1, 3) = m(3, 1) = sf.c2;
  return CovarianceMatrix::unchecked(m);
}

PurityDerived purity_derived(const PurityParams& p) {
  if (!(p.mu_a > 0.0 && p.mu_a <= 1.0) || !(p.mu_b > 0.0 && p.mu_b <= 1.0) ||
      !(p.mu > 0.0 && p.mu <= 1.0))
    throw InvalidParams("purities must lie in (0, 1]");
  if (!(p.beta >= -1.0 && p.beta <= 1.0)) throw InvalidParams("beta must lie in [-1, 1]");

  PurityDerived der;
  const double a = 1.0 / p.mu_a;
  const double b = 1.0 / p.mu_b;
  der.s = (a + b) / 2.0;
  der.d = (a - b) / 2.0;
  der.g = 1.0 / p.mu;
  if (der.s < 1.0 || std::abs(der.d) > der.s - 1.0 + 1e-12)
    throw InvalidParams("s >= 1 and |d| <= s - 1 violated");
  if (der.g < 2.0 * std::abs(der.d) + 1.0 - 1e-12)
    throw InvalidParams("g >= 2|d| + 1 violated");

  const double d2 = der.d * der.d;
  const double g2 = der.g * der.g;
  const double t = (p.beta - 1.0) * (1.0 + g2) - 2.0 * (p.beta + 1.0) * (2.0 * d2 + der.g);
  const double pz = 8.0 * d2 + t;
  const double pw = 8.0 * der.s * der.s + t;
  const double tz = pz * pz - 16.0 * g2;
  const double tw = pw * pw - 16.0 * g2;
  // Radicands sit exactly on zero for the beta = +-1 families; snap values
  // inside floating-point noise of the boundary so those families stay exact.
  const double az = std::abs(pz) + 4.0 * der.g;
  const double aw = std::abs(pw) + 4.0 * der.g;
  if (tz < -1e-13 * az * az || tw < -1e-13 * aw * aw)
    throw InvalidParams("z or w radicand negative: parameter tuple invalid");
  der.z = tz <= 1e-13 * az * az ? 0.0 : std::sqrt(tz);
  der.w = tw <= 1e-13 * aw * aw ? 0.0 : std::sqrt(tw);
  return der;
}

StandardForm from_purity_params(const PurityParams& p) {
  const PurityDerived der = purity_derived(p);
  const double scale = std::sqrt(p.mu_a * p.mu_b) / 8.0;
  StandardForm sf;
  sf.a = 1.0 / p.mu_a;
  sf.b = 1.0 / p.mu_b;
  sf.c1 = (der.z + der.w) * scale;
  sf.c2 = (der.z - der.w) * scale;

  const bool swapped = sf.a < sf.b;
  if (swapped) std::swap(sf.a, sf.b);  // mode relabeling; C stays diagonal

  if (sf.a * sf.b <= sf.c1 * sf.c1 || sf.a * sf.b <= sf.c2 * sf.c2)
    throw InvalidParams("parameters give a non-positive-definite matrix");
  if (symplectic_spectrum(sf).nu_minus < 1.0 - kPhysicalTol)
    throw InvalidParams("parameters give an unphysical state");

  const Purities rec = purities(sf);
  const double in_a = swapped ? p.mu_b : p.mu_a;
  const double in_b = swapped ? p.mu_a : p.mu_b;
  if (std::abs(rec.mu - p.mu) > 1e-6 || std::abs(rec.mu_a - in_a) > 1e-6 ||
      std::abs(rec.mu_b - in_b) > 1e-6)
    throw ParametrizationMismatch("recomputed purities differ from inputs beyond 1e-6");
  return sf;
}

ReducedForm reduce_to_standard_form(const CovarianceMatrix& c) {
  // revalidate: unchecked matrices may reach us
  CovarianceMatrix::from_matrix(c.m());
  const Eigen::Matrix4d& sig = c.m();

  // Per mode: rotate to the eigenbasis of the diagonal block, then squeeze
  // it to sqrt(det) * identity.
  Eigen::Matrix4d local = Eigen::Matrix4d::Zero();
  for (int mode = 0; mode < 2; ++mode) {
    const Eigen::Matrix2d blk = sig.block<2, 2>(2 * mode, 2 * mode);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(blk);
    Eigen::Matrix2d v = es.eigenvectors();
    if (v.determinant() < 0.0) v.col(0) *= -1.0;
    const double d1 = es.eigenvalues()(0), d2 = es.eigenvalues()(1);
    if (d1 <= 0.0) throw NotPhysical("mode block not positive definite");
    Eigen::Matrix2d sq = Eigen::Matrix2d::Zero();
    sq(0, 0) = std::pow(d2 / d1, 0.25);
    sq(1, 1) = std::pow(d1 / d2, 0.25);
    local.block<2, 2>(2 * mode, 2 * mode) = sq * v.transpose();
  }
  const Eigen::Matrix4d s1 = local * sig * local.transpose();

  // Counter-rotate both modes to diagonalize the coupling block with proper
  // rotations (signed SVD).
  const Eigen::Matrix2d cblk = s1.topRightCorner<2, 2>();
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(cblk, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix2d u = svd.matrixU(), v = svd.matrixV();
  if (u.determinant() < 0.0) u.col(1) *= -1.0;
  if (v.determinant() < 0.0) v.col(1) *= -1.0;
  Eigen::Matrix4d rot = Eigen::Matrix4d::Zero();
  rot.topLeftCorner<2, 2>() = u.transpose();
  rot.bottomRightCorner<2, 2>() = v.transpose();

  SymplecticMatrix s;
  s.m = rot * local;
  Eigen::Matrix4d out = s.m * sig * s.m.transpose();
  if (out(0, 0) < out(2, 2)) {
    s.m = mode_swap().m * s.m;
    out = s.m * sig * s.m.transpose();
  }

  StandardForm sf;
  sf.a = (out(0, 0) + out(1, 1)) / 2.0;
  sf.b = (out(2, 2) + out(3, 3)) / 2.0;
  sf.c1 = (out(0, 2) + out(2, 0)) / 2.0;
  sf.c2 = (out(1, 3) + out(3, 1)) / 2.0;
  if (sf.c1 < 0.0) {  // flip both signs by a pi rotation of mode 1
    SymplecticMatrix flip;
    flip.m = Eigen::Vector4d(-1, -1, 1, 1).asDiagonal();
    s.m = flip.m * s.m;
    sf.c1 = -sf.c1;
    sf.c2 = -sf.c2;
  }
  // degenerate sign tie: prefer the entangled-sign convention c2 <= 0
  if (sf.c2 > 0.0 && sf.c2 <= 1e-12 * std::max(1.0, sf.c1)) sf.c2 = -sf.c2;
  return {sf, s};
}

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& c) {
  return spectrum_of(block_dets(c.m()), 1.0);
}

SymplecticSpectrum symplectic_spectrum(const StandardForm& sf) {
  return spectrum_of(sf_dets(sf), 1.0);
}

SymplecticSpectrum pt_spectrum(const CovarianceMatrix& c) {
  return spectrum_of(block_dets(c.m()), -1.0);
}

SymplecticSpectrum pt_spectrum(const StandardForm& sf) {
  return spectrum_of(sf_dets(sf), -1.0);
}

bool is_classical(const CovarianceMatrix& c) {
  StandardForm sf;
  try {
    sf = reduce_to_standard_form(c).sf;
  } catch (const NotPhysical&) {
    return false;  // sigma >= 1 would imply physicality
  }
  // eigenvalues of the standard-form expansion are s +- sqrt(d^2 + c_i^2)
  const double s = (sf.a + sf.b) / 2.0;
  const double d = (sf.a - sf.b) / 2.0;
  const double lo = s - std::sqrt(d * d + sf.c1 * sf.c1);
  return lo >= 1.0 - kPhysicalTol;
}

bool is_separable(const CovarianceMatrix& c) {
  return pt_spectrum(c).nu_minus >= 1.0 - kPhysicalTol;
}

bool is_separable(const StandardForm& sf) {
  return pt_spectrum(sf).nu_minus >= 1.0 - kPhysicalTol;
}

Purities purities(const CovarianceMatrix& c) {
  const InvariantDets d = block_dets(c.m());
  if (d.det_a.hi <= 0.0 || d.det_b.hi <= 0.0 || d.det_sigma.hi <= 0.0)
    throw NotPhysical("non-positive determinant");
  return {1.0 / std::sqrt(detail::dd_to_double(d.det_sigma)),
          1.0 / std::sqrt(detail::dd_to_double(d.det_a)),
          1.0 / std::sqrt(detail::dd_to_double(d.det_b))};
}

Purities purities(const StandardForm& sf) {
  const InvariantDets d = sf_dets(sf);
  if (d.det_sigma.hi <= 0.0) throw NotPhysical("non-positive determinant");
  return {1.0 / std::sqrt(detail::dd_to_double(d.det_sigma)), 1.0 / sf.a, 1.0 / sf.b};
}

CovarianceMatrix apply(const SymplecticMatrix& s, const CovarianceMatrix& c) {
  Eigen::Matrix4d m = s.m * c.m() * s.m.transpose();
  m = ((m + m.transpose()) / 2.0).eval();
  return CovarianceMatrix::unchecked(m);
}

}  // namespace geof
