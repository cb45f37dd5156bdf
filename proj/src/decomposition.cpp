#include "geof/decomposition.hpp"

#include <cmath>

#include "geof/detail/bound_core.hpp"
#include "geof/detail/dd.hpp"

namespace geof {

namespace detail {

BoundCore bound_core(const StandardForm& sf) {
  if (symplectic_spectrum(sf).nu_minus < 1.0 - kPhysicalTol)
    throw NotPhysical("standard form is not a physical state");
  if (is_separable(sf)) throw NotEntangled("state is separable (nu_Gamma_- >= 1)");

  const double a = sf.a, b = sf.b, c1 = sf.c1, c2 = sf.c2;

  // kappa^2 - lambda+ lambda- vanishes on pure states, so the whole chain
  // runs in compensated arithmetic: plain double loses ~8 digits there.
  const Dd ab = two_prod(a, b);
  const Dd q1 = dd_sub(ab, two_prod(c1, c1));
  const Dd q2 = dd_sub(ab, two_prod(c2, c2));
  const Dd det_sigma = dd_mul(q1, q2);
  const Dd amb = two_sum(a, -b);
  const Dd kappa = dd_sub(dd_add(dd_mul_d(det_sigma, 2.0), dd_from(2.0)), dd_mul(amb, amb));
  const Dd u = two_sum(a, b);
  // lambda+- = (a+b +- 2c1)(a+b -+ 2c2), the factored form of
  // detA + detB - 2 detC + 2[(ab - c1 c2) +- (c1 - c2)(a + b)]
  const Dd lam_p = dd_mul(dd_add(u, dd_from(2.0 * c1)), dd_sub(u, dd_from(2.0 * c2)));
  const Dd lam_m = dd_mul(dd_sub(u, dd_from(2.0 * c1)), dd_add(u, dd_from(2.0 * c2)));
  if (lam_m.hi <= 0.0 || lam_p.hi <= 0.0)
    throw NumericalDomain("lambda factors not positive");

  Dd disc = dd_sub(dd_mul(kappa, kappa), dd_mul(lam_p, lam_m));
  if (disc.hi < -1e-9) throw NumericalDomain("kappa^2 - lambda+ lambda- below tolerance");
  if (disc.hi < 0.0) disc = dd_from(0.0);
  const Dd den = dd_add(kappa, dd_sqrt(disc));
  const Dd x_minus = dd_div(lam_p, den);
  const Dd x_plus = dd_div(den, lam_m);

  BoundCore core;
  core.r_minus = 0.25 * dd_log(x_minus);
  core.x_minus = dd_to_double(x_minus);
  core.x_plus = dd_to_double(x_plus);
  core.det_sigma = dd_to_double(det_sigma);
  core.pure = std::abs(core.det_sigma - 1.0) <= 1e-9;
  // gamma = (det sigma + 1 - Delta)/2 = (1 - nu-^2)(1 - nu+^2)/2
  const Dd delta =
      dd_add(dd_add(two_prod(a, a), two_prod(b, b)), dd_mul_d(two_prod(c1, c2), 2.0));
  core.gamma = 0.5 * dd_to_double(dd_sub(dd_add(det_sigma, dd_from(1.0)), delta));
  core.scalars.kappa = dd_to_double(kappa);
  core.scalars.lambda_plus = dd_to_double(lam_p);
  core.scalars.lambda_minus = dd_to_double(lam_m);
  if (!std::isfinite(core.r_minus)) throw NumericalDomain("r_minus not finite");
  return core;
}

namespace {

double chi_of(double r_prime, double r1, double r2) {
  const double t = std::tanh(r_prime);
  const double t2 = t * t;
  const double num = std::exp(-2.0 * r1) + std::exp(-2.0 * r2) * t2;
  const double den = std::exp(2.0 * r1) + std::exp(2.0 * r2) * t2;
  return std::sqrt(num / den);
}

}  // namespace

LocalSqueezings local_squeezings_at(const StandardForm& sf, const BoundCore& core,
                                    double r_prime) {
  if (r_prime < core.r_minus - 1e-12)
    throw NumericalDomain("r_prime below r_minus");
  const bool at_boundary = r_prime <= core.r_minus;
  const double rp = at_boundary ? core.r_minus : r_prime;

  const double a = sf.a, b = sf.b, c1 = sf.c1, c2 = sf.c2;
  const double ds = core.det_sigma;
  const double sh2 = std::sinh(2.0 * rp);
  const double ch2 = std::cosh(2.0 * rp);

  LocalSqueezings out;
  LocalSqueezingScalars& sc = out.scalars;
  sc.xi_plus = a * b - c1 * c1 + 1.0;
  sc.xi_minus = a * b - c1 * c1 - 1.0;
  sc.theta = (a * b - c1 * c1) * c2 + c1;
  sc.omega = (a - b) * ((a + b) * ch2 + (c2 - c1) * sh2);
  sc.gamma = core.gamma;
  const double q = (a + b) * (a + b) - 4.0 * c1 * c2;
  sc.zeta1 = a * a * (2.0 * b * b - 1.0) - 2.0 * a * b * (c1 * c1 + c2 * c2 - 1.0) -
             b * b + 2.0 * c1 * c1 * c2 * c2 + 2.0;
  // cosh(4r') written as 1 + 2 sinh^2(2r') so zeta1 + zeta2 stays accurate
  // as r' -> r-, where the sum crosses zero
  sc.zeta2 = 2.0 * (a + b) * (c1 - c2) * std::sinh(4.0 * rp) - q - 2.0 * sh2 * sh2 * q;

  if (core.pure) {
    // pure states admit exactly one decomposition: the TMSV itself
    out.r1 = 0.0;
    out.r2 = 0.0;
    sc.chi = 1.0;
    return out;
  }

  // radicand gamma (zeta1 + zeta2) in the factored form; exactly zero on
  // the r' = r- boundary
  const double x = at_boundary ? core.x_minus : std::exp(4.0 * rp);
  double rad = 0.0;
  if (!at_boundary) {
    rad = core.gamma *
          (-core.scalars.lambda_minus * (x - core.x_minus) * (x - core.x_plus) / (2.0 * x));
    const double rad_scale =
        1.0 + std::abs(core.gamma) * core.scalars.lambda_minus * core.x_plus * x;
    if (rad < -1e-9 * rad_scale) throw NumericalDomain("local squeezing radicand negative");
    rad = std::max(rad, 0.0);
  }
  const double root = std::sqrt(rad);

  const double n1 = (a - b) * sc.xi_plus - 2.0 * sc.theta * sh2 - (a + b) * sc.xi_minus * ch2;
  const double d1 = sc.omega - ds + 1.0 + root;
  const double n2 = (a - b) * sc.xi_plus + 2.0 * sc.theta * sh2 + (a + b) * sc.xi_minus * ch2;
  const double d2 = sc.omega + ds - 1.0 + root;
  const double ratio1 = n1 / d1;
  const double ratio2 = n2 / d2;
  if (!(ratio1 > 0.0) || !(ratio2 > 0.0) || !std::isfinite(ratio1) || !std::isfinite(ratio2))
    throw NumericalDomain("log argument of local squeezing not positive");
  out.r1 = 0.5 * std::log(ratio1);
  out.r2 = 0.5 * std::log(ratio2);
  sc.chi = chi_of(rp, out.r1, out.r2);
  return out;
}

}  // namespace detail

LowerBoundResult r_lower(const StandardForm& sf) {
  const detail::BoundCore core = detail::bound_core(sf);
  return {core.r_minus, core.scalars};
}

LocalSqueezings local_squeezings(const StandardForm& sf, double r_prime) {
  return detail::local_squeezings_at(sf, detail::bound_core(sf), r_prime);
}

double k_of(double r_prime, double r1, double r2) {
  const double t = std::tanh(r_prime);
  const double t2 = t * t;
  const double num = std::exp(-2.0 * r1) + std::exp(-2.0 * r2) * t2;
  const double den = std::exp(2.0 * r1) + std::exp(2.0 * r2) * t2;
  const double chi = std::sqrt(num / den);
  const double sh = std::sinh(r_prime);
  const double ch = std::cosh(r_prime);
  double arg = chi * (std::exp(2.0 * r2) * sh * sh + std::exp(2.0 * r1) * ch * ch);
  if (arg < 1.0 - 1e-12) throw NumericalDomain("acosh argument below 1");
  arg = std::max(arg, 1.0);
  return 0.5 * std::acosh(arg);
}

SymplecticMatrix decomposition_matrix(const SymplecticDecomposition& dec) {
  if (dec.r < 0.0) throw InvalidParams("two-mode squeezing of a decomposition must be >= 0");
  const SymplecticMatrix s2 = two_mode_squeezer(dec.r);
  const SymplecticMatrix l = local_squeezer(dec.r1, dec.r2);
  SymplecticMatrix s;
  s.m = dec.direction == Direction::forward ? (l.m * s2.m).eval() : (s2.m * l.m).eval();
  return s;
}

CovarianceMatrix assemble_pure(const SymplecticDecomposition& dec) {
  const SymplecticMatrix s = decomposition_matrix(dec);
  Eigen::Matrix4d m = s.m * s.m.transpose();
  m = ((m + m.transpose()) / 2.0).eval();
  return CovarianceMatrix::unchecked(m);
}

Residual residual(const StandardForm& sf, const SymplecticDecomposition& dec) {
  Residual res;
  res.phi = expand(sf).m() - assemble_pure(dec).m();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(res.phi, Eigen::EigenvaluesOnly);
  res.min_eigenvalue = es.eigenvalues().minCoeff();
  return res;
}

CovarianceMatrix classical_core(const StandardForm& sf, const SymplecticDecomposition& dec) {
  const SymplecticMatrix s = decomposition_matrix(dec);
  const auto lu = s.m.partialPivLu();
  const Eigen::Matrix4d half = lu.solve(expand(sf).m());
  Eigen::Matrix4d core = lu.solve(half.transpose()).transpose();
  if (!core.allFinite()) throw SingularTransform("decomposition matrix not invertible");
  core = ((core + core.transpose()) / 2.0).eval();
  return CovarianceMatrix::unchecked(core);
}

}  // namespace geof
