// Compensated (double-double) arithmetic for the few expressions whose
// plain-double evaluation cancels catastrophically near pure states,
// e.g. kappa^2 - lambda+ lambda- which vanishes there. Error-free products
// use std::fma.
#pragma once

#include <cmath>

namespace geof::detail {

struct Dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline Dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline Dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Dd dd_add(Dd a, Dd b) {
  Dd s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  Dd r = two_sum(s.hi, s.lo);
  return r;
}

inline Dd dd_neg(Dd a) { return {-a.hi, -a.lo}; }

inline Dd dd_sub(Dd a, Dd b) { return dd_add(a, dd_neg(b)); }

inline Dd dd_mul(Dd a, Dd b) {
  Dd p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  Dd r = two_sum(p.hi, p.lo);
  return r;
}

inline Dd dd_from(double a) { return {a, 0.0}; }

inline Dd dd_mul_d(Dd a, double b) { return dd_mul(a, dd_from(b)); }

inline Dd dd_div(Dd a, Dd b) {
  double q0 = a.hi / b.hi;
  Dd r = dd_sub(a, dd_mul_d(b, q0));
  double q1 = r.hi / b.hi;
  Dd q = two_sum(q0, q1);
  return q;
}

inline Dd dd_sqrt(Dd a) {
  if (a.hi <= 0.0) return {0.0, 0.0};
  double s = std::sqrt(a.hi);
  // one Newton step on the residual
  Dd s2 = two_prod(s, s);
  Dd res = dd_sub(a, s2);
  double corr = res.hi / (2.0 * s);
  return two_sum(s, corr);
}

// log of a dd value, returned as plain double (relative lo/hi correction)
inline double dd_log(Dd a) { return std::log(a.hi) + a.lo / a.hi; }

inline double dd_to_double(Dd a) { return a.hi + a.lo; }

}  // namespace geof::detail
