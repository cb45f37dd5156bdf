#include "geof/eof.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "geof/detail/bound_core.hpp"

namespace geof {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPsdTol = -1e-9;

// sigma - L(r1,r2) S2(2r) L(r1,r2)^T decouples into an x-sector {0,2} and a
// p-sector {1,3}; the minimum eigenvalue comes from two closed-form 2x2
// problems instead of a 4x4 solver.
double residual_min_eig(const StandardForm& sf, double r, double r1, double r2) {
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  const double e1 = std::exp(r1), e2 = std::exp(r2);

  const double x00 = sf.a - ch * e1 * e1;
  const double x11 = sf.b - ch * e2 * e2;
  const double x01 = sf.c1 - sh * e1 * e2;
  const double p00 = sf.a - ch / (e1 * e1);
  const double p11 = sf.b - ch / (e2 * e2);
  const double p01 = sf.c2 + sh / (e1 * e2);

  const double ex = 0.5 * (x00 + x11) - std::hypot(0.5 * (x00 - x11), x01);
  const double ep = 0.5 * (p00 + p11) - std::hypot(0.5 * (p00 - p11), p01);
  return std::min(ex, ep);
}

// Deterministic Nelder-Mead maximization of f over (r1, r2).
template <typename F>
double nelder_mead_max(F&& f, double x0, double y0, double h, int max_iter) {
  using P = std::array<double, 2>;
  std::array<P, 3> p = {P{x0, y0}, P{x0 + h, y0}, P{x0, y0 + h}};
  std::array<double, 3> v;
  for (int i = 0; i < 3; ++i) v[i] = -f(p[i][0], p[i][1]);

  auto order = [&] {
    if (v[0] > v[1]) { std::swap(v[0], v[1]); std::swap(p[0], p[1]); }
    if (v[1] > v[2]) { std::swap(v[1], v[2]); std::swap(p[1], p[2]); }
    if (v[0] > v[1]) { std::swap(v[0], v[1]); std::swap(p[0], p[1]); }
  };
  for (int it = 0; it < max_iter; ++it) {
    order();
    const double size = std::max(std::abs(p[1][0] - p[0][0]) + std::abs(p[1][1] - p[0][1]),
                                 std::abs(p[2][0] - p[0][0]) + std::abs(p[2][1] - p[0][1]));
    if (size < 1e-12) break;
    const P cen = {0.5 * (p[0][0] + p[1][0]), 0.5 * (p[0][1] + p[1][1])};
    const P refl = {cen[0] + (cen[0] - p[2][0]), cen[1] + (cen[1] - p[2][1])};
    const double vr = -f(refl[0], refl[1]);
    if (vr < v[0]) {
      const P exp_ = {cen[0] + 2.0 * (cen[0] - p[2][0]), cen[1] + 2.0 * (cen[1] - p[2][1])};
      const double ve = -f(exp_[0], exp_[1]);
      if (ve < vr) { p[2] = exp_; v[2] = ve; } else { p[2] = refl; v[2] = vr; }
    } else if (vr < v[1]) {
      p[2] = refl; v[2] = vr;
    } else {
      const P con = {cen[0] + 0.5 * (p[2][0] - cen[0]), cen[1] + 0.5 * (p[2][1] - cen[1])};
      const double vc = -f(con[0], con[1]);
      if (vc < v[2]) {
        p[2] = con; v[2] = vc;
      } else {
        for (int i = 1; i < 3; ++i) {
          p[i] = {p[0][0] + 0.5 * (p[i][0] - p[0][0]), p[0][1] + 0.5 * (p[i][1] - p[0][1])};
          v[i] = -f(p[i][0], p[i][1]);
        }
      }
    }
  }
  order();
  return -v[0];
}

std::vector<double> local_grid_points(int n_local, double range) {
  int n = n_local | 1;  // odd, so 0 is a grid point
  if (n < 3) n = 3;
  std::vector<double> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = -range + 2.0 * range * i / (n - 1);
  pts[n / 2] = 0.0;
  return pts;
}

// max over (r1, r2) of the residual minimum eigenvalue at fixed r:
// coarse scan of the grid restricted to the diagonal-feasibility box,
// then a Nelder-Mead polish.
double inner_best(const StandardForm& sf, double r, const std::vector<double>& loc) {
  const double ch = std::cosh(2.0 * r);
  if (sf.a < ch || sf.b < ch) return -kInf;
  const double lim1 = 0.5 * std::log(sf.a / ch);
  const double lim2 = 0.5 * std::log(sf.b / ch);

  auto candidates = [&loc](double lim) {
    std::vector<double> c;
    c.push_back(0.0);
    if (lim > 0.0) {
      c.push_back(-0.995 * lim);
      c.push_back(0.995 * lim);
    }
    for (double p : loc)
      if (p != 0.0 && std::abs(p) <= lim) c.push_back(p);
    return c;
  };
  const std::vector<double> c1s = candidates(lim1);
  const std::vector<double> c2s = candidates(lim2);

  double best = -kInf, b1 = 0.0, b2 = 0.0;
  for (double r1 : c1s)
    for (double r2 : c2s) {
      const double v = residual_min_eig(sf, r, r1, r2);
      if (v > best) { best = v; b1 = r1; b2 = r2; }
    }
  const double spacing = loc.size() > 1 ? loc[1] - loc[0] : 1.0;
  const double h = std::max(1e-9, std::min({0.5 * spacing, 0.25 * (lim1 + lim2) + 1e-12, 0.05}));
  const double polished = nelder_mead_max(
      [&](double r1, double r2) { return residual_min_eig(sf, r, r1, r2); }, b1, b2, h, 200);
  return std::max(best, polished);
}

template <typename Feas>
long first_feasible(long n, Execution exec, Feas&& feasible) {
  if (exec == Execution::serial || max_threads() <= 1) {
    for (long i = 0; i < n; ++i)
      if (feasible(i)) return i;
    return -1;
  }
  const long chunk = 4L * max_threads();
  std::vector<char> flags;
  for (long base = 0; base < n; base += chunk) {
    const long end = std::min(base + chunk, n);
    flags.assign(end - base, 0);
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (long j = 0; j < end - base; ++j) flags[j] = feasible(base + j) ? 1 : 0;
    for (long j = 0; j < end - base; ++j)
      if (flags[j]) return base + j;
  }
  return -1;
}

}  // namespace

double entropy_of_entanglement(double r) {
  r = std::abs(r);
  if (r == 0.0) return 0.0;
  const double c = std::cosh(r);
  const double s = std::sinh(r);
  const double c2 = c * c;
  const double s2 = s * s;
  double h = c2 * std::log2(c2);
  if (s2 > 0.0) h -= s2 * std::log2(s2);
  return h;
}

double eof_lower(const StandardForm& sf) {
  if (is_separable(sf)) return 0.0;
  return entropy_of_entanglement(detail::bound_core(sf).r_minus);
}

double eof_upper(const StandardForm& sf) {
  const detail::BoundCore core = detail::bound_core(sf);
  const LocalSqueezings ls = detail::local_squeezings_at(sf, core, core.r_minus);
  return entropy_of_entanglement(k_of(core.r_minus, ls.r1, ls.r2));
}

EofResult eof_exact(const StandardForm& sf, const EofOptions& opts) {
  EofResult res;
  if (is_separable(sf)) {
    res.converged = true;
    return res;
  }
  if (opts.grid_points < 2) throw InvalidParams("grid_points must be at least 2");

  const detail::BoundCore core = detail::bound_core(sf);
  res.r_minus = core.r_minus;

  long evals = 0;
  auto objective = [&sf, &core](double rp) -> double {
    try {
      const LocalSqueezings ls = detail::local_squeezings_at(sf, core, rp);
      return entropy_of_entanglement(k_of(rp, ls.r1, ls.r2));
    } catch (const NumericalDomain&) {
      return kInf;  // infeasible interior point; optimizer stays total
    }
  };

  const LocalSqueezings ls_m = detail::local_squeezings_at(sf, core, core.r_minus);
  res.r_plus = k_of(core.r_minus, ls_m.r1, ls_m.r2);
  res.lower = entropy_of_entanglement(core.r_minus);
  res.upper = entropy_of_entanglement(res.r_plus);
  ++evals;

  if (res.r_plus - res.r_minus <= opts.tol_r) {
    res.exact = res.lower;
    res.r_opt = res.r_minus;
    res.evaluations = evals;
    res.converged = true;
    return res;
  }

  const int n = opts.grid_points;
  std::vector<double> xs(n), fs(n);
  const double span = res.r_plus - res.r_minus;
  for (int i = 0; i < n; ++i) xs[i] = res.r_minus + span * i / (n - 1);
  xs.front() = res.r_minus;
  xs.back() = res.r_plus;

  if (opts.exec == Execution::parallel && max_threads() > 1) {
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (int i = 0; i < n; ++i) fs[i] = objective(xs[i]);
  } else {
    for (int i = 0; i < n; ++i) fs[i] = objective(xs[i]);
  }
  evals += n;

  int best = 0;
  for (int i = 1; i < n; ++i)
    if (fs[i] < fs[best]) best = i;  // ties stay at the smaller r'

  double best_f = fs[best];
  double best_r = xs[best];
  auto track = [&best_f, &best_r](double f, double r) {
    if (f < best_f || (f == best_f && r < best_r)) { best_f = f; best_r = r; }
  };

  // golden-section refinement inside the bracketing triple
  double lo = xs[std::max(best - 1, 0)];
  double hi = xs[std::min(best + 1, n - 1)];
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  evals += 2;
  track(f1, x1);
  track(f2, x2);
  int iter = 0;
  while (hi - lo > opts.tol_r && iter < 200) {
    if (f1 <= f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = objective(x1);
      track(f1, x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = objective(x2);
      track(f2, x2);
    }
    ++evals;
    ++iter;
  }
  if (hi - lo > opts.tol_r)
    throw NoConvergence("golden-section bracket failed to shrink below tol_r");

  res.exact = best_f;
  res.r_opt = best_r;
  res.evaluations = evals;
  res.converged = true;

  // validity re-check of the reported optimum via the PSD residual
  const LocalSqueezings ls_o = detail::local_squeezings_at(sf, core, res.r_opt);
  const Residual check =
      residual(sf, {Direction::reverse, res.r_opt, ls_o.r1, ls_o.r2});
  if (check.min_eigenvalue < -1e-6)
    throw NumericalDomain("optimal decomposition failed the PSD residual check");
  return res;
}

double eof_oracle(const StandardForm& sf, const OracleGrid& grid) {
  if (is_separable(sf)) return 0.0;  // r = 0 is feasible
  if (grid.n_r < 2 || grid.n_local < 1 || grid.range_local <= 0.0)
    throw InvalidParams("oracle grid is degenerate");

  const detail::BoundCore core = detail::bound_core(sf);
  const LocalSqueezings ls_m = detail::local_squeezings_at(sf, core, core.r_minus);
  const double r_hi = k_of(core.r_minus, ls_m.r1, ls_m.r2);

  constexpr double pad = 1e-9;
  const double lo = std::max(core.r_minus - pad, 0.0);
  const double hi = r_hi + pad;
  const std::vector<double> loc = local_grid_points(grid.n_local, grid.range_local);

  const long n = grid.n_r;
  std::vector<double> rs(n);
  for (long i = 0; i < n; ++i) rs[i] = lo + (hi - lo) * i / (n - 1);

  auto feasible = [&](double r) { return inner_best(sf, r, loc) >= kPsdTol; };
  const long idx = first_feasible(n, grid.exec, [&](long i) { return feasible(rs[i]); });
  if (idx < 0)
    throw NoFeasiblePoint("no PSD-feasible decomposition found on the oracle grid");
  if (idx == 0) return entropy_of_entanglement(rs[0]);

  // bisect the bracketing cell; the refinement resolution scales with both
  // grid densities, so the result stays grid-limited and densifying the grid
  // tightens it accordingly
  double rlo = rs[idx - 1], rhi = rs[idx];
  const double target =
      std::max((hi - lo) / (n - 1) * 8.0 / double(loc.size()), 1e-12);
  while (rhi - rlo > target) {
    const double mid = 0.5 * (rlo + rhi);
    if (feasible(mid)) rhi = mid; else rlo = mid;
  }
  return entropy_of_entanglement(rhi);
}

ConjectureReport conjecture_check(const StandardForm& sf) {
  const SymplecticSpectrum sp = symplectic_spectrum(sf);
  if (std::abs(sp.nu_minus - 1.0) > 1e-6)
    throw NotApplicable("state is not in the nu- = 1 (beta = -1) family");
  if (is_separable(sf)) throw NotApplicable("state is separable");

  const detail::BoundCore core = detail::bound_core(sf);
  const LocalSqueezings ls = detail::local_squeezings_at(sf, core, core.r_minus);
  ConjectureReport rep;
  rep.applicable = std::abs(ls.r1 - ls.r2) <= 0.5 * std::log(sp.nu_plus);
  const double upper = entropy_of_entanglement(k_of(core.r_minus, ls.r1, ls.r2));
  const EofResult ex = eof_exact(sf);
  rep.gap = std::abs(upper - ex.exact);
  rep.tight = rep.gap <= 1e-6;
  return rep;
}

}  // namespace geof
