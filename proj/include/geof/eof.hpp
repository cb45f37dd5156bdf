// Entanglement of formation for two-mode Gaussian states: the entropy of
// entanglement, the analytical lower/upper bounds, the exact value via
// single-parameter minimization of H(k(r')) over r' in [r-, r+], and an
// independent brute-force oracle driven purely by PSD feasibility checks.
//
// All results are in ebits (base-2 entropy). Grid evaluations inside
// eof_exact and eof_oracle are independent; the reduction is deterministic
// regardless of evaluation order, with ties broken toward smaller r'.
#pragma once

#include "geof/decomposition.hpp"
#include "geof/execution.hpp"
#include "geof/state.hpp"

namespace geof {

struct EofResult {
  double lower = 0.0;
  double upper = 0.0;
  double exact = 0.0;
  double r_minus = 0.0;
  double r_plus = 0.0;
  double r_opt = 0.0;
  long evaluations = 0;
  bool converged = false;
};

struct EofOptions {
  int grid_points = 2000;
  double tol_r = 1e-10;
  Execution exec = Execution::parallel;
};

struct OracleGrid {
  int n_r = 400;
  int n_local = 120;       // forced odd internally so the grid contains 0
  double range_local = 2.5;
  Execution exec = Execution::parallel;
};

struct ConjectureReport {
  bool applicable = false;
  bool tight = false;
  double gap = 0.0;
};

/// cosh^2 r log2 cosh^2 r - sinh^2 r log2 sinh^2 r, the reduced-state
/// entropy of a two-mode squeezed vacuum. Even in r, zero at r = 0,
/// strictly increasing for r > 0.
double entropy_of_entanglement(double r);

/// H(r-); zero for separable states by convention.
double eof_lower(const StandardForm& sf);

/// H(k(r-)) with the closed-form local squeezings at r-. Throws
/// NotEntangled for separable inputs.
double eof_upper(const StandardForm& sf);

/// Minimizes H(k(r')) over r' in [r-, r+] by a uniform coarse grid plus
/// golden-section refinement of the best bracketing triple. Separable
/// inputs short-circuit to an all-zero result.
EofResult eof_exact(const StandardForm& sf, const EofOptions& opts = {});

/// Independent oracle: smallest H(r) over forward decompositions
/// (r, r1, r2) whose residual expand(sf) - assemble_pure(...) stays PSD
/// (min eigenvalue >= -1e-9). Feasibility is decided by eigenvalue checks
/// alone; the closed forms above only size the search window.
double eof_oracle(const StandardForm& sf, const OracleGrid& grid = {});

/// Diagnostic for the beta = -1 (nu- = 1) family: whether the conjectured
/// tightness condition |r1' - r2'| <= (1/2) ln nu+ holds at r- and whether
/// the upper bound actually matches the exact value. Never asserts.
ConjectureReport conjecture_check(const StandardForm& sf);

}  // namespace geof
