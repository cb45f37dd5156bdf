// Random entangled-state generation, the bound-gap-vs-purity ensemble sweep
// and its CSV/plot-data output.
//
// Determinism contract: identical (seed, config, build) produce identical
// records. The random stream is split per record from the master seed, so
// serial and parallel execution give byte-identical output.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "geof/eof.hpp"
#include "geof/execution.hpp"
#include "geof/state.hpp"

namespace geof {

struct SweepConfig {
  long n_states = 2000;
  double s_max = 5.0;
  std::uint64_t seed = 0;
  double min_purity = 0.0;  // draws with mu below this are rejected
  std::string output_path;  // empty: do not write
  int bins = 20;            // purity histogram bins over (0, 1]
  Execution exec = Execution::parallel;
};

struct EnsembleRecord {
  long index = 0;
  PurityParams params;
  StandardForm sf;
  double mu = 0.0;
  double nu_gamma_minus = 0.0;
  double r_minus = 0.0;
  double r_plus = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double exact = 0.0;
  double delta_minus = 0.0;  // percent
  double delta_plus = 0.0;   // percent
};

struct SweepSummary {
  long n_states = 0;
  long rejected_draws = 0;
  double mean_delta_minus = 0.0;
  double mean_delta_plus = 0.0;
  bool upper_closer = false;  // mean(delta+) <= mean(delta-)
  double spearman_minus = 0.0;  // bin centers vs bin means, non-empty bins
  double spearman_plus = 0.0;
  std::vector<double> bin_centers;
  std::vector<long> bin_counts;
  std::vector<double> bin_mean_minus;
  std::vector<double> bin_mean_plus;
};

struct SweepResult {
  std::vector<EnsembleRecord> records;
  SweepSummary summary;
};

struct SampledState {
  PurityParams params;
  StandardForm sf;
  long rejections = 0;
};

/// Per-record generator seed derived from the master seed (splitmix64).
std::uint64_t record_seed(std::uint64_t master_seed, long index);

/// Rejection sampling: s ~ U[1, s_max], d ~ U[-(s-1), s-1],
/// g ~ U[2|d|+1, s^2 - d^2], beta ~ U[-1, 1]; mapped through
/// from_purity_params and rejected on invalid parameters, low purity,
/// unphysical or separable results. Throws ExhaustedAttempts after 1e6
/// rejections.
SampledState sample_entangled(std::mt19937_64& rng, const SweepConfig& cfg);

/// delta-+ = |exact - bound| / exact * 100. Throws on exact <= 1e-12.
std::pair<double, double> relative_differences(double lower, double upper, double exact);

/// Computes n_states records (optionally in parallel), writes them to
/// cfg.output_path when set, and aggregates the per-purity-bin summary.
SweepResult run_sweep(const SweepConfig& cfg);

/// Spearman rank correlation (average ranks on ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

std::string csv_header();
std::string csv_row(const EnsembleRecord& rec);
void write_csv(const std::vector<EnsembleRecord>& records, const std::string& path);
std::vector<EnsembleRecord> read_csv(const std::string& path);

/// Gnuplot-friendly export: two index blocks of (mu, delta) pairs, the
/// lower-bound differences first.
void write_plot_data(const std::vector<EnsembleRecord>& records, const std::string& path);

}  // namespace geof
