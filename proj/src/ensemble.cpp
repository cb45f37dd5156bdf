#include "geof/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace geof {

namespace {

void validate(const SweepConfig& cfg) {
  if (cfg.n_states < 1) throw InvalidParams("n_states must be >= 1");
  if (!(cfg.s_max > 1.0)) throw InvalidParams("s_max must be > 1");
  if (!(cfg.min_purity >= 0.0 && cfg.min_purity < 1.0))
    throw InvalidParams("min_purity must lie in [0, 1)");
  if (cfg.bins < 1) throw InvalidParams("bins must be >= 1");
}

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::uint64_t record_seed(std::uint64_t master_seed, long index) {
  // splitmix64 over the index-offset stream
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (std::uint64_t(index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SampledState sample_entangled(std::mt19937_64& rng, const SweepConfig& cfg) {
  validate(cfg);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SampledState out;
  for (long attempt = 0; attempt < 1000000; ++attempt) {
    const double s = 1.0 + (cfg.s_max - 1.0) * unit(rng);
    const double d = (s - 1.0) * (2.0 * unit(rng) - 1.0);
    const double g_lo = 2.0 * std::abs(d) + 1.0;
    const double g_hi = s * s - d * d;  // cap keeps purity off the floor
    const double g = g_lo + (g_hi - g_lo) * unit(rng);
    const double beta = 2.0 * unit(rng) - 1.0;

    if (1.0 / g < cfg.min_purity) {
      ++out.rejections;
      continue;
    }
    PurityParams p;
    p.mu_a = 1.0 / (s + d);
    p.mu_b = 1.0 / (s - d);
    p.mu = 1.0 / g;
    p.beta = beta;
    StandardForm sf;
    try {
      sf = from_purity_params(p);
    } catch (const InvalidParams&) {
      ++out.rejections;
      continue;
    }
    if (is_separable(sf)) {
      ++out.rejections;
      continue;
    }
    if (p.mu_a < p.mu_b) std::swap(p.mu_a, p.mu_b);  // match the a >= b ordering
    out.params = p;
    out.sf = sf;
    return out;
  }
  throw ExhaustedAttempts("sampler rejected 1e6 consecutive draws; check the configuration");
}

std::pair<double, double> relative_differences(double lower, double upper, double exact) {
  if (exact <= 1e-12)
    throw InvalidParams("relative differences undefined for exact EoF <= 1e-12");
  return {std::abs(exact - lower) / exact * 100.0, std::abs(exact - upper) / exact * 100.0};
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n != y.size() || n < 2) throw InvalidParams("spearman needs two equal vectors, n >= 2");
  auto ranks = [](const std::vector<double>& v) {
    const size_t m = v.size();
    std::vector<size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&v](size_t i, size_t j) { return v[i] < v[j]; });
    std::vector<double> r(m);
    size_t i = 0;
    while (i < m) {
      size_t j = i;
      while (j + 1 < m && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = (double(i) + double(j)) / 2.0 + 1.0;
      for (size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const std::vector<double> rx = ranks(x), ry = ranks(y);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

SweepResult run_sweep(const SweepConfig& cfg) {
  validate(cfg);
  SweepResult out;
  out.records.resize(cfg.n_states);

  // Inner solvers always run serially; parallelism lives at the record level.
  EofOptions eof_opts;
  eof_opts.exec = Execution::serial;

  auto compute = [&](long i) {
    std::mt19937_64 rng(record_seed(cfg.seed, i));
    const SampledState s = sample_entangled(rng, cfg);
    EnsembleRecord rec;
    rec.index = i;
    rec.params = s.params;
    rec.sf = s.sf;
    rec.mu = s.params.mu;
    rec.nu_gamma_minus = pt_spectrum(s.sf).nu_minus;
    const EofResult ex = eof_exact(s.sf, eof_opts);
    rec.r_minus = ex.r_minus;
    rec.r_plus = ex.r_plus;
    rec.lower = ex.lower;
    rec.upper = ex.upper;
    rec.exact = ex.exact;
    const auto deltas = relative_differences(ex.lower, ex.upper, ex.exact);
    rec.delta_minus = deltas.first;
    rec.delta_plus = deltas.second;
    out.records[i] = rec;
    return s.rejections;
  };

  long rejected = 0;
  if (cfg.exec == Execution::parallel && max_threads() > 1) {
    std::exception_ptr first_error;  // exceptions must not escape the omp region
#pragma omp parallel for schedule(dynamic) reduction(+ : rejected) num_threads(max_threads())
    for (long i = 0; i < cfg.n_states; ++i) {
      try {
        rejected += compute(i);
      } catch (...) {
#pragma omp critical
        if (!first_error) first_error = std::current_exception();
      }
    }
    if (first_error) std::rethrow_exception(first_error);
  } else {
    for (long i = 0; i < cfg.n_states; ++i) rejected += compute(i);
  }

  SweepSummary& sum = out.summary;
  sum.n_states = cfg.n_states;
  sum.rejected_draws = rejected;
  sum.bin_centers.resize(cfg.bins);
  sum.bin_counts.assign(cfg.bins, 0);
  sum.bin_mean_minus.assign(cfg.bins, 0.0);
  sum.bin_mean_plus.assign(cfg.bins, 0.0);
  for (int k = 0; k < cfg.bins; ++k) sum.bin_centers[k] = (k + 0.5) / cfg.bins;
  for (const EnsembleRecord& r : out.records) {
    int k = std::min<int>(cfg.bins - 1, int(r.mu * cfg.bins));
    sum.bin_counts[k] += 1;
    sum.bin_mean_minus[k] += r.delta_minus;
    sum.bin_mean_plus[k] += r.delta_plus;
    sum.mean_delta_minus += r.delta_minus;
    sum.mean_delta_plus += r.delta_plus;
  }
  sum.mean_delta_minus /= cfg.n_states;
  sum.mean_delta_plus /= cfg.n_states;
  sum.upper_closer = sum.mean_delta_plus <= sum.mean_delta_minus;

  std::vector<double> centers, mm, mp;
  for (int k = 0; k < cfg.bins; ++k) {
    if (sum.bin_counts[k] == 0) continue;
    sum.bin_mean_minus[k] /= sum.bin_counts[k];
    sum.bin_mean_plus[k] /= sum.bin_counts[k];
    centers.push_back(sum.bin_centers[k]);
    mm.push_back(sum.bin_mean_minus[k]);
    mp.push_back(sum.bin_mean_plus[k]);
  }
  if (centers.size() >= 2) {
    sum.spearman_minus = spearman(centers, mm);
    sum.spearman_plus = spearman(centers, mp);
  }

  if (!cfg.output_path.empty()) write_csv(out.records, cfg.output_path);
  return out;
}

std::string csv_header() {
  return "index,mu_a,mu_b,mu,beta,a,b,c1,c2,nu_gamma_minus,r_minus,r_plus,"
         "eof_lower,eof_exact,eof_upper,delta_minus_pct,delta_plus_pct";
}

std::string csv_row(const EnsembleRecord& r) {
  std::string row = std::to_string(r.index);
  for (double v : {r.params.mu_a, r.params.mu_b, r.params.mu, r.params.beta, r.sf.a, r.sf.b,
                   r.sf.c1, r.sf.c2, r.nu_gamma_minus, r.r_minus, r.r_plus, r.lower, r.exact,
                   r.upper, r.delta_minus, r.delta_plus}) {
    row += ',';
    row += fmt12(v);
  }
  return row;
}

void write_csv(const std::vector<EnsembleRecord>& records, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << csv_header() << '\n';
  for (const EnsembleRecord& r : records) f << csv_row(r) << '\n';
  if (!f.flush()) throw IoError("write failed: " + path);
}

std::vector<EnsembleRecord> read_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(f, line)) throw IoError("empty csv: " + path);
  if (line != csv_header()) throw InvalidParams("unexpected csv header in " + path);
  std::vector<EnsembleRecord> out;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != 17) throw InvalidParams("bad csv row in " + path);
    EnsembleRecord r;
    r.index = long(v[0]);
    r.params = {v[1], v[2], v[3], v[4]};
    r.sf = {v[5], v[6], v[7], v[8]};
    r.mu = v[3];
    r.nu_gamma_minus = v[9];
    r.r_minus = v[10];
    r.r_plus = v[11];
    r.lower = v[12];
    r.exact = v[13];
    r.upper = v[14];
    r.delta_minus = v[15];
    r.delta_plus = v[16];
    out.push_back(r);
  }
  return out;
}

void write_plot_data(const std::vector<EnsembleRecord>& records, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << "# mu delta_minus_pct\n";
  for (const EnsembleRecord& r : records) f << fmt12(r.mu) << ' ' << fmt12(r.delta_minus) << '\n';
  f << "\n\n# mu delta_plus_pct\n";
  for (const EnsembleRecord& r : records) f << fmt12(r.mu) << ' ' << fmt12(r.delta_plus) << '\n';
  if (!f.flush()) throw IoError("write failed: " + path);
}

}  // namespace geof
