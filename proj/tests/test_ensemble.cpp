#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "geof/ensemble.hpp"
#include "test_helpers.hpp"

using namespace geof;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = (std::filesystem::temp_directory_path() / name).string();
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("sample_entangled: deterministic given the seed") {
  SweepConfig cfg;
  std::mt19937_64 a(record_seed(42, 0)), b(record_seed(42, 0));
  const SampledState s1 = sample_entangled(a, cfg);
  const SampledState s2 = sample_entangled(b, cfg);
  CHECK(s1.sf.a == s2.sf.a);
  CHECK(s1.sf.b == s2.sf.b);
  CHECK(s1.sf.c1 == s2.sf.c1);
  CHECK(s1.sf.c2 == s2.sf.c2);
  CHECK(s1.params.beta == s2.params.beta);
}

TEST_CASE("sample_entangled: every state is entangled and physical") {
  SweepConfig cfg;
  std::mt19937_64 rng(record_seed(7, 3));
  for (int i = 0; i < 200; ++i) {
    const SampledState s = sample_entangled(rng, cfg);
    CHECK_FALSE(is_separable(s.sf));
    CHECK(pt_spectrum(s.sf).nu_minus < 1.0 - 1e-9);
    CHECK(symplectic_spectrum(s.sf).nu_minus >= 1.0 - 1e-9);
    CHECK(s.sf.a >= s.sf.b);
    CHECK(s.sf.c1 >= std::abs(s.sf.c2));
  }
}

TEST_CASE("sample_entangled: purity spread is not degenerate") {
  SweepConfig cfg;
  std::mt19937_64 rng(record_seed(11, 0));
  std::vector<int> hist(20, 0);
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const SampledState s = sample_entangled(rng, cfg);
    const double mu = s.params.mu;
    CHECK(mu > 0.0);
    CHECK(mu <= 1.0);
    hist[std::min(19, int(mu * 20))] += 1;
  }
  for (int c : hist) CHECK(c <= n * 9 / 10);  // no single bin holds > 90%
}

TEST_CASE("sample_entangled: min_purity is honored") {
  SweepConfig cfg;
  cfg.min_purity = 0.6;
  std::mt19937_64 rng(record_seed(13, 5));
  for (int i = 0; i < 30; ++i) {
    const SampledState s = sample_entangled(rng, cfg);
    CHECK(s.params.mu >= 0.6);
  }
}

TEST_CASE("relative_differences: arithmetic and guards") {
  const auto [dm0, dp0] = relative_differences(0.5, 0.7, 0.5);
  CHECK(dm0 == 0.0);
  CHECK(dp0 == doctest::Approx(40.0));
  const auto [dm1, dp1] = relative_differences(0.9, 1.1, 1.0);
  CHECK(dm1 == doctest::Approx(10.0));
  CHECK(dp1 == doctest::Approx(10.0).epsilon(1e-9));
  CHECK_THROWS_AS((void)relative_differences(0.0, 0.0, 0.0), InvalidParams);
}

TEST_CASE("relative_differences: zero for TMSV bounds") {
  for (double r : {0.3, 1.2}) {
    const EofResult ex = eof_exact(tmsv_standard_form(r));
    const auto [dm, dp] = relative_differences(ex.lower, ex.upper, ex.exact);
    CHECK(dm < 1e-7);
    CHECK(dp < 1e-7);
  }
}

TEST_CASE("run_sweep: csv contract and determinism") {
  TempFile out1("geof_sweep_test1.csv"), out2("geof_sweep_test2.csv");
  SweepConfig cfg;
  cfg.n_states = 60;
  cfg.seed = 7;
  cfg.output_path = out1.path;
  const SweepResult r1 = run_sweep(cfg);
  cfg.output_path = out2.path;
  const SweepResult r2 = run_sweep(cfg);

  const std::string text1 = slurp(out1.path), text2 = slurp(out2.path);
  CHECK(text1 == text2);  // byte-identical on the same seed
  CHECK(text1.substr(0, text1.find('\n')) == csv_header());
  CHECK(std::count(text1.begin(), text1.end(), '\n') == 61);  // header + rows

  for (const EnsembleRecord& rec : r1.records) {
    CHECK(rec.lower - 1e-9 <= rec.exact);
    CHECK(rec.exact <= rec.upper + 1e-9);
    CHECK(rec.delta_minus >= 0.0);
    CHECK(rec.delta_plus >= 0.0);
    CHECK(rec.exact > 0.0);
  }
}

TEST_CASE("run_sweep: csv round-trips at 12 significant digits") {
  TempFile out("geof_sweep_roundtrip.csv");
  SweepConfig cfg;
  cfg.n_states = 25;
  cfg.seed = 99;
  cfg.output_path = out.path;
  const SweepResult r = run_sweep(cfg);
  const std::vector<EnsembleRecord> parsed = read_csv(out.path);
  REQUIRE(parsed.size() == r.records.size());
  for (size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].index == r.records[i].index);
    const auto close = [](double x, double y) {
      return std::abs(x - y) <= 1e-11 * std::max({std::abs(x), std::abs(y), 1e-300});
    };
    CHECK(close(parsed[i].sf.a, r.records[i].sf.a));
    CHECK(close(parsed[i].sf.c2, r.records[i].sf.c2));
    CHECK(close(parsed[i].exact, r.records[i].exact));
    CHECK(close(parsed[i].delta_plus, r.records[i].delta_plus));
    // and a full re-serialization check
    CHECK(csv_row(parsed[i]) == csv_row(r.records[i]));
  }
}

TEST_CASE("run_sweep: summary fields") {
  SweepConfig cfg;
  cfg.n_states = 150;
  cfg.seed = 3;
  const SweepResult r = run_sweep(cfg);
  CHECK(r.summary.n_states == 150);
  CHECK(r.summary.mean_delta_minus >= 0.0);
  CHECK(r.summary.mean_delta_plus >= 0.0);
  CHECK(r.summary.upper_closer ==
        (r.summary.mean_delta_plus <= r.summary.mean_delta_minus));
  long binned = 0;
  for (long c : r.summary.bin_counts) binned += c;
  CHECK(binned == 150);
}

TEST_CASE("run_sweep: config validation") {
  SweepConfig cfg;
  cfg.n_states = 0;
  CHECK_THROWS_AS((void)run_sweep(cfg), InvalidParams);
  cfg.n_states = 1;
  cfg.s_max = 1.0;
  CHECK_THROWS_AS((void)run_sweep(cfg), InvalidParams);
  cfg.s_max = 5.0;
  cfg.min_purity = 1.0;
  CHECK_THROWS_AS((void)run_sweep(cfg), InvalidParams);
  cfg.min_purity = 0.0;
  cfg.output_path = "/nonexistent-dir/geof.csv";
  CHECK_THROWS_AS((void)run_sweep(cfg), IoError);
}

TEST_CASE("run_sweep: high-purity ensembles have faithful bounds") {
  SweepConfig broad, pure;
  broad.n_states = pure.n_states = 40;
  broad.seed = pure.seed = 17;
  pure.min_purity = 0.8;
  const SweepResult rb = run_sweep(broad);
  const SweepResult rp = run_sweep(pure);
  for (const EnsembleRecord& rec : rp.records) CHECK(rec.mu >= 0.8);
  CHECK(rp.summary.mean_delta_minus < rb.summary.mean_delta_minus);
  CHECK(rp.summary.mean_delta_plus < rb.summary.mean_delta_plus);
  CHECK(rp.summary.mean_delta_minus < 2.0);  // percent
  CHECK(rp.summary.mean_delta_plus < 1.0);
}

TEST_CASE("spearman: known orderings") {
  CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {9, 7, 5, 3}) == doctest::Approx(-1.0));
  CHECK(std::abs(spearman({1, 2, 3, 4}, {1, 4, 2, 3})) < 1.0);
  CHECK_THROWS_AS((void)spearman({1.0}, {1.0}), InvalidParams);
}

TEST_CASE("write_plot_data: two gnuplot blocks") {
  TempFile out("geof_plot_test.dat");
  SweepConfig cfg;
  cfg.n_states = 10;
  cfg.seed = 21;
  const SweepResult r = run_sweep(cfg);
  write_plot_data(r.records, out.path);
  const std::string text = slurp(out.path);
  CHECK(text.find("# mu delta_minus_pct") != std::string::npos);
  CHECK(text.find("\n\n\n# mu delta_plus_pct") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') >= 22);
}
