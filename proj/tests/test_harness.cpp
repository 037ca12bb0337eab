#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "agree/affine_code.hpp"
#include "agree/codebook.hpp"
#include "agree/errors.hpp"
#include "agree/fourier.hpp"
#include "agree/harness.hpp"
#include "agree/report.hpp"
#include "agree/source.hpp"

using namespace agree;

namespace {

SimulationConfig config_for(std::size_t n, std::size_t k, double eps, std::uint64_t trials,
                            ProtocolKind protocol = ProtocolKind::kAffine) {
  SimulationConfig c;
  c.n = n;
  c.k = k;
  c.epsilon = eps;
  c.trials = trials;
  c.seed = 2024;
  c.protocol = protocol;
  return c;
}

template <class Report>
std::string without_wall_time(const Report& r) {
  auto j = to_json(r);
  j["results"].erase("wall_time");
  return j.dump();
}

bool within_sigma(double estimate, double p, std::uint64_t trials, double sigmas) {
  return std::abs(estimate - p) <= sigmas * std::sqrt(p * (1 - p) / static_cast<double>(trials));
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "agree_harness_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::filesystem::remove(path);
  return path;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(validate(config_for(64, 4, 0.6, 10)), UsageError);
  CHECK_THROWS_AS(validate(config_for(64, 4, 0.1, 0)), UsageError);
  CHECK_THROWS_AS(validate(config_for(3, 4, 0.1, 10)), UsageError);
  CHECK_THROWS_AS(validate(config_for(64, 0, 0.1, 10)), UsageError);
  CHECK_THROWS_AS(validate(config_for(64, 25, 0.1, 10)), ResourceError);
  CHECK_NOTHROW(validate(config_for(64, 25, 0.1, 10, ProtocolKind::kTrivial)));
  auto c = config_for(64, 4, 0.1, 10);
  c.stop_after_agreements = 0;
  CHECK_THROWS_AS(validate(c), UsageError);
  CHECK_THROWS_AS(parse_protocol("majority"), UsageError);
  CHECK(parse_protocol("trivial") == ProtocolKind::kTrivial);
}

TEST_CASE("noiseless runs always agree") {
  for (auto protocol : {ProtocolKind::kTrivial, ProtocolKind::kAffine}) {
    const auto r = run_simulation(config_for(0, 3, 0.0, 500, protocol));
    CHECK(r.config.n == 192);
    CHECK(r.agreements == 500);
    CHECK(r.estimate == 1.0);
    CHECK(r.wilson_ci_95.high == 1.0);
  }
}

TEST_CASE("report invariants") {
  const auto r = run_simulation(config_for(40, 4, 0.2, 3000));
  CHECK(r.trials_run == 3000);
  CHECK(r.estimate == static_cast<double>(r.agreements) / 3000);
  CHECK(r.wilson_ci_95.low <= r.estimate);
  CHECK(r.estimate <= r.wilson_ci_95.high);
  CHECK(r.trivial_reference == trivial_agreement(4, 0.2));
  CHECK(r.upper_bound_ref == upper_bound(4, 0.2));
  CHECK_FALSE(r.lower_bound_ref);
  CHECK(r.chi_square_outputs);
  CHECK(r.entropy_bound_consistent);

  const auto small = run_simulation(config_for(40, 10, 0.2, 100));
  CHECK_FALSE(small.chi_square_outputs);
  CHECK_FALSE(small.chi_square_agreed_outputs);
}

TEST_CASE("trivial protocol matches its closed form") {
  const auto r = run_simulation(config_for(64, 10, 0.1, 1000000, ProtocolKind::kTrivial));
  CHECK(within_sigma(r.estimate, 0.3486784401, r.trials_run, 3));
}

TEST_CASE("affine protocol matches the exact agreement probability") {
  const auto config = config_for(12, 3, 0.2, 1000000);
  const auto code = resolve_codebook(config);
  const auto table = decode_table(code);
  const double exact = exact_agreement_probability(table, table, 3, NoiseParam(0.2));
  const auto r = run_simulation(config, code);
  CHECK(within_sigma(r.estimate, exact, r.trials_run, 3));
  CHECK(r.chi_square_outputs->p_value > 1e-4);
  CHECK(r.chi_square_agreed_outputs->p_value > 1e-4);
}

TEST_CASE("worker count does not change results") {
  for (auto protocol : {ProtocolKind::kTrivial, ProtocolKind::kAffine}) {
    auto c = config_for(100, 6, 0.15, 70000, protocol);
    c.workers = 1;
    const auto one = run_simulation(c);
    c.workers = 3;
    const auto three = run_simulation(c);
    c.workers = 8;
    const auto eight = run_simulation(c);
    CHECK(without_wall_time(one) == without_wall_time(three));
    CHECK(without_wall_time(one) == without_wall_time(eight));
  }
}

TEST_CASE("sequential stopping ends at the target agreement") {
  auto c = config_for(64, 8, 0.2, 200000);
  c.stop_after_agreements = 150;
  c.workers = 2;
  const auto stopped = run_simulation(c);
  CHECK(stopped.agreements == 150);
  CHECK(stopped.trials_run < 200000);
  CHECK(stopped.estimate == 150.0 / static_cast<double>(stopped.trials_run));

  auto replay = config_for(64, 8, 0.2, stopped.trials_run);
  const auto full = run_simulation(replay);
  CHECK(full.agreements == 150);
  replay.trials = stopped.trials_run - 1;
  CHECK(run_simulation(replay).agreements == 149);

  c.stop_after_agreements = 1000000;
  c.trials = 500;
  const auto capped = run_simulation(c);
  CHECK(capped.trials_run == 500);
}

TEST_CASE("codebook persistence") {
  const auto path = scratch("sim.afc");
  auto c = config_for(80, 5, 0.1, 2000);
  c.codebook_path = path;
  const auto first = run_simulation(c);
  REQUIRE(std::filesystem::exists(path));
  const auto stored = load_code(path);
  CHECK(stored.n() == 80);
  CHECK(stored.k() == 5);

  // The second run loads the stored code instead of sampling.
  const auto again = run_simulation(c);
  CHECK(again.agreements == first.agreements);
  CHECK(resolve_codebook(c) == stored);

  auto mismatch = c;
  mismatch.k = 6;
  CHECK_THROWS_AS(run_simulation(mismatch), UsageError);
  mismatch = c;
  mismatch.n = 81;
  CHECK_THROWS_AS(resolve_codebook(mismatch), UsageError);

  Stream rng({1, 1});
  const auto code = AffineCode::sample(80, 4, rng);
  CHECK_THROWS_AS(run_simulation(c, code), UsageError);
  std::filesystem::remove(path);
}

TEST_CASE("unique covering matches an exhaustive oracle at n = 10, k = 2") {
  // At eps = 0 the event is "x is uniquely covered"; the oracle averages the
  // exact uniquely-covered fraction of {0,1}^10 over independent random codes.
  const std::size_t n = 10, k = 2;
  const double r = covering_radius(n, k);
  Stream rng({77, 0});
  const int codes = 4000;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < codes; ++i) {
    const auto code = AffineCode::sample(n, k, rng);
    std::vector<BitString> words;
    for (std::uint32_t z = 0; z < 4; ++z) words.push_back(code.encode_index(z));
    int unique = 0;
    for (std::uint32_t p = 0; p < 1024; ++p) {
      const auto x = BitString::from_uint(p, n);
      int covers = 0;
      for (const auto& w : words) covers += hamming_distance(x, w) <= r;
      unique += covers == 1;
    }
    const double frac = unique / 1024.0;
    sum += frac;
    sum_sq += frac * frac;
  }
  const double oracle = sum / codes;
  const double oracle_var = (sum_sq / codes - oracle * oracle) / codes;

  CoveringConfig c{n, k, 0.0, 200000, 5, 1};
  const auto report = unique_covering_experiment(c);
  CHECK(report.covering_radius == r);
  CHECK(report.decode_agreements >= report.unique_cover_events);
  const double mc_var = oracle * (1 - oracle) / 200000;
  CHECK(std::abs(report.estimate - oracle) <= 4 * std::sqrt(oracle_var + mc_var));
}

TEST_CASE("unique covering implies agreement and is reproducible") {
  CoveringConfig c{128, 6, 0.2, 20000, 9, 1};
  const auto one = unique_covering_experiment(c);
  CHECK(one.unique_cover_events > 0);
  CHECK(one.decode_agreements >= one.unique_cover_events);
  CHECK(one.analytic_target == claim_bound_value(6, 0.2));
  CHECK(one.estimate >= 0.0);
  CHECK(one.estimate <= 1.0);
  c.workers = 4;
  CHECK(without_wall_time(one) == without_wall_time(unique_covering_experiment(c)));
  CHECK_THROWS_AS(unique_covering_experiment(CoveringConfig{30, 25, 0.1, 10, 0, 1}), ResourceError);
  CHECK_THROWS_AS(unique_covering_experiment(CoveringConfig{10, 12, 0.1, 10, 0, 1}), UsageError);
}

TEST_CASE("exhaustive uniformity audit") {
  Stream rng({31, 0});
  for (int i = 0; i < 5; ++i) {
    const auto code = AffineCode::sample(12, 3, rng);
    AuditConfig config;
    config.epsilon = 0.2;
    const auto audit = uniformity_audit(code, config);
    REQUIRE(audit.class_counts.size() == 8);
    for (auto count : audit.class_counts) CHECK(count == 512);
    CHECK(audit.expected_count == 512);
    CHECK(audit.exact_uniform);
    CHECK(*audit.conditional_max_deviation <= 1e-12);
    CHECK(audit.passed());
  }
  const auto wide = AffineCode::sample(15, 3, rng);
  CHECK_THROWS_AS(uniformity_audit(wide, AuditConfig{}), ResourceError);
}

TEST_CASE("sampled uniformity audit") {
  Stream rng({32, 0});
  const auto code = AffineCode::sample(64, 8, rng);
  AuditConfig config;
  config.exhaustive = false;
  config.samples = 200000;
  config.epsilon = 0.1;
  config.seed = 4;
  const auto audit = uniformity_audit(code, config);
  REQUIRE(audit.chi_square_outputs);
  REQUIRE(audit.chi_square_agreed_outputs);
  CHECK(audit.samples == 200000);
  CHECK(audit.agreement_events > 10000);
  CHECK(audit.chi_square_outputs->p_value > 1e-4);
  CHECK(audit.chi_square_agreed_outputs->p_value > 1e-4);
  CHECK(audit.passed());
  config.workers = 3;
  CHECK(to_json(uniformity_audit(code, config)).dump() == to_json(audit).dump());
}

TEST_CASE("bounds table and figure series") {
  const auto rows = bounds_table(default_k_grid(), default_epsilon_grid());
  CHECK(rows.size() == 25);
  for (const auto& row : rows) {
    if (row.lower) CHECK(*row.lower <= row.upper);
  }
  const auto grid = default_figure1_grid();
  CHECK(grid.front() == 1e-6);
  CHECK(grid.back() == 0.5);
  CHECK(grid.size() == 101);
  const auto series = figure1_series(grid);
  CHECK(std::abs(series.front().second - 1.4427) < 1e-4);
  CHECK(std::abs(series.back().second - 1.0) < 1e-4);
  for (std::size_t i = 1; i < series.size(); ++i) CHECK(series[i].second < series[i - 1].second);
  CHECK_THROWS_AS(figure1_series({0.0}), UsageError);
  CHECK_THROWS_AS(figure1_series({0.6}), UsageError);
}

TEST_CASE("fourier sweeps pass") {
  SweepConfig config;
  config.functions = 20;
  const auto sweeps = run_fourier_sweeps(config);
  CHECK(sweeps.size() == 5 * 3 * 5);
  for (const auto& s : sweeps) CHECK_MESSAGE(s.passed, s.check << " n=" << s.n << " eps=" << s.epsilon);
  config.workers = 4;
  CHECK(to_json(run_fourier_sweeps(config), config).dump() == to_json(sweeps, config).dump());
}

TEST_CASE("report layout") {
  const auto r = run_simulation(config_for(30, 3, 0.1, 100));
  const auto j = to_json(r);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  CHECK(keys == std::vector<std::string>{"config", "results", "bounds", "checks"});
  CHECK_FALSE(j["config"].contains("workers"));
  CHECK(j["results"]["estimate"] == r.estimate);

  const auto csv = to_csv(r);
  CHECK(csv.rfind("n,k,epsilon,trials,seed,protocol,agreements,", 0) == 0);

  const auto table = to_csv(bounds_table({16}, {0.25}));
  CHECK(table ==
        "k,epsilon,trivial,upper,lower,t,condition_met\n"
        "16,0.25,0.010022595757618546,0.024803141437003122,3.7204712155504684e-05,"
        "4.4753284246541725,true\n");
  CHECK(to_csv(figure1_series({0.5})) == "epsilon,extraction_ratio\n0.5,1\n");
  CHECK(format_real(0.1) == "0.10000000000000001");
}
