#include "agree/harness.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

#include "agree/codebook.hpp"
#include "agree/errors.hpp"
#include "agree/fourier.hpp"
#include "agree/source.hpp"
#include "parallel.hpp"

namespace agree {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

constexpr std::uint64_t kBatchSize = std::uint64_t{1} << 15;

// Chi-square is only reported when every cell expects at least this many hits.
constexpr std::uint64_t kMinExpectedPerCell = 5;

std::optional<ChiSquare> maybe_chi_square(const std::vector<std::uint64_t>& counts,
                                          std::uint64_t total) {
  if (counts.empty() || total < kMinExpectedPerCell * counts.size()) return std::nullopt;
  return chi_square_uniform(counts);
}

struct TrialOutcome {
  std::uint32_t x_out = 0;
  std::uint32_t y_out = 0;
};

std::size_t resolved_n(const SimulationConfig& config) {
  return config.n == 0 ? default_ambient_length(config.k) : config.n;
}

// Gray-code walk tracking, for both inputs, the order_less-minimal translate
// and the codewords within `radius`.
struct CoverScan {
  std::array<std::uint32_t, 2> decoded{};
  std::array<std::uint32_t, 2> cover_count{};
  std::array<std::uint32_t, 2> cover_index{};
};

CoverScan scan_covering(const AffineCode& code, const BitString& x, const BitString& y,
                        double radius) {
  const std::size_t words = words_for_bits(code.n());
  const auto basis = code.packed_basis();
  const auto offset = code.offset().words();
  const std::array<const BitString*, 2> inputs{&x, &y};

  std::array<std::vector<std::uint64_t>, 2> current;
  std::array<std::vector<std::uint64_t>, 2> best;
  std::array<std::size_t, 2> best_weight{};
  CoverScan scan;

  auto visit = [&](std::size_t m, std::size_t weight, std::uint32_t index, bool first) {
    if (static_cast<double>(weight) <= radius) {
      ++scan.cover_count[m];
      scan.cover_index[m] = index;
    }
    if (first || weight < best_weight[m] ||
        (weight == best_weight[m] && tie_break_less(current[m], best[m]))) {
      best_weight[m] = weight;
      scan.decoded[m] = index;
      best[m] = current[m];
    }
  };

  for (std::size_t m = 0; m < 2; ++m) {
    current[m].resize(words);
    auto in = inputs[m]->words();
    std::size_t weight = 0;
    for (std::size_t w = 0; w < words; ++w) {
      current[m][w] = in[w] ^ offset[w];
      weight += static_cast<std::size_t>(std::popcount(current[m][w]));
    }
    visit(m, weight, 0, true);
  }
  const std::uint32_t count = std::uint32_t{1} << code.k();
  std::uint32_t gray = 0;
  for (std::uint32_t i = 1; i < count; ++i) {
    const auto j = static_cast<std::size_t>(std::countr_zero(i));
    gray ^= std::uint32_t{1} << j;
    const std::uint64_t* row = basis.data() + j * words;
    for (std::size_t m = 0; m < 2; ++m) {
      std::size_t weight = 0;
      for (std::size_t w = 0; w < words; ++w) {
        current[m][w] ^= row[w];
        weight += static_cast<std::size_t>(std::popcount(current[m][w]));
      }
      visit(m, weight, gray, false);
    }
  }
  return scan;
}

}  // namespace

std::string_view to_string(ProtocolKind kind) {
  return kind == ProtocolKind::kTrivial ? "trivial" : "affine";
}

ProtocolKind parse_protocol(std::string_view name) {
  if (name == "trivial") return ProtocolKind::kTrivial;
  if (name == "affine") return ProtocolKind::kAffine;
  throw UsageError("unknown protocol '" + std::string(name) + "' (expected trivial or affine)");
}

void validate(const SimulationConfig& config) {
  NoiseParam{config.epsilon};
  if (config.trials < 1) throw UsageError("trials must be at least 1");
  if (config.k < 1) throw UsageError("k must be at least 1");
  const std::size_t n = resolved_n(config);
  if (n < config.k) throw UsageError("n must be at least k");
  if (config.protocol == ProtocolKind::kAffine && config.k > kMaxCodeDimension) {
    throw ResourceError("affine protocol supports k <= " + std::to_string(kMaxCodeDimension));
  }
  if (config.protocol == ProtocolKind::kTrivial && config.k > 32) {
    throw UsageError("trivial protocol supports k <= 32");
  }
  if (config.stop_after_agreements && *config.stop_after_agreements == 0) {
    throw UsageError("stop_after_agreements must be positive");
  }
}

AffineCode resolve_codebook(const SimulationConfig& config) {
  validate(config);
  const std::size_t n = resolved_n(config);
  if (config.codebook_path && std::filesystem::exists(*config.codebook_path)) {
    AffineCode code = load_code(*config.codebook_path);
    if (code.n() != n || code.k() != config.k) {
      throw UsageError("codebook " + config.codebook_path->string() + " has n = " +
                       std::to_string(code.n()) + ", k = " + std::to_string(code.k()) +
                       " but the run asks for n = " + std::to_string(n) +
                       ", k = " + std::to_string(config.k));
    }
    return code;
  }
  Stream rng({config.seed, kCodebookStream});
  AffineCode code = AffineCode::sample(n, config.k, rng);
  if (config.codebook_path) save_code(code, *config.codebook_path);
  return code;
}

static SimulationReport simulate(const SimulationConfig& config, const AffineCode* code);

SimulationReport run_simulation(const SimulationConfig& config) {
  if (config.protocol == ProtocolKind::kAffine) {
    const AffineCode code = resolve_codebook(config);
    return simulate(config, &code);
  }
  return simulate(config, nullptr);
}

SimulationReport run_simulation(const SimulationConfig& config, const AffineCode& code) {
  return simulate(config, &code);
}

static SimulationReport simulate(const SimulationConfig& config, const AffineCode* code) {
  const auto start = Clock::now();
  validate(config);
  SimulationReport report;
  report.config = config;
  report.config.n = resolved_n(config);
  const std::size_t n = report.config.n;
  const std::size_t k = config.k;
  const bool affine = config.protocol == ProtocolKind::kAffine;
  if (affine && (code == nullptr || code->n() != n || code->k() != k)) {
    throw UsageError("codebook dimensions do not match the simulation config");
  }
  const NoiseParam noise(config.epsilon);

  const std::uint64_t classes = std::uint64_t{1} << k;
  const bool count_outputs = config.trials >= kMinExpectedPerCell * classes;
  std::vector<std::uint64_t> marginal(count_outputs ? classes : 0);
  std::vector<std::uint64_t> agreed(count_outputs ? classes : 0);

  const std::uint32_t prefix_mask =
      k >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << k) - 1;
  auto run_trial = [&](std::uint64_t t) {
    Stream rng({config.seed, t});
    const auto [x, y] = sample_pair(n, noise, rng);
    if (affine) {
      const auto out = code->decode_pair_index(x, y);
      return TrialOutcome{out[0], out[1]};
    }
    // First k bits of each input, bit i of the output = bit i of the input.
    return TrialOutcome{static_cast<std::uint32_t>(x.words()[0]) & prefix_mask,
                        static_cast<std::uint32_t>(y.words()[0]) & prefix_mask};
  };

  std::vector<TrialOutcome> batch;
  std::uint64_t done = 0;
  bool stopped = false;
  while (done < config.trials && !stopped) {
    const std::uint64_t size = std::min(kBatchSize, config.trials - done);
    batch.assign(size, TrialOutcome{});
    detail::parallel_for(0, size, config.workers,
                         [&](std::uint64_t i) { batch[i] = run_trial(done + i); });
    for (std::uint64_t i = 0; i < size; ++i) {
      const auto& o = batch[i];
      const bool agree = o.x_out == o.y_out;
      if (count_outputs) {
        ++marginal[o.x_out];
        if (agree) ++agreed[o.x_out];
      }
      ++report.trials_run;
      if (agree) {
        ++report.agreements;
        if (config.stop_after_agreements && report.agreements >= *config.stop_after_agreements) {
          stopped = true;
          break;
        }
      }
    }
    done += size;
  }

  report.estimate = static_cast<double>(report.agreements) / static_cast<double>(report.trials_run);
  report.wilson_ci_95 = wilson_interval(report.agreements, report.trials_run);
  report.trivial_reference = trivial_agreement(k, config.epsilon);
  report.upper_bound_ref = upper_bound(static_cast<double>(k), config.epsilon, 0.0);
  if (config.epsilon > 0.0 && lower_bound_condition(k, config.epsilon)) {
    report.lower_bound_ref = lower_bound(k, config.epsilon);
  }
  if (count_outputs) {
    report.chi_square_outputs = maybe_chi_square(marginal, report.trials_run);
    report.chi_square_agreed_outputs = maybe_chi_square(agreed, report.agreements);
  }
  const double sigma = binomial_sigma(report.estimate, report.trials_run);
  report.entropy_bound_consistent = report.estimate - 3.0 * sigma <= report.upper_bound_ref;
  report.wall_time = seconds_since(start);
  return report;
}

CoveringReport unique_covering_experiment(const CoveringConfig& config) {
  const auto start = Clock::now();
  const NoiseParam noise(config.epsilon);
  if (config.k < 1 || config.k > config.n) throw UsageError("covering needs 1 <= k <= n");
  if (config.k > kMaxCodeDimension) {
    throw ResourceError("covering supports k <= " + std::to_string(kMaxCodeDimension));
  }
  if (config.trials < 1) throw UsageError("trials must be at least 1");

  CoveringReport report;
  report.config = config;
  report.covering_radius = covering_radius(config.n, config.k);
  if (config.epsilon > 0.0) report.analytic_target = claim_bound_value(config.k, config.epsilon);
  else report.analytic_target = gaussian_upper_tail(0.0) / 8.0;

  struct Outcome {
    bool unique_cover = false;
    bool agree = false;
  };
  std::vector<Outcome> batch;
  std::uint64_t done = 0;
  while (done < config.trials) {
    const std::uint64_t size = std::min(kBatchSize, config.trials - done);
    batch.assign(size, Outcome{});
    detail::parallel_for(0, size, config.workers, [&](std::uint64_t i) {
      const std::uint64_t t = done + i;
      Stream rng({config.seed, t});
      const AffineCode code = AffineCode::sample(config.n, config.k, rng);
      const auto [x, y] = sample_pair(config.n, noise, rng);
      const CoverScan scan = scan_covering(code, x, y, report.covering_radius);
      const bool unique = scan.cover_count[0] == 1 && scan.cover_count[1] == 1 &&
                          scan.cover_index[0] == scan.cover_index[1];
      if (unique && (scan.decoded[0] != scan.cover_index[0] ||
                     scan.decoded[1] != scan.cover_index[1])) {
        throw InvariantViolation("trial " + std::to_string(t) +
                                 ": uniquely covered pair did not decode to its covering codeword");
      }
      batch[i] = {unique, scan.decoded[0] == scan.decoded[1]};
    });
    for (const auto& o : batch) {
      report.unique_cover_events += o.unique_cover ? 1 : 0;
      report.decode_agreements += o.agree ? 1 : 0;
    }
    done += size;
  }
  report.estimate =
      static_cast<double>(report.unique_cover_events) / static_cast<double>(config.trials);
  report.wilson_ci_95 = wilson_interval(report.unique_cover_events, config.trials);
  report.wall_time = seconds_since(start);
  return report;
}

bool AuditReport::passed(double conditional_tolerance) const {
  if (exhaustive) {
    if (!exact_uniform) return false;
    if (conditional_max_deviation && *conditional_max_deviation > conditional_tolerance) return false;
    return true;
  }
  const double alpha = 1e-4;
  if (chi_square_outputs && chi_square_outputs->p_value <= alpha) return false;
  if (chi_square_agreed_outputs && chi_square_agreed_outputs->p_value <= alpha) return false;
  return true;
}

AuditReport uniformity_audit(const AffineCode& code, const AuditConfig& config) {
  AuditReport report;
  report.n = code.n();
  report.k = code.k();
  report.exhaustive = config.exhaustive;
  report.epsilon = config.epsilon;
  const std::size_t classes = std::size_t{1} << code.k();

  if (config.exhaustive) {
    if (code.n() > 14) throw ResourceError("exhaustive audit requires n <= 14");
    std::vector<std::uint32_t> table(std::size_t{1} << code.n());
    detail::parallel_for(0, table.size(), config.workers, [&](std::uint64_t x) {
      table[x] = code.decode_index(BitString::from_uint(x, code.n()));
    });
    report.class_counts.assign(classes, 0);
    for (auto z : table) ++report.class_counts[z];
    report.expected_count = std::uint64_t{1} << (code.n() - code.k());
    report.exact_uniform = std::all_of(report.class_counts.begin(), report.class_counts.end(),
                                       [&](auto c) { return c == report.expected_count; });
    if (config.epsilon) {
      const auto per_class = agreement_by_class(table, table, code.k(), NoiseParam(*config.epsilon));
      double total = 0.0;
      for (double p : per_class) total += p;
      report.agreement_probability = total;
      double deviation = 0.0;
      const double uniform = 1.0 / static_cast<double>(classes);
      for (double p : per_class) deviation = std::max(deviation, std::abs(p / total - uniform));
      report.conditional_max_deviation = deviation;
    }
    return report;
  }

  if (config.samples < 1) throw UsageError("sampled audit needs a positive sample count");
  const NoiseParam noise(config.epsilon.value_or(0.0));
  report.samples = config.samples;
  std::vector<std::uint64_t> marginal(classes, 0);
  std::vector<std::uint64_t> agreed(classes, 0);
  std::vector<std::array<std::uint32_t, 2>> batch;
  std::uint64_t done = 0;
  while (done < config.samples) {
    const std::uint64_t size = std::min(kBatchSize, config.samples - done);
    batch.assign(size, {});
    detail::parallel_for(0, size, config.workers, [&](std::uint64_t i) {
      Stream rng({config.seed, done + i});
      const auto [x, y] = sample_pair(code.n(), noise, rng);
      batch[i] = code.decode_pair_index(x, y);
    });
    for (const auto& o : batch) {
      ++marginal[o[0]];
      if (o[0] == o[1]) {
        ++agreed[o[0]];
        ++report.agreement_events;
      }
    }
    done += size;
  }
  report.chi_square_outputs = maybe_chi_square(marginal, config.samples);
  report.chi_square_agreed_outputs = maybe_chi_square(agreed, report.agreement_events);
  return report;
}

std::vector<BoundReport> bounds_table(const std::vector<std::size_t>& k_list,
                                      const std::vector<double>& epsilon_list,
                                      std::optional<std::size_t> n) {
  std::vector<BoundReport> rows;
  rows.reserve(k_list.size() * epsilon_list.size());
  for (auto k : k_list) {
    for (auto eps : epsilon_list) rows.push_back(bound_report(k, eps, n));
  }
  return rows;
}

std::vector<std::size_t> default_k_grid() { return {8, 12, 16, 20, 24}; }

std::vector<double> default_epsilon_grid() { return {0.05, 0.1, 0.25, 0.4, 0.5}; }

std::vector<double> default_figure1_grid() {
  std::vector<double> grid{1e-6};
  for (int i = 1; i <= 100; ++i) grid.push_back(0.005 * i);
  return grid;
}

std::vector<std::pair<double, double>> figure1_series(const std::vector<double>& epsilon_grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(epsilon_grid.size());
  for (double eps : epsilon_grid) {
    if (!(eps > 0.0 && eps <= 0.5)) throw UsageError("figure1 grid must lie in (0, 1/2]");
    out.emplace_back(eps, extraction_ratio(eps));
  }
  return out;
}

namespace {

enum class SweepCheck { kGeometric, kBoundary, kFourierIdentity, kNoiseStability, kHypercontractive };

constexpr std::array<std::pair<SweepCheck, const char*>, 5> kSweepChecks{{
    {SweepCheck::kGeometric, "geometric"},
    {SweepCheck::kBoundary, "boundary"},
    {SweepCheck::kFourierIdentity, "fourier_identity"},
    {SweepCheck::kNoiseStability, "noise_stability"},
    {SweepCheck::kHypercontractive, "hypercontractive"},
}};

TruthTable random_real_table(std::size_t n, Stream& rng) {
  return TruthTable::from_function(n, [&](std::uint32_t) { return 2.0 * rng.uniform() - 1.0; });
}

// Mix of dense random sets, Hamming balls and subcubes.
TruthTable random_boolean_table(std::size_t n, Stream& rng) {
  const auto kind = rng.below(3);
  if (kind == 0) {
    const double density = rng.uniform();
    return TruthTable::from_function(n, [&](std::uint32_t) { return rng.uniform() < density ? 1.0 : 0.0; });
  }
  const auto centre = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << n));
  if (kind == 1) {
    const auto r = static_cast<int>(rng.below(n + 1));
    return TruthTable::from_function(
        n, [&](std::uint32_t x) { return std::popcount(x ^ centre) <= r ? 1.0 : 0.0; });
  }
  const auto fixed = static_cast<std::uint32_t>(rng.below(std::uint64_t{1} << n));
  return TruthTable::from_function(
      n, [&](std::uint32_t x) { return ((x ^ centre) & fixed) == 0 ? 1.0 : 0.0; });
}

TruthTable random_nonnegative_table(std::size_t n, Stream& rng) {
  if (rng.below(2) == 0) return random_boolean_table(n, rng);
  return TruthTable::from_function(n, [&](std::uint32_t) {
    const double u = rng.uniform();
    return u * u * u;
  });
}

double sweep_violation(SweepCheck check, std::size_t n, const NoiseParam& noise, Stream& rng) {
  switch (check) {
    case SweepCheck::kGeometric: {
      const bool boolean = rng.below(2) == 0;
      const auto f = boolean ? random_boolean_table(n, rng) : random_real_table(n, rng);
      const auto g = boolean ? random_boolean_table(n, rng) : random_real_table(n, rng);
      const auto sides = check_geometric(f, g, noise);
      return sides.lhs - sides.rhs;
    }
    case SweepCheck::kBoundary: {
      const auto sides = check_boundary(random_boolean_table(n, rng), noise);
      return sides.lhs - sides.rhs;
    }
    case SweepCheck::kFourierIdentity: {
      const auto f = random_real_table(n, rng);
      const auto g = random_real_table(n, rng);
      return std::abs(correlated_expectation(f, g, noise) - correlated_expectation_direct(f, g, noise));
    }
    case SweepCheck::kNoiseStability: {
      const auto f = random_real_table(n, rng);
      const auto smoothed = noise_operator(f, noise.rho());
      double second_moment = 0.0;
      for (double v : smoothed.values()) second_moment += v * v;
      second_moment /= static_cast<double>(smoothed.values().size());
      return std::abs(second_moment - correlated_expectation(f, f, noise));
    }
    case SweepCheck::kHypercontractive: {
      const auto sides = check_hypercontractive(random_nonnegative_table(n, rng), noise.rho());
      return sides.lhs - sides.rhs;
    }
  }
  return 0.0;
}

}  // namespace

std::vector<SweepResult> run_fourier_sweeps(const SweepConfig& config) {
  if (config.functions < 1) throw UsageError("sweeps need at least one function per check");
  for (auto n : config.dimensions) {
    if (n < 1 || n > 12) throw ResourceError("sweep dimensions must lie in [1, 12]");
  }
  std::vector<SweepResult> results;
  for (std::size_t c = 0; c < kSweepChecks.size(); ++c) {
    const auto [check, name] = kSweepChecks[c];
    for (auto n : config.dimensions) {
      for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
        const NoiseParam noise(config.epsilons[e]);
        std::vector<double> violations(config.functions);
        detail::parallel_for(0, config.functions, config.workers, [&](std::uint64_t i) {
          const std::uint64_t stream = (std::uint64_t{c} << 48) | (std::uint64_t{n} << 40) |
                                       (std::uint64_t{e} << 32) | i;
          Stream rng({config.seed, stream});
          violations[i] = sweep_violation(check, n, noise, rng);
        });
        SweepResult r;
        r.check = name;
        r.n = n;
        r.epsilon = config.epsilons[e];
        r.functions = config.functions;
        r.max_violation = *std::max_element(violations.begin(), violations.end());
        r.passed = r.max_violation <= kSweepTolerance;
        results.push_back(r);
      }
    }
  }
  return results;
}

}  // namespace agree
