#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agree/affine_code.hpp"
#include "agree/bounds.hpp"
#include "agree/stats.hpp"

namespace agree {

enum class ProtocolKind { kTrivial, kAffine };

std::string_view to_string(ProtocolKind kind);
ProtocolKind parse_protocol(std::string_view name);

// stream_id reserved for drawing the shared codebook; trials use their index.
inline constexpr std::uint64_t kCodebookStream = ~std::uint64_t{0};

struct SimulationConfig {
  std::size_t n = 0;  // 0 selects default_ambient_length(k)
  std::size_t k = 0;
  double epsilon = 0.0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  ProtocolKind protocol = ProtocolKind::kAffine;
  std::optional<std::filesystem::path> codebook_path;
  unsigned workers = 1;
  std::optional<std::uint64_t> stop_after_agreements;
};

struct SimulationReport {
  SimulationConfig config;  // with n resolved
  std::uint64_t agreements = 0;
  std::uint64_t trials_run = 0;
  double estimate = 0.0;
  Interval wilson_ci_95;
  double trivial_reference = 0.0;
  double upper_bound_ref = 0.0;
  std::optional<double> lower_bound_ref;
  // Present only when every cell expects at least 5 observations.
  std::optional<ChiSquare> chi_square_outputs;
  std::optional<ChiSquare> chi_square_agreed_outputs;
  // estimate - 3 sigma <= 2^{-k eps/(1-eps)}
  bool entropy_bound_consistent = true;
  double wall_time = 0.0;
};

// Fails with UsageError on an invalid config (including a codebook whose n or
// k differs from the config).
void validate(const SimulationConfig& config);

// Loads, or samples and persists, the codebook the config refers to.
AffineCode resolve_codebook(const SimulationConfig& config);

// Trial t draws (x, y) from Stream({seed, t}); results do not depend on the
// worker count. With stop_after_agreements, the run ends at the first trial
// index where the running agreement count reaches the target.
SimulationReport run_simulation(const SimulationConfig& config);
SimulationReport run_simulation(const SimulationConfig& config, const AffineCode& code);

struct CoveringConfig {
  std::size_t n = 0;
  std::size_t k = 0;
  double epsilon = 0.0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct CoveringReport {
  CoveringConfig config;
  double covering_radius = 0.0;
  std::uint64_t unique_cover_events = 0;
  double estimate = 0.0;
  Interval wilson_ci_95;
  double analytic_target = 0.0;
  std::uint64_t decode_agreements = 0;
  double wall_time = 0.0;
};

// Per trial: fresh code C and fresh (x, y). Counts trials where one codeword
// c has both x and y within covering_radius(n, k) while no other codeword
// covers x or y. Throws InvariantViolation if such a trial ever decodes x and
// y to anything but c.
CoveringReport unique_covering_experiment(const CoveringConfig& config);

struct AuditConfig {
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::optional<double> epsilon;  // agreement-conditioned check
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct AuditReport {
  std::size_t n = 0;
  std::size_t k = 0;
  bool exhaustive = true;
  std::optional<double> epsilon;

  // Exhaustive mode.
  std::vector<std::uint64_t> class_counts;
  std::uint64_t expected_count = 0;
  bool exact_uniform = true;
  std::optional<double> agreement_probability;
  std::optional<double> conditional_max_deviation;  // max_z |Pr[z | agree] - 2^{-k}|

  // Sampled mode.
  std::uint64_t samples = 0;
  std::uint64_t agreement_events = 0;
  std::optional<ChiSquare> chi_square_outputs;
  std::optional<ChiSquare> chi_square_agreed_outputs;

  bool passed(double conditional_tolerance = 1e-12) const;
};

// Exhaustive mode requires n <= 14 (and n <= 12 for the conditioned check).
AuditReport uniformity_audit(const AffineCode& code, const AuditConfig& config);

std::vector<BoundReport> bounds_table(const std::vector<std::size_t>& k_list,
                                      const std::vector<double>& epsilon_list,
                                      std::optional<std::size_t> n = std::nullopt);

std::vector<std::size_t> default_k_grid();
std::vector<double> default_epsilon_grid();
// 1e-6 followed by 0.005, 0.010, ..., 0.5.
std::vector<double> default_figure1_grid();

std::vector<std::pair<double, double>> figure1_series(const std::vector<double>& epsilon_grid);

struct SweepConfig {
  std::vector<std::size_t> dimensions{4, 6, 8};
  std::vector<double> epsilons{0.05, 0.1, 0.25, 0.4, 0.5};
  std::size_t functions = 100;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct SweepResult {
  std::string check;
  std::size_t n = 0;
  double epsilon = 0.0;
  std::size_t functions = 0;
  // Largest lhs - rhs for inequalities; largest |lhs - rhs| for identities.
  double max_violation = 0.0;
  bool passed = true;
};

inline constexpr double kSweepTolerance = 1e-10;

// Randomized checks of the correlation inequality, the boundary bound for
// indicator functions, the spectral formula against the direct pair sum, the
// noise-stability identity and hypercontractivity.
std::vector<SweepResult> run_fourier_sweeps(const SweepConfig& config);

}  // namespace agree
