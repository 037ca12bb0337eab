#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "agree/affine_code.hpp"
#include "agree/codebook.hpp"
#include "agree/errors.hpp"
#include "agree/harness.hpp"
#include "agree/report.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitInvariant = 4;

struct Output {
  std::string format = "json";
  std::optional<std::string> out;
};

void add_output(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "write the report here instead of stdout");
}

void emit(const Output& o, const nlohmann::ordered_json& json, const std::string& csv) {
  const std::string text = o.format == "csv" ? csv : json.dump(2) + "\n";
  if (!o.out) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(*o.out, std::ios::binary | std::ios::trunc);
  if (!file) throw agree::UsageError("cannot open " + *o.out + " for writing");
  file << text;
  if (!file.flush()) throw agree::UsageError("failed writing " + *o.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Common randomness extraction from correlated bits: simulation, bounds and checks"};
  app.require_subcommand(1);

  std::size_t n = 0;
  std::size_t k = 0;
  double eps = 0.0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::optional<std::string> codebook;
  std::string protocol = "affine";
  std::optional<std::uint64_t> stop_after;
  bool exhaustive = false;
  std::uint64_t samples = 0;
  std::optional<double> audit_eps;
  std::vector<std::size_t> k_list;
  std::vector<double> eps_list;
  std::optional<std::size_t> bounds_n;
  std::size_t functions = 100;
  std::vector<std::size_t> dims{4, 6, 8};
  Output output;
  std::string codegen_out;

  auto add_common = [&](CLI::App* cmd, bool with_trials) {
    cmd->add_option("--seed", seed, "master seed");
    cmd->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    if (with_trials) cmd->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
  };

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo agreement rate of a protocol");
  simulate->add_option("--n", n, "input length (default 64k)");
  simulate->add_option("--k", k, "output bits")->required();
  simulate->add_option("--eps", eps, "crossover probability in [0, 0.5]")->required();
  simulate->add_option("--protocol", protocol, "trivial or affine")->check(CLI::IsMember({"trivial", "affine"}));
  simulate->add_option("--codebook", codebook, "load this codebook, or save the sampled one here");
  simulate->add_option("--stop-after", stop_after, "stop once this many agreements are seen");
  add_common(simulate, true);
  add_output(simulate, output);

  auto* cover = app.add_subcommand("cover", "unique-covering experiment over fresh codes");
  cover->add_option("--n", n, "input length")->required();
  cover->add_option("--k", k, "code dimension")->required();
  cover->add_option("--eps", eps, "crossover probability in [0, 0.5]")->required();
  add_common(cover, true);
  add_output(cover, output);

  auto* audit = app.add_subcommand("audit", "output uniformity of an affine codebook");
  audit->add_option("--codebook", codebook, "codebook to audit (sampled from --seed if absent)");
  audit->add_option("--n", n, "input length when sampling");
  audit->add_option("--k", k, "code dimension when sampling");
  audit->add_option("--eps", audit_eps, "also audit outputs conditioned on agreement");
  auto* exhaustive_flag = audit->add_flag("--exhaustive", exhaustive, "enumerate all inputs (n <= 14)");
  audit->add_option("--samples", samples, "sampled mode draw count")->excludes(exhaustive_flag);
  add_common(audit, false);
  add_output(audit, output);

  auto* bounds = app.add_subcommand("bounds", "table of analytic bounds");
  bounds->add_option("--k-list", k_list, "output lengths")->delimiter(',');
  bounds->add_option("--eps-list", eps_list, "crossover probabilities")->delimiter(',');
  bounds->add_option("--n", bounds_n, "also report the radius at this input length");
  bounds->add_option("--workers", workers, "accepted for uniformity; tables are computed serially");
  add_output(bounds, output);

  auto* figure1 = app.add_subcommand("figure1", "extraction ratio curve");
  figure1->add_option("--eps-list", eps_list, "grid in (0, 0.5]")->delimiter(',');
  figure1->add_option("--workers", workers, "accepted for uniformity; the curve is computed serially");
  add_output(figure1, output);

  auto* codegen = app.add_subcommand("codegen", "sample an affine codebook and write it to disk");
  codegen->add_option("--n", n, "input length (default 64k)");
  codegen->add_option("--k", k, "code dimension")->required();
  codegen->add_option("--seed", seed, "master seed");
  codegen->add_option("--workers", workers, "accepted for uniformity; sampling is serial");
  codegen->add_option("--out,--codebook", codegen_out, "destination file")->required();

  auto* verify = app.add_subcommand("verify", "randomized Fourier inequality sweeps");
  verify->add_option("--functions", functions, "random functions per cell")->check(CLI::PositiveNumber);
  verify->add_option("--n-list", dims, "input lengths")->delimiter(',');
  verify->add_option("--eps-list", eps_list, "crossover probabilities")->delimiter(',');
  add_common(verify, false);
  add_output(verify, output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      agree::SimulationConfig config;
      config.n = n;
      config.k = k;
      config.epsilon = eps;
      config.trials = trials;
      config.seed = seed;
      config.protocol = agree::parse_protocol(protocol);
      if (codebook) config.codebook_path = *codebook;
      config.workers = workers;
      config.stop_after_agreements = stop_after;
      const auto report = agree::run_simulation(config);
      emit(output, agree::to_json(report), agree::to_csv(report));
      return report.entropy_bound_consistent ? 0 : kExitInvariant;
    }
    if (cover->parsed()) {
      agree::CoveringConfig config{n, k, eps, trials, seed, workers};
      const auto report = agree::unique_covering_experiment(config);
      emit(output, agree::to_json(report), agree::to_csv(report));
      return 0;
    }
    if (audit->parsed()) {
      std::optional<agree::AffineCode> code;
      if (codebook) {
        code = agree::load_code(*codebook);
      } else {
        if (k == 0) throw agree::UsageError("audit needs --codebook or --k");
        agree::Stream rng({seed, agree::kCodebookStream});
        code = agree::AffineCode::sample(n == 0 ? agree::default_ambient_length(k) : n, k, rng);
      }
      agree::AuditConfig config;
      config.exhaustive = samples == 0;
      config.samples = samples;
      config.epsilon = audit_eps;
      config.seed = seed;
      config.workers = workers;
      const auto report = agree::uniformity_audit(*code, config);
      emit(output, agree::to_json(report), agree::to_csv(report));
      return report.passed() ? 0 : kExitInvariant;
    }
    if (bounds->parsed()) {
      const auto rows = agree::bounds_table(k_list.empty() ? agree::default_k_grid() : k_list,
                                            eps_list.empty() ? agree::default_epsilon_grid() : eps_list,
                                            bounds_n);
      emit(output, agree::to_json(rows), agree::to_csv(rows));
      return 0;
    }
    if (figure1->parsed()) {
      const auto series = agree::figure1_series(eps_list.empty() ? agree::default_figure1_grid() : eps_list);
      emit(output, agree::to_json(series), agree::to_csv(series));
      return 0;
    }
    if (codegen->parsed()) {
      agree::Stream rng({seed, agree::kCodebookStream});
      const auto code = agree::AffineCode::sample(n == 0 ? agree::default_ambient_length(k) : n, k, rng);
      agree::save_code(code, codegen_out);
      return 0;
    }
    if (verify->parsed()) {
      agree::SweepConfig config;
      config.dimensions = dims;
      if (!eps_list.empty()) config.epsilons = eps_list;
      config.functions = functions;
      config.seed = seed;
      config.workers = workers;
      const auto sweeps = agree::run_fourier_sweeps(config);
      emit(output, agree::to_json(sweeps, config), agree::to_csv(sweeps));
      for (const auto& s : sweeps) {
        if (!s.passed) return kExitInvariant;
      }
      return 0;
    }
  } catch (const agree::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const agree::CodebookError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const agree::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const agree::InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
