#include "agree/report.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace agree {

namespace {

using nlohmann::ordered_json;

template <class T>
ordered_json optional_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json chi_json(const std::optional<ChiSquare>& chi) {
  if (!chi) return nullptr;
  return {{"statistic", chi->statistic},
          {"degrees_of_freedom", chi->degrees_of_freedom},
          {"p_value", chi->p_value}};
}

ordered_json interval_json(const Interval& ci) { return {{"low", ci.low}, {"high", ci.high}}; }

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

std::string chi_p(const std::optional<ChiSquare>& chi) {
  return chi ? format_real(chi->p_value) : std::string();
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

ordered_json to_json(const SimulationReport& r) {
  const auto& c = r.config;
  ordered_json out;
  out["config"] = {
      {"n", c.n},
      {"k", c.k},
      {"epsilon", c.epsilon},
      {"trials", c.trials},
      {"seed", c.seed},
      {"protocol", std::string(to_string(c.protocol))},
      {"codebook_path", c.codebook_path ? ordered_json(c.codebook_path->string()) : ordered_json(nullptr)},
      {"stop_after_agreements", optional_json(c.stop_after_agreements)},
  };
  out["results"] = {
      {"agreements", r.agreements},
      {"trials_run", r.trials_run},
      {"estimate", r.estimate},
      {"wilson_ci_95", interval_json(r.wilson_ci_95)},
      {"chi_square_outputs", chi_json(r.chi_square_outputs)},
      {"chi_square_agreed_outputs", chi_json(r.chi_square_agreed_outputs)},
      {"wall_time", r.wall_time},
  };
  out["bounds"] = {
      {"trivial_reference", r.trivial_reference},
      {"upper_bound_ref", r.upper_bound_ref},
      {"lower_bound_ref", optional_json(r.lower_bound_ref)},
  };
  out["checks"] = {{"entropy_bound_consistent", r.entropy_bound_consistent}};
  return out;
}

ordered_json to_json(const CoveringReport& r) {
  const auto& c = r.config;
  ordered_json out;
  out["config"] = {{"n", c.n}, {"k", c.k}, {"epsilon", c.epsilon}, {"trials", c.trials}, {"seed", c.seed}};
  out["results"] = {
      {"unique_cover_events", r.unique_cover_events},
      {"estimate", r.estimate},
      {"wilson_ci_95", interval_json(r.wilson_ci_95)},
      {"decode_agreements", r.decode_agreements},
      {"wall_time", r.wall_time},
  };
  out["bounds"] = {{"covering_radius", r.covering_radius}, {"analytic_target", r.analytic_target}};
  out["checks"] = {{"unique_cover_implies_agreement", true}};
  return out;
}

ordered_json to_json(const AuditReport& r) {
  ordered_json out;
  out["config"] = {{"n", r.n},
                   {"k", r.k},
                   {"mode", r.exhaustive ? "exhaustive" : "sampled"},
                   {"epsilon", optional_json(r.epsilon)}};
  ordered_json results;
  if (r.exhaustive) {
    results["class_counts"] = r.class_counts;
    results["expected_count"] = r.expected_count;
    results["agreement_probability"] = optional_json(r.agreement_probability);
    results["conditional_max_deviation"] = optional_json(r.conditional_max_deviation);
  } else {
    results["samples"] = r.samples;
    results["agreement_events"] = r.agreement_events;
    results["chi_square_outputs"] = chi_json(r.chi_square_outputs);
    results["chi_square_agreed_outputs"] = chi_json(r.chi_square_agreed_outputs);
  }
  out["results"] = std::move(results);
  out["bounds"] = ordered_json::object();
  out["checks"] = {{"exact_uniform", r.exact_uniform}, {"passed", r.passed()}};
  return out;
}

ordered_json to_json(const std::vector<BoundReport>& rows) {
  ordered_json list = ordered_json::array();
  for (const auto& b : rows) {
    ordered_json row = {
        {"k", b.k},
        {"epsilon", b.epsilon},
        {"trivial", b.trivial},
        {"upper", b.upper},
        {"lower", optional_json(b.lower)},
        {"t", b.t},
        {"condition_met", b.condition_met},
    };
    if (b.r) row["r"] = *b.r;
    list.push_back(std::move(row));
  }
  const bool consistent = std::all_of(rows.begin(), rows.end(),
                                      [](const BoundReport& b) { return !b.lower || *b.lower <= b.upper; });
  ordered_json out;
  out["config"] = {{"rows", rows.size()}};
  out["results"] = {{"rows", std::move(list)}};
  out["bounds"] = ordered_json::object();
  out["checks"] = {{"lower_le_upper", consistent}};
  return out;
}

ordered_json to_json(const std::vector<std::pair<double, double>>& figure1) {
  ordered_json points = ordered_json::array();
  bool decreasing = true;
  for (std::size_t i = 0; i < figure1.size(); ++i) {
    points.push_back({{"epsilon", figure1[i].first}, {"extraction_ratio", figure1[i].second}});
    if (i > 0 && !(figure1[i].second < figure1[i - 1].second)) decreasing = false;
  }
  ordered_json out;
  out["config"] = {{"points", figure1.size()}};
  out["results"] = {{"points", std::move(points)}};
  out["bounds"] = ordered_json::object();
  out["checks"] = {{"monotone_decreasing", decreasing}};
  return out;
}

ordered_json to_json(const std::vector<SweepResult>& sweeps, const SweepConfig& config) {
  ordered_json rows = ordered_json::array();
  bool all = true;
  for (const auto& s : sweeps) {
    rows.push_back({{"check", s.check},
                    {"n", s.n},
                    {"epsilon", s.epsilon},
                    {"functions", s.functions},
                    {"max_violation", s.max_violation},
                    {"passed", s.passed}});
    all = all && s.passed;
  }
  ordered_json out;
  out["config"] = {{"dimensions", config.dimensions},
                   {"epsilons", config.epsilons},
                   {"functions", config.functions},
                   {"seed", config.seed},
                   {"tolerance", kSweepTolerance}};
  out["results"] = {{"sweeps", std::move(rows)}};
  out["bounds"] = ordered_json::object();
  out["checks"] = {{"all_passed", all}};
  return out;
}

std::string to_csv(const SimulationReport& r) {
  const auto& c = r.config;
  std::string out =
      "n,k,epsilon,trials,seed,protocol,agreements,trials_run,estimate,wilson_low,wilson_high,"
      "trivial_reference,upper_bound_ref,lower_bound_ref,chi_square_outputs_p,"
      "chi_square_agreed_outputs_p,entropy_bound_consistent,wall_time\n";
  out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", c.n, c.k,
                     format_real(c.epsilon), c.trials, c.seed, to_string(c.protocol), r.agreements,
                     r.trials_run, format_real(r.estimate), format_real(r.wilson_ci_95.low),
                     format_real(r.wilson_ci_95.high), format_real(r.trivial_reference),
                     format_real(r.upper_bound_ref), opt_real(r.lower_bound_ref),
                     chi_p(r.chi_square_outputs), chi_p(r.chi_square_agreed_outputs),
                     flag(r.entropy_bound_consistent), format_real(r.wall_time));
  return out;
}

std::string to_csv(const CoveringReport& r) {
  const auto& c = r.config;
  std::string out =
      "n,k,epsilon,trials,seed,covering_radius,unique_cover_events,estimate,wilson_low,"
      "wilson_high,analytic_target,decode_agreements,wall_time\n";
  out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", c.n, c.k, format_real(c.epsilon),
                     c.trials, c.seed, format_real(r.covering_radius), r.unique_cover_events,
                     format_real(r.estimate), format_real(r.wilson_ci_95.low),
                     format_real(r.wilson_ci_95.high), format_real(r.analytic_target),
                     r.decode_agreements, format_real(r.wall_time));
  return out;
}

std::string to_csv(const AuditReport& r) {
  std::string out =
      "n,k,mode,exact_uniform,expected_count,min_count,max_count,agreement_probability,"
      "conditional_max_deviation,samples,agreement_events,chi_square_outputs_p,"
      "chi_square_agreed_outputs_p,passed\n";
  std::string min_count;
  std::string max_count;
  if (!r.class_counts.empty()) {
    min_count = std::to_string(*std::min_element(r.class_counts.begin(), r.class_counts.end()));
    max_count = std::to_string(*std::max_element(r.class_counts.begin(), r.class_counts.end()));
  }
  out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.n, r.k,
                     r.exhaustive ? "exhaustive" : "sampled", flag(r.exact_uniform),
                     r.exhaustive ? std::to_string(r.expected_count) : std::string(), min_count,
                     max_count, opt_real(r.agreement_probability),
                     opt_real(r.conditional_max_deviation), r.samples, r.agreement_events,
                     chi_p(r.chi_square_outputs), chi_p(r.chi_square_agreed_outputs), flag(r.passed()));
  return out;
}

std::string to_csv(const std::vector<BoundReport>& rows) {
  const bool with_r = std::any_of(rows.begin(), rows.end(), [](const BoundReport& b) { return b.r.has_value(); });
  std::string out = with_r ? "k,epsilon,trivial,upper,lower,t,condition_met,r\n"
                           : "k,epsilon,trivial,upper,lower,t,condition_met\n";
  for (const auto& b : rows) {
    out += fmt::format("{},{},{},{},{},{},{}", b.k, format_real(b.epsilon), format_real(b.trivial),
                       format_real(b.upper), opt_real(b.lower), format_real(b.t), flag(b.condition_met));
    if (with_r) out += "," + opt_real(b.r);
    out += "\n";
  }
  return out;
}

std::string to_csv(const std::vector<std::pair<double, double>>& figure1) {
  std::string out = "epsilon,extraction_ratio\n";
  for (const auto& [eps, ratio] : figure1) out += format_real(eps) + "," + format_real(ratio) + "\n";
  return out;
}

std::string to_csv(const std::vector<SweepResult>& sweeps) {
  std::string out = "check,n,epsilon,functions,max_violation,passed\n";
  for (const auto& s : sweeps) {
    out += fmt::format("{},{},{},{},{},{}\n", s.check, s.n, format_real(s.epsilon), s.functions,
                       format_real(s.max_violation), flag(s.passed));
  }
  return out;
}

}  // namespace agree
