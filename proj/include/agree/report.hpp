#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "agree/bounds.hpp"
#include "agree/harness.hpp"

namespace agree {

// JSON reports share the top-level layout {config, results, bounds, checks}.
nlohmann::ordered_json to_json(const SimulationReport& report);
nlohmann::ordered_json to_json(const CoveringReport& report);
nlohmann::ordered_json to_json(const AuditReport& report);
nlohmann::ordered_json to_json(const std::vector<BoundReport>& rows);
nlohmann::ordered_json to_json(const std::vector<std::pair<double, double>>& figure1);
nlohmann::ordered_json to_json(const std::vector<SweepResult>& sweeps, const SweepConfig& config);

// CSV: header row, comma separated, reals with 17 significant digits.
std::string format_real(double value);
std::string to_csv(const SimulationReport& report);
std::string to_csv(const CoveringReport& report);
std::string to_csv(const AuditReport& report);
std::string to_csv(const std::vector<BoundReport>& rows);
std::string to_csv(const std::vector<std::pair<double, double>>& figure1);
std::string to_csv(const std::vector<SweepResult>& sweeps);

}  // namespace agree
