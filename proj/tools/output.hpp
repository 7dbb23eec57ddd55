// output.hpp
// Output formatting shared by the CLI subcommands: JSON documents that echo
// the full resolved configuration, and CSV datasets at fixed precision.

#pragma once

#include "qcf/analytics.hpp"
#include "qcf/optimizer.hpp"
#include "qcf/simulator.hpp"

#include <json.hpp>

#include <string>

namespace qcf::cli {

// Tabular numeric output is pinned to 15 significant digits.
std::string format_number(double value);

nlohmann::json channel_to_json(const ChannelParams& ch);
nlohmann::json fair_point_to_json(const FairPoint& fp);
nlohmann::json report_to_json(const SimulationReport& report);
nlohmann::json sweep_rows_to_json(const SweepDataset& dataset);

// Header length_km,H_target,K,mu,a,p_cheat,classical,advantage; one line per
// solved grid point, LF endings. Skipped points live in the JSON twin.
std::string sweep_to_csv(const SweepDataset& dataset);

// Single-row CSV views of the scalar reports.
std::string analyze_to_csv(const nlohmann::json& results);
std::string simulate_to_csv(const SimulationReport& report, double analytic_h);
std::string fair_point_to_csv(double length_km, double h_target, const FairPoint& fp);

void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const nlohmann::json& doc);

}  // namespace qcf::cli
