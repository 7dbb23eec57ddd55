// pipeline.hpp
// The reproduction pipeline: each headline claim implemented as a check
// that reports pass/fail with its wall time. Shared by the `reproduce`
// subcommand and the acceptance test binary.

#pragma once

#include "qcf/optimizer.hpp"
#include "qcf/oracle.hpp"
#include "qcf/simulator.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qcf::pipeline {

struct CheckResult {
    int criterion = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    double budget_seconds = 0.0;  // 0 means unconstrained
    std::string detail;
};

struct PipelineOptions {
    ChannelParams channel;  // length_km is overridden per grid cell
    long k_max = 15000;
    long mc_runs = 100000;
    std::uint64_t seed = 20260808;
    int threads = 4;
};

struct AdvantageCell {
    double length_km = 0.0;
    double h_target = 0.0;
    bool expected_advantage = false;
    SweepRow row;
    bool pass = false;
};

struct McCell {
    double length_km = 0.0;
    double h_target = 0.0;
    bool fallback = false;  // target below the achievable floor; closest point used
    long k = 0;
    double mu = 0.0;
    double analytic_h = 0.0;
    double empirical = 0.0;
    double std_error = 0.0;
    std::array<double, 3> expected_cause{};  // no-click, dark-check, noise-check aborts
    std::array<double, 3> observed_cause{};
    bool pass = false;
    std::string note;
};

// 1: fair point at 21 km / 1% abort lands in [0.89, 0.925] with advantage.
CheckResult check_headline(const PipelineOptions& opts);

// 2: advantage at every length in {1,5,10,15,21} km for targets
// {0.01, 0.015, 0.02}, and no advantage at 30 km.
CheckResult check_advantage_region(const PipelineOptions& opts,
                                   std::vector<AdvantageCell>* cells_out = nullptr);

// 3: every solution the advantage grid produced has K <= 15000.
CheckResult check_k_bound(const PipelineOptions& opts,
                          const std::vector<AdvantageCell>* cells = nullptr);

// 4: single- and two-photon optimal-measurement values equal a.
CheckResult check_helstrom_oracles(const PipelineOptions& opts);

// 5: conclusive-strategy search stays within [a, -2a^2+4a-1].
CheckResult check_conclusive_bound(const PipelineOptions& opts);

// 6: Monte Carlo abort rate and per-cause split match the closed forms.
CheckResult check_simulation_agreement(const PipelineOptions& opts,
                                       std::span<const std::pair<double, double>> grid,
                                       std::vector<McCell>* cells_out = nullptr);
std::vector<std::pair<double, double>> default_mc_grid();    // 3 x 3 acceptance grid
std::vector<std::pair<double, double>> reproduce_mc_grid();  // 3-point spot check

// 7: closed-form event probabilities match exhaustive enumeration.
CheckResult check_event_oracle(const PipelineOptions& opts);

// 8: fairness residuals, monotonicity, probability ranges, determinism.
CheckResult check_property_suite(const PipelineOptions& opts);

std::vector<CheckResult> run_acceptance(const PipelineOptions& opts, std::span<const int> criteria);

std::string format_result_line(const CheckResult& result);

}  // namespace qcf::pipeline
