// optimizer.hpp
// Fairness solving (p_A = p_B), abort-target inversion for mu, and the
// (K, mu, a) search minimizing the cheating probability at a target honest
// abort level. Also produces the figure sweep datasets.

#pragma once

#include "qcf/analytics.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcf {

inline constexpr double kFairnessTol = 1e-9;
inline constexpr double kAbortTol = 1e-8;
inline constexpr int kMaxBisectionIters = 200;

// The cheating curves do not cross: p_B stays below 0.75 on the whole
// coefficient range (happens when the all-empty configuration dominates).
struct NoFairPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The abort target is outside [h at mu_max, h at mu_min].
struct TargetUnreachableError : std::runtime_error {
    TargetUnreachableError(const std::string& msg, double target_in, double h_min_in,
                           double h_max_in)
        : std::runtime_error(msg), target(target_in), h_min(h_min_in), h_max(h_max_in) {}

    double target;
    double h_min;  // smallest achievable honest abort on the bracket
    double h_max;  // largest achievable honest abort on the bracket
};

struct FairPoint {
    ProtocolParams params;
    double p_cheat;   // = p_A = p_B at the fair coefficient
    double h;         // achieved honest abort probability
    double classical; // classical_bound at the target abort level
    bool advantage;   // p_cheat < classical
};

struct OptimizeOptions {
    long k_max = 15000;
    int schedule_density = 1;  // geometric K points per doubling
    double mu_min = 1e-4;
    double mu_max = 2.0;
};

// Bisection for alice_value(a) = bob_value(a) on [0.5, 1]; alice_value must
// be decreasing and bob_value non-decreasing. Residual below kFairnessTol.
double solve_fair_crossing(const std::function<double(double)>& alice_value,
                           const std::function<double(double)>& bob_value);

StateCoefficient solve_fair_a(long k, SourceParams source);

SourceParams solve_mu_for_abort(long k, const ChannelParams& ch, double h_target,
                                double mu_min = 1e-4, double mu_max = 2.0);

// Scans K geometrically up to k_max, then refines around the best K
// (+/- 25% at step max(1, K/50)); per K solves mu from the abort target and
// the fair coefficient. K values where either solve fails are skipped.
FairPoint optimize(const ChannelParams& ch, double h_target, const OptimizeOptions& opts = {});

struct SweepRow {
    double length_km = 0.0;
    double h_target = 0.0;
    bool solved = false;
    long k = 0;
    double mu = 0.0;
    double a = 0.0;
    double p_cheat = 0.0;
    double classical = 0.0;
    bool advantage = false;
    std::string error;  // cause when the grid point was skipped
};

struct SweepDataset {
    int figure_id = 0;
    std::vector<SweepRow> rows;
};

// One row per (length, target abort) grid point, K re-optimized per point.
// The same row schema serves all three figures: (mu, H) curves, (H, p)
// against the classical curve, and (H, a).
SweepDataset sweep_figure(int figure_id, const ChannelParams& base,
                          std::span<const double> lengths, std::span<const double> h_targets,
                          const OptimizeOptions& opts = {});

std::vector<double> default_figure_lengths(int figure_id);
std::vector<double> default_figure_h_grid(int figure_id);

}  // namespace qcf
