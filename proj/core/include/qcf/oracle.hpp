// oracle.hpp
// Independent numerical verification of the discrimination claims the
// security analysis rests on: the single- and two-photon optimal
// measurement values and the conclusive-measurement upper bound.

#pragma once

#include "qcf/qstate.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace qcf {

struct DeviationReport {
    double max_deviation = 0.0;
    double worst_a = 0.0;
    std::size_t points = 0;
    double tolerance = 0.0;
    bool pass = false;
};

// Three-outcome measurement on a two-photon pulse: two rank-one conclusive
// projectors spanned by |00> and |11>, and an inconclusive remainder. On
// the inconclusive outcome the cheater falls back on a single-photon pulse.
struct ConclusiveStrategy {
    double conclusive_prob = 0.0;        // c
    double conclusive_accuracy = 0.5;    // gamma
    double inconclusive_accuracy = 0.5;  // best guess from the remainder outcome
    double combined_value = 0.0;         // c gamma + (1 - c) a
    double theta = 0.0;                  // angle of the "bit 0" projector
    double phi = 0.0;                    // angle of the "bit 1" projector
};

// Extremes observed over every feasible strategy the search evaluated.
// x = c gamma + (1 - c)/2 is the value of the strategy downgraded to a
// blind guess on the inconclusive outcome; the chain x <= a and
// value <= x + (2 - 2x)(a - 1/2) must hold pointwise.
struct SearchDiagnostics {
    double max_x_minus_a = -1.0;
    double max_chain_excess = -1.0;       // value - [x + (2-2x)(a-1/2)]
    double max_completeness_defect = 0.0; // entrywise |M0 + M1 + MX - I|
    double min_remainder_eigenvalue = 1.0;
    long evaluated = 0;
    long skipped = 0;
};

// For each a: optimal measurement on the single-photon mixtures must equal
// a within 1e-10.
DeviationReport verify_single_photon_helstrom(std::span<const double> a_grid);

// Same claim on the 4x4 two-photon mixtures, tolerance 1e-9.
DeviationReport verify_two_photon_helstrom(std::span<const double> a_grid);

// Grid search (refined once, ten times finer) over the projector angles,
// maximizing c gamma + (1 - c) a. Parameter points whose remainder is not
// positive semidefinite are skipped. The returned value never drops below
// a: doing nothing conclusive and falling back is always available.
ConclusiveStrategy search_conclusive_strategies(StateCoefficient a, int resolution = 200,
                                                SearchDiagnostics* diagnostics = nullptr);

struct ConclusiveBoundRow {
    double a;
    double best_value;
    double floor;  // the plain optimal-measurement strategy, = a
    double bound;  // -2a^2 + 4a - 1
    double gap;    // bound - best_value
};

struct ConclusiveBoundReport {
    std::vector<ConclusiveBoundRow> rows;
    double max_bound_excess = -1.0;  // max over rows of best_value - bound
    double max_floor_deficit = -1.0; // max over rows of floor - best_value
    bool pass = false;
};

// Checks a - 1e-9 <= best value <= -2a^2 + 4a - 1 + 1e-9 on the grid, and
// that the x-chain held for every strategy the searches evaluated.
ConclusiveBoundReport verify_conclusive_bound(std::span<const double> a_grid, int resolution = 200);

// Inclusive [lo, hi] grid with the given step.
std::vector<double> make_grid(double lo, double hi, double step);

}  // namespace qcf
