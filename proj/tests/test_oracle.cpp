#include <doctest.h>

#include "qcf/analytics.hpp"
#include "qcf/oracle.hpp"

#include <cmath>
#include <numbers>

using namespace qcf;

TEST_CASE("grid construction") {
    const auto grid = make_grid(0.5, 1.0, 0.01);
    REQUIRE(grid.size() == 51);
    CHECK(grid.front() == doctest::Approx(0.5));
    CHECK(grid.back() == doctest::Approx(1.0));
}

TEST_CASE("single-photon helstrom verification passes on the full grid") {
    const auto grid = make_grid(0.5, 1.0, 0.01);
    const DeviationReport report = verify_single_photon_helstrom(grid);
    CHECK(report.pass);
    CHECK(report.points == grid.size());
    CHECK(report.max_deviation < 1e-10);
}

TEST_CASE("two-photon helstrom verification passes on the full grid") {
    const auto grid = make_grid(0.5, 1.0, 0.01);
    const DeviationReport report = verify_two_photon_helstrom(grid);
    CHECK(report.pass);
    CHECK(report.max_deviation < 1e-9);
}

TEST_CASE("helstrom verification endpoints have zero deviation") {
    const double endpoints[] = {0.5, 1.0};
    const DeviationReport single = verify_single_photon_helstrom(endpoints);
    CHECK(single.max_deviation < 1e-12);
    const DeviationReport two = verify_two_photon_helstrom(endpoints);
    CHECK(two.max_deviation < 1e-11);
}

TEST_CASE("conclusive strategy search at a = 0.9") {
    SearchDiagnostics diag;
    const ConclusiveStrategy s = search_conclusive_strategies(StateCoefficient(0.9), 200, &diag);

    CHECK(s.combined_value >= 0.9);
    CHECK(s.combined_value <= 0.98 + 1e-9);
    // The best family member measures {|00>, |11>} directly and falls back
    // on a single photon otherwise; its value is a^2 (3 - 2a).
    CHECK(s.combined_value == doctest::Approx(0.9 * 0.9 * (3.0 - 1.8)).epsilon(1e-12));
    CHECK(std::abs(s.theta - 0.0) < 1e-9);
    CHECK(std::abs(s.phi - std::numbers::pi / 2.0) < 1e-9);
    CHECK(s.conclusive_prob == doctest::Approx(0.9 * 0.9 + 0.1 * 0.1).epsilon(1e-10));
    CHECK(s.inconclusive_accuracy == doctest::Approx(0.5).epsilon(1e-9));

    CHECK(diag.evaluated > 0);
    CHECK(diag.skipped > 0);
    CHECK(diag.max_completeness_defect < 1e-10);
    CHECK(diag.min_remainder_eigenvalue > -1e-10);
    CHECK(diag.max_x_minus_a < 1e-9);
    CHECK(diag.max_chain_excess < 1e-9);
}

TEST_CASE("conclusive strategy search endpoints") {
    const ConclusiveStrategy indistinct = search_conclusive_strategies(StateCoefficient(0.5), 100);
    CHECK(indistinct.combined_value == doctest::Approx(0.5).epsilon(1e-10));

    const ConclusiveStrategy orthogonal = search_conclusive_strategies(StateCoefficient(1.0), 100);
    CHECK(orthogonal.combined_value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("searched value never beats the analytic bound") {
    for (double a : {0.55, 0.6, 0.7, 0.8, 0.9, 0.95}) {
        const ConclusiveStrategy s = search_conclusive_strategies(StateCoefficient(a), 120);
        const double bound = cheat_given_a4(StateCoefficient(a));
        CHECK(s.combined_value <= bound + 1e-9);
        CHECK(s.combined_value >= a - 1e-9);
        CHECK(s.combined_value == doctest::Approx(a * a * (3.0 - 2.0 * a)).epsilon(1e-10));
    }
}

TEST_CASE("conclusive-bound verification on the full grid") {
    const auto grid = make_grid(0.5, 1.0, 0.02);
    const ConclusiveBoundReport report = verify_conclusive_bound(grid, 200);
    CHECK(report.pass);
    CHECK(report.rows.size() == grid.size());
    CHECK(report.max_bound_excess <= 1e-9);
    CHECK(report.max_floor_deficit <= 1e-9);
    for (const ConclusiveBoundRow& row : report.rows) {
        CHECK(row.gap >= -1e-9);
        // Gap to the analytic bound is (a-1)^2 (2a-1) for this family.
        const double predicted = (row.a - 1.0) * (row.a - 1.0) * (2.0 * row.a - 1.0);
        CHECK(row.gap == doctest::Approx(predicted).epsilon(1e-8).scale(1.0));
    }
}
