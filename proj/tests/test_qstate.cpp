#include <doctest.h>

#include "qcf/qstate.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace qcf;

namespace {

// Test-side mixture construction: plain outer-product sums over the basis
// choice, independent of mixture_density's code path.
DensityMatrix reference_mixture(int c, double a, int photons) {
    const int dim = photons == 1 ? 2 : 4;
    DensityMatrix acc(dim);
    for (int alpha = 0; alpha < 2; ++alpha) {
        const double sign = alpha == 0 ? 1.0 : -1.0;
        std::array<double, 2> v{};
        if (c == 0) {
            v = {std::sqrt(a), sign * std::sqrt(1.0 - a)};
        } else {
            v = {std::sqrt(1.0 - a), -sign * std::sqrt(a)};
        }
        std::vector<double> w;
        if (photons == 1) {
            w = {v[0], v[1]};
        } else {
            w = {v[0] * v[0], v[0] * v[1], v[1] * v[0], v[1] * v[1]};
        }
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                acc.at(i, j) += 0.5 * w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
    }
    return acc;
}

double max_entry_diff(const DensityMatrix& x, const DensityMatrix& y) {
    double worst = 0.0;
    for (int i = 0; i < x.dim(); ++i)
        for (int j = 0; j < x.dim(); ++j)
            worst = std::max(worst, std::abs(x(i, j) - y(i, j)));
    return worst;
}

}  // namespace

TEST_CASE("state coefficient domain") {
    CHECK_NOTHROW(StateCoefficient(0.5));
    CHECK_NOTHROW(StateCoefficient(1.0));
    CHECK_THROWS_AS(StateCoefficient(0.4), std::domain_error);
    CHECK_THROWS_AS(StateCoefficient(1.0 + 1e-9), std::domain_error);
    CHECK_THROWS_AS(StateCoefficient(std::nan("")), std::domain_error);
}

TEST_CASE("state vector matches the protocol states") {
    const auto v00 = state_vector(0, 0, StateCoefficient(1.0));
    CHECK(v00[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v00[1] == doctest::Approx(0.0).epsilon(1e-15));

    const auto sym = state_vector(0, 0, StateCoefficient(0.5));
    CHECK(sym[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(sym[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

    // alpha = 1, c = 1, a = 0.9 -> (sqrt(0.1), sqrt(0.9))
    const auto v = state_vector(1, 1, StateCoefficient(0.9));
    CHECK(v[0] == doctest::Approx(std::sqrt(0.1)).epsilon(1e-15));
    CHECK(v[1] == doctest::Approx(std::sqrt(0.9)).epsilon(1e-15));

    CHECK_THROWS_AS(state_vector(2, 0, StateCoefficient(0.9)), std::domain_error);
    CHECK_THROWS_AS(state_vector(0, -1, StateCoefficient(0.9)), std::domain_error);
}

TEST_CASE("state vectors have unit norm and the two bit states are orthogonal") {
    for (double a = 0.5; a <= 1.0 + 1e-12; a += 0.01) {
        const StateCoefficient coeff(std::min(a, 1.0));
        for (int alpha = 0; alpha < 2; ++alpha) {
            const auto v0 = state_vector(alpha, 0, coeff);
            const auto v1 = state_vector(alpha, 1, coeff);
            CHECK(std::abs(v0[0] * v0[0] + v0[1] * v0[1] - 1.0) < 1e-12);
            CHECK(std::abs(v1[0] * v1[0] + v1[1] * v1[1] - 1.0) < 1e-12);
            CHECK(std::abs(v0[0] * v1[0] + v0[1] * v1[1]) < 1e-12);
        }
    }
}

TEST_CASE("single-photon mixtures are diagonal") {
    for (double a : {0.5, 0.6, 0.75, 0.9, 1.0}) {
        const DensityMatrix rho0 = mixture_density(0, StateCoefficient(a), 1);
        CHECK(rho0(0, 0) == doctest::Approx(a).epsilon(1e-14));
        CHECK(rho0(1, 1) == doctest::Approx(1.0 - a).epsilon(1e-14));
        CHECK(std::abs(rho0(0, 1)) < 1e-15);

        const DensityMatrix rho1 = mixture_density(1, StateCoefficient(a), 1);
        CHECK(rho1(0, 0) == doctest::Approx(1.0 - a).epsilon(1e-14));
        CHECK(rho1(1, 1) == doctest::Approx(a).epsilon(1e-14));
    }
    const DensityMatrix maximally_mixed = mixture_density(0, StateCoefficient(0.5), 1);
    CHECK(maximally_mixed(0, 0) == doctest::Approx(0.5));
    CHECK(maximally_mixed(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("two-photon mixtures match the explicit outer-product sum") {
    for (double a = 0.5; a <= 1.0 + 1e-12; a += 0.05) {
        const double av = std::min(a, 1.0);
        for (int c = 0; c < 2; ++c) {
            const DensityMatrix rho = mixture_density(c, StateCoefficient(av), 2);
            CHECK(max_entry_diff(rho, reference_mixture(c, av, 2)) < 1e-14);
            CHECK(rho.dim() == 4);
            CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
            CHECK(rho.min_eigenvalue() > -1e-12);
            CHECK(rho.max_asymmetry() < 1e-15);
            CHECK(is_valid_density(rho));
        }
    }
    CHECK_THROWS_AS(mixture_density(0, StateCoefficient(0.9), 3), std::domain_error);
    CHECK_THROWS_AS(mixture_density(0, StateCoefficient(0.9), 0), std::domain_error);
}

TEST_CASE("jacobi eigenvalues agree with trace and Frobenius invariants") {
    // A handful of symmetric 4x4s assembled from mixtures and differences.
    for (double a : {0.55, 0.7, 0.85, 0.97}) {
        const DensityMatrix m =
            mixture_density(0, StateCoefficient(a), 2) - mixture_density(1, StateCoefficient(a), 2) * 0.3;
        const auto lambda = m.eigenvalues();
        REQUIRE(lambda.size() == 4);
        double sum = 0.0, sq = 0.0, frob = 0.0;
        for (double l : lambda) {
            sum += l;
            sq += l * l;
        }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) frob += m(i, j) * m(i, j);
        CHECK(sum == doctest::Approx(m.trace()).epsilon(1e-12));
        CHECK(sq == doctest::Approx(frob).epsilon(1e-12));
        CHECK(std::is_sorted(lambda.begin(), lambda.end()));
    }
}

TEST_CASE("helstrom on single-photon mixtures equals a") {
    for (double a = 0.5; a <= 1.0 + 1e-12; a += 0.01) {
        const double av = std::min(a, 1.0);
        const DensityMatrix rho0 = mixture_density(0, StateCoefficient(av), 1);
        const DensityMatrix rho1 = mixture_density(1, StateCoefficient(av), 1);
        CHECK(std::abs(helstrom_success(rho0, rho1) - av) < 1e-10);
    }
}

TEST_CASE("helstrom on two-photon mixtures equals a") {
    for (double a = 0.5; a <= 1.0 + 1e-12; a += 0.01) {
        const double av = std::min(a, 1.0);
        const DensityMatrix rho0 = mixture_density(0, StateCoefficient(av), 2);
        const DensityMatrix rho1 = mixture_density(1, StateCoefficient(av), 2);
        CHECK(std::abs(helstrom_success(rho0, rho1) - av) < 1e-9);
    }
    const DensityMatrix r0 = mixture_density(0, StateCoefficient(0.9), 2);
    const DensityMatrix r1 = mixture_density(1, StateCoefficient(0.9), 2);
    CHECK(helstrom_success(r0, r1) == doctest::Approx(0.9).epsilon(1e-10));
}

TEST_CASE("helstrom edge cases") {
    const DensityMatrix rho = mixture_density(0, StateCoefficient(0.8), 1);
    CHECK(helstrom_success(rho, rho) == doctest::Approx(0.5).epsilon(1e-15));

    const DensityMatrix four = mixture_density(0, StateCoefficient(0.8), 2);
    CHECK_THROWS_AS(helstrom_success(rho, four), std::domain_error);

    // Inputs must be unit-trace and symmetric.
    CHECK_THROWS_AS(helstrom_success(rho * 2.0, rho), std::domain_error);
    DensityMatrix lopsided = rho;
    lopsided.at(0, 1) = 0.3;
    CHECK_THROWS_AS(helstrom_success(lopsided, rho), std::domain_error);
}

TEST_CASE("two-photon mixture difference has the known spectrum") {
    // rho0 - rho1 is diagonal outside the {|00>,|11>} block with
    // eigenvalues {-(2a-1), 0, 0, 2a-1}.
    for (double a : {0.5, 0.6, 0.75, 0.9, 1.0}) {
        const DensityMatrix diff = mixture_density(0, StateCoefficient(a), 2) -
                                   mixture_density(1, StateCoefficient(a), 2);
        const auto lambda = diff.eigenvalues();
        REQUIRE(lambda.size() == 4);
        const double gap = 2.0 * a - 1.0;
        CHECK(lambda[0] == doctest::Approx(-gap).epsilon(1e-12).scale(1.0));
        CHECK(lambda[1] == doctest::Approx(0.0).scale(1.0));
        CHECK(lambda[2] == doctest::Approx(0.0).scale(1.0));
        CHECK(lambda[3] == doctest::Approx(gap).epsilon(1e-12).scale(1.0));
    }
}
