#include <doctest.h>

#include "qcf/optimizer.hpp"
#include "qcf/simulator.hpp"

#include <cmath>
#include <sstream>
#include <string>

using namespace qcf;

namespace {

ChannelParams table_params(double length_km) {
    ChannelParams ch;
    ch.length_km = length_km;
    return ch;
}

std::string serialize(const SimulationReport& r) {
    std::ostringstream out;
    out << r.runs << ':' << r.seed << ':' << r.completed << ':' << r.no_detection << ':'
        << r.dark_count_check << ':' << r.noise_check << ':' << r.coin_zero << ':' << r.coin_one;
    return out.str();
}

}  // namespace

TEST_CASE("nothing can click with an empty source and no dark counts") {
    ChannelParams ch = table_params(10.0);
    ch.dark_count = 0.0;
    const ProtocolParams p{50, SourceParams{0.0}, StateCoefficient(0.9)};
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        const RunOutcome out = run_honest(p, ch, seed);
        CHECK(out.verdict == Verdict::AbortNoDetection);
        CHECK(!out.coin.has_value());
        CHECK(!out.first_detection_index.has_value());
    }
}

TEST_CASE("perfect apparatus completes on the first pulse") {
    ChannelParams perfect;
    perfect.k_loss = 0.0;
    perfect.beta = 0.0;
    perfect.length_km = 0.0;
    perfect.eta = 1.0;
    perfect.dark_count = 0.0;
    perfect.noise = 0.0;
    const ProtocolParams p{10, SourceParams{30.0}, StateCoefficient(0.9)};
    for (std::uint64_t seed = 1; seed <= 512; ++seed) {
        const RunOutcome out = run_honest(p, perfect, seed);
        CHECK(out.verdict == Verdict::Completed);
        REQUIRE(out.first_detection_index.has_value());
        CHECK(*out.first_detection_index == 1);
        REQUIRE(out.coin.has_value());
        CHECK((*out.coin == 0 || *out.coin == 1));
    }
}

TEST_CASE("runs are deterministic in the seed") {
    const ChannelParams ch = table_params(10.0);
    const ProtocolParams p{1000, SourceParams{0.01}, StateCoefficient(0.9)};
    for (std::uint64_t seed : {7ULL, 42ULL, 20260808ULL}) {
        const RunOutcome first = run_honest(p, ch, seed);
        const RunOutcome again = run_honest(p, ch, seed);
        CHECK(first.verdict == again.verdict);
        CHECK(first.coin == again.coin);
        CHECK(first.first_detection_index == again.first_detection_index);
    }
}

TEST_CASE("reports are identical across repeated runs and thread counts") {
    const ChannelParams ch = table_params(5.0);
    const ProtocolParams p{500, SourceParams{0.02}, StateCoefficient(0.9)};
    const SimulationReport base = estimate_honest_abort(p, ch, 20000, 99, 1);
    const SimulationReport repeat = estimate_honest_abort(p, ch, 20000, 99, 1);
    const SimulationReport threaded = estimate_honest_abort(p, ch, 20000, 99, 4);
    CHECK(serialize(base) == serialize(repeat));
    CHECK(serialize(base) == serialize(threaded));
    CHECK(base.runs == base.completed + base.no_detection + base.dark_count_check + base.noise_check);
    CHECK(base.completed == base.coin_zero + base.coin_one);
}

TEST_CASE("abort rate tracks the no-detection closed form when only loss matters") {
    ChannelParams quiet = table_params(10.0);
    quiet.dark_count = 0.0;
    quiet.noise = 0.0;
    const ProtocolParams p{60, SourceParams{0.4}, StateCoefficient(0.9)};
    const double expected = honest_abort(p, quiet);  // = Z^K here
    const SimulationReport report = estimate_honest_abort(p, quiet, 60000, 1234, 2);
    CHECK(report.dark_count_check == 0);
    CHECK(report.noise_check == 0);
    CHECK(std::abs(report.abort_rate() - expected) < 3.0 * report.std_error() + 1e-12);
}

TEST_CASE("abort rate and per-cause split match the analytic terms") {
    const ChannelParams ch = table_params(15.0);
    const long k = 2000;
    const SourceParams mu = solve_mu_for_abort(k, ch, 0.015);
    const ProtocolParams p{k, mu, StateCoefficient(0.9)};
    const long runs = 100000;
    const SimulationReport report = estimate_honest_abort(p, ch, runs, 4242, 4);

    const double h = honest_abort(p, ch);
    CHECK(std::abs(report.abort_rate() - h) < 3.0 * report.std_error() + 1e-12);

    const AbortBreakdown b = honest_abort_breakdown(p, ch);
    const double causes[3] = {b.abort_no_click(), b.abort_dark(), b.abort_noise(ch.noise)};
    const long counts[3] = {report.no_detection, report.dark_count_check, report.noise_check};
    for (int i = 0; i < 3; ++i) {
        const double se = std::sqrt(causes[i] * (1.0 - causes[i]) / runs);
        const double rate = static_cast<double>(counts[i]) / runs;
        CHECK(std::abs(rate - causes[i]) < 4.0 * se + 1e-12);
    }
}

TEST_CASE("dark-count-only runs abort a quarter of the time they click") {
    // Empty source, heavy dark counts: a single slot clicks dark with
    // probability d, and the check then trips with probability 1/4.
    ChannelParams ch = table_params(10.0);
    ch.dark_count = 0.3;
    const ProtocolParams p{1, SourceParams{0.0}, StateCoefficient(0.9)};
    const long runs = 200000;
    const SimulationReport report = estimate_honest_abort(p, ch, runs, 555, 2);
    CHECK(report.noise_check == 0);
    auto close_to = [&](double observed, double expected) {
        const double se = std::sqrt(expected * (1.0 - expected) / runs);
        return std::abs(observed - expected) < 4.0 * se;
    };
    CHECK(close_to(static_cast<double>(report.no_detection) / runs, 0.7));
    CHECK(close_to(static_cast<double>(report.dark_count_check) / runs, 0.3 / 4.0));
    CHECK(close_to(static_cast<double>(report.completed) / runs, 0.3 * 3.0 / 4.0));
}

TEST_CASE("outcome fields follow the verdict") {
    // Mixed-verdict regime: every verdict appears, and the optional fields
    // are present exactly when they should be.
    ChannelParams ch = table_params(21.0);
    ch.dark_count = 2e-3;
    ch.noise = 0.2;
    const ProtocolParams p{40, SourceParams{0.05}, StateCoefficient(0.9)};
    int seen[4] = {0, 0, 0, 0};
    for (std::uint64_t seed = 0; seed < 4000; ++seed) {
        const RunOutcome out = run_honest(p, ch, seed);
        seen[static_cast<int>(out.verdict)] += 1;
        CHECK(out.coin.has_value() == (out.verdict == Verdict::Completed));
        CHECK(out.first_detection_index.has_value() ==
              (out.verdict != Verdict::AbortNoDetection));
        if (out.first_detection_index) {
            CHECK(*out.first_detection_index >= 1);
            CHECK(*out.first_detection_index <= 40);
        }
    }
    for (int count : seen) CHECK(count > 0);
}

TEST_CASE("completed runs produce a fair coin") {
    const ChannelParams ch = table_params(5.0);
    const long k = 800;
    const SourceParams mu = solve_mu_for_abort(k, ch, 0.02);
    const ProtocolParams p{k, mu, StateCoefficient(0.9)};
    const SimulationReport report = estimate_honest_abort(p, ch, 100000, 31337, 4);
    REQUIRE(report.completed > 1000);
    // One-degree chi-square against uniformity at significance 0.001.
    const double n0 = static_cast<double>(report.coin_zero);
    const double n1 = static_cast<double>(report.coin_one);
    const double chi2 = (n0 - n1) * (n0 - n1) / (n0 + n1);
    CHECK(chi2 < 10.828);
}

TEST_CASE("verdict names") {
    CHECK(std::string(to_string(Verdict::Completed)) == "completed");
    CHECK(std::string(to_string(Verdict::AbortNoDetection)) == "abort_no_detection");
    CHECK(std::string(to_string(Verdict::AbortDarkCountCheck)) == "abort_dark_count_check");
    CHECK(std::string(to_string(Verdict::AbortNoiseCheck)) == "abort_noise_check");
}
