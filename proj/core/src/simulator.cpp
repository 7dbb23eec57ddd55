#include "qcf/simulator.hpp"

#include "qcf/rng.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace qcf {

namespace {

// Poisson CDF table so the per-pulse photon draw is one uniform and a
// short scan; matches sample_photon_count exactly.
struct PulseModel {
    std::array<double, kPoissonTruncation> cdf;
    double detect_given_nonempty;  // F eta
    double dark_count;
    double noise;

    PulseModel(const SourceParams& src, const ChannelParams& ch)
        : detect_given_nonempty(transmission(ch) * ch.eta),
          dark_count(ch.dark_count),
          noise(ch.noise) {
        double acc = 0.0;
        for (int i = 0; i < kPoissonTruncation; ++i) {
            acc += poisson_pmf(src, i);
            cdf[static_cast<std::size_t>(i)] = acc;
        }
    }

    int sample_photons(double u) const {
        for (int i = 0; i < kPoissonTruncation; ++i) {
            if (u < cdf[static_cast<std::size_t>(i)]) return i;
        }
        return kPoissonTruncation;
    }
};

RunOutcome run_one(const PulseModel& model, long k, SplitMix64& rng) {
    for (long i = 1; i <= k; ++i) {
        const int photons = model.sample_photons(rng.next_unit());
        const bool signal = photons > 0 && rng.bernoulli(model.detect_given_nonempty);
        const bool dark = rng.bernoulli(model.dark_count);
        if (!signal && !dark) continue;

        // First click; a simultaneous signal and dark count counts as signal.
        const int alice_bit = rng.next_bit();
        const int bob_bit = rng.next_bit();
        const bool basis_match = rng.next_bit() != 0;  // alpha'_j == alpha_j
        if (signal) {
            const bool flipped = rng.bernoulli(model.noise);
            if (basis_match && flipped) {
                return {Verdict::AbortNoiseCheck, std::nullopt, i};
            }
        } else {
            const bool contradicts = rng.next_bit() != 0;  // dark outcome is random
            if (basis_match && contradicts) {
                return {Verdict::AbortDarkCountCheck, std::nullopt, i};
            }
        }
        return {Verdict::Completed, alice_bit ^ bob_bit, i};
    }
    return {Verdict::AbortNoDetection, std::nullopt, std::nullopt};
}

struct Tally {
    long completed = 0, no_detection = 0, dark = 0, noise = 0, coin_zero = 0, coin_one = 0;

    void add(const RunOutcome& out) {
        switch (out.verdict) {
            case Verdict::Completed:
                ++completed;
                (*out.coin == 0 ? coin_zero : coin_one) += 1;
                break;
            case Verdict::AbortNoDetection: ++no_detection; break;
            case Verdict::AbortDarkCountCheck: ++dark; break;
            case Verdict::AbortNoiseCheck: ++noise; break;
        }
    }

    void merge(const Tally& t) {
        completed += t.completed;
        no_detection += t.no_detection;
        dark += t.dark;
        noise += t.noise;
        coin_zero += t.coin_zero;
        coin_one += t.coin_one;
    }
};

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Completed: return "completed";
        case Verdict::AbortNoDetection: return "abort_no_detection";
        case Verdict::AbortDarkCountCheck: return "abort_dark_count_check";
        case Verdict::AbortNoiseCheck: return "abort_noise_check";
    }
    return "unknown";
}

double SimulationReport::abort_rate() const {
    return runs > 0 ? static_cast<double>(aborts()) / static_cast<double>(runs) : 0.0;
}

double SimulationReport::std_error() const {
    if (runs <= 0) return 0.0;
    const double rate = abort_rate();
    return std::sqrt(rate * (1.0 - rate) / static_cast<double>(runs));
}

RunOutcome run_honest(const ProtocolParams& p, const ChannelParams& ch, std::uint64_t rng_seed) {
    p.validate();
    ch.validate();
    const PulseModel model(p.source, ch);
    SplitMix64 rng(rng_seed);
    return run_one(model, p.k, rng);
}

SimulationReport estimate_honest_abort(const ProtocolParams& p, const ChannelParams& ch,
                                       long runs, std::uint64_t seed, int threads) {
    p.validate();
    ch.validate();
    if (runs < 1) throw std::domain_error("runs must be >= 1, got " + std::to_string(runs));
    if (threads < 1) threads = 1;
    const PulseModel model(p.source, ch);

    auto worker = [&](long begin, long end, Tally& tally) {
        for (long i = begin; i < end; ++i) {
            SplitMix64 rng = run_stream(seed, static_cast<std::uint64_t>(i));
            tally.add(run_one(model, p.k, rng));
        }
    };

    Tally total;
    if (threads == 1) {
        worker(0, runs, total);
    } else {
        std::vector<Tally> parts(static_cast<std::size_t>(threads));
        std::vector<std::thread> pool;
        const long chunk = (runs + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const long begin = t * chunk;
            const long end = std::min(runs, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end, std::ref(parts[static_cast<std::size_t>(t)]));
        }
        for (auto& th : pool) th.join();
        for (const Tally& t : parts) total.merge(t);
    }

    SimulationReport report;
    report.runs = runs;
    report.seed = seed;
    report.completed = total.completed;
    report.no_detection = total.no_detection;
    report.dark_count_check = total.dark;
    report.noise_check = total.noise;
    report.coin_zero = total.coin_zero;
    report.coin_one = total.coin_one;
    return report;
}

}  // namespace qcf
