// simulator.hpp
// Seeded Monte Carlo execution of the honest protocol under the channel
// model. Validates the closed-form abort probability and its per-cause
// split; identical seeds give identical reports regardless of threading.

#pragma once

#include "qcf/analytics.hpp"

#include <cstdint>
#include <optional>

namespace qcf {

enum class Verdict {
    Completed,
    AbortNoDetection,     // no click in any of the K slots
    AbortDarkCountCheck,  // first click was a dark count and the check tripped
    AbortNoiseCheck,      // first click was a flipped signal and the check tripped
};

const char* to_string(Verdict v);

struct RunOutcome {
    Verdict verdict = Verdict::AbortNoDetection;
    std::optional<int> coin;                    // b = c_j xor c'_j, present iff Completed
    std::optional<long> first_detection_index;  // 1-based j, absent iff nothing clicked
};

struct SimulationReport {
    long runs = 0;
    std::uint64_t seed = 0;
    long completed = 0;
    long no_detection = 0;
    long dark_count_check = 0;
    long noise_check = 0;
    long coin_zero = 0;
    long coin_one = 0;

    long aborts() const { return runs - completed; }
    double abort_rate() const;
    double std_error() const;  // sqrt(rate (1 - rate) / runs)
};

// One honest execution, pulse by pulse. A pulse clicks as signal with
// probability 1 - Z and as dark count with probability Z d_B; a pulse where
// both would fire counts as signal. Bob acts on his first click only.
RunOutcome run_honest(const ProtocolParams& p, const ChannelParams& ch, std::uint64_t rng_seed);

// Aggregates `runs` independent streams derived from `seed`. The tally is
// a sum over runs, so any thread count produces the same report.
SimulationReport estimate_honest_abort(const ProtocolParams& p, const ChannelParams& ch,
                                       long runs, std::uint64_t seed, int threads = 1);

}  // namespace qcf
