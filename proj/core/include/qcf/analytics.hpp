// analytics.hpp
// Closed forms for the honest abort probability, both players' optimal
// cheating probabilities, and the classical trade-off bound.

#pragma once

#include "qcf/channel.hpp"
#include "qcf/qstate.hpp"

namespace qcf {

inline constexpr long kMaxPulses = 1'000'000;

struct ProtocolParams {
    long k;               // number of pulses K per coin flip
    SourceParams source;  // mean photon number mu
    StateCoefficient a;   // state coefficient

    void validate() const;
};

// Probabilities of the photon-number configurations Bob can exploit.
//   a1: all pulses empty
//   a2: all pulses carry at most one photon, at least one single
//   a3: exactly one two-photon pulse, every other pulse empty
//   a4: exactly one two-photon pulse, the rest at most one photon,
//       at least one single
//   rest: anything richer; Bob is conceded a certain win there
struct EventProbs {
    double a1, a2, a3, a4, rest;

    double sum() const { return a1 + a2 + a3 + a4 + rest; }
};

// Split of an honest run by what produces Bob's first detector click.
// The three cases abort with probability 1, 1/4 and noise/2 respectively.
struct AbortBreakdown {
    double no_click;      // silence in all K slots
    double dark_first;    // first click is a dark count
    double signal_first;  // first click is a signal

    double abort_no_click() const { return no_click; }
    double abort_dark() const { return dark_first / 4.0; }
    double abort_noise(double noise) const { return signal_first * noise / 2.0; }
};

AbortBreakdown honest_abort_breakdown(const ProtocolParams& p, const ChannelParams& ch);

// H = Z^K (1-d)^K + (1/4) sum_{i=1..K} (1-d)^{i-1} d Z^i
//       + [1 - Z^K (1-d)^K - sum_{i=1..K} (1-d)^{i-1} d Z^i] e/2.
double honest_abort(const ProtocolParams& p, const ChannelParams& ch);

// Optimal cheating probability for Alice: (3 + 2 sqrt(a(1-a))) / 4.
double alice_cheat(StateCoefficient a);

EventProbs event_probs(long k, SourceParams source);

// Upper bound on Bob's cheating probability given the a4 configuration:
// -2a^2 + 4a - 1. Dominates the plain optimal-measurement value a.
double cheat_given_a4(StateCoefficient a);

// p_B <= a1/2 + (a2 + a3) a + a4 (-2a^2 + 4a - 1) + rest.
double bob_cheat_bound(const EventProbs& events, StateCoefficient a);
double bob_cheat_bound(const ProtocolParams& p);

// Best cheating probability of any classical protocol whose honest abort
// probability is H: 1 - sqrt(H/2).
double classical_bound(double honest_abort_probability);

}  // namespace qcf
