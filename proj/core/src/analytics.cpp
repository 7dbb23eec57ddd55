#include "qcf/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcf {

void ProtocolParams::validate() const {
    if (k < 1 || k > kMaxPulses) {
        throw std::domain_error("pulse count K must lie in [1, " + std::to_string(kMaxPulses) +
                                "], got " + std::to_string(k));
    }
    source.validate();
}

AbortBreakdown honest_abort_breakdown(const ProtocolParams& p, const ChannelParams& ch) {
    p.validate();
    ch.validate();
    const double z = blank_probability(p.source, ch);
    const double d = ch.dark_count;
    const double r = (1.0 - d) * z;
    const double no_click = std::pow(r, static_cast<double>(p.k));

    // Geometric series sum_{i=1..K} (1-d)^{i-1} d Z^i = d Z (1 - r^K) / (1 - r),
    // with a direct sum when r is too close to 1 for the closed form.
    double dark_first;
    if (r > 1.0 - 1e-12) {
        dark_first = 0.0;
        double term = d * z;
        for (long i = 1; i <= p.k; ++i) {
            dark_first += term;
            term *= r;
        }
    } else {
        dark_first = d * z * (1.0 - no_click) / (1.0 - r);
    }

    const double signal_first = std::max(0.0, 1.0 - no_click - dark_first);
    return {no_click, dark_first, signal_first};
}

double honest_abort(const ProtocolParams& p, const ChannelParams& ch) {
    const AbortBreakdown b = honest_abort_breakdown(p, ch);
    const double h = b.abort_no_click() + b.abort_dark() + b.abort_noise(ch.noise);
    return std::clamp(h, 0.0, 1.0);
}

double alice_cheat(StateCoefficient a) {
    const double av = a.value();
    return (3.0 + 2.0 * std::sqrt(av * (1.0 - av))) / 4.0;
}

EventProbs event_probs(long k, SourceParams source) {
    if (k < 1 || k > kMaxPulses) {
        throw std::domain_error("pulse count K must lie in [1, " + std::to_string(kMaxPulses) +
                                "], got " + std::to_string(k));
    }
    const double p0 = poisson_pmf(source, 0);
    const double p1 = poisson_pmf(source, 1);
    const double p2 = poisson_pmf(source, 2);
    const double kd = static_cast<double>(k);

    EventProbs ev{};
    ev.a1 = std::pow(p0, kd);
    ev.a2 = std::pow(p0 + p1, kd) - ev.a1;
    ev.a3 = kd * p2 * std::pow(p0, kd - 1.0);
    ev.a4 = kd * p2 * (std::pow(p0 + p1, kd - 1.0) - std::pow(p0, kd - 1.0));
    ev.rest = std::max(0.0, 1.0 - ev.a1 - ev.a2 - ev.a3 - ev.a4);
    return ev;
}

double cheat_given_a4(StateCoefficient a) {
    const double av = a.value();
    return -2.0 * av * av + 4.0 * av - 1.0;
}

double bob_cheat_bound(const EventProbs& events, StateCoefficient a) {
    const double av = a.value();
    return events.a1 * 0.5 + (events.a2 + events.a3) * av + events.a4 * cheat_given_a4(a) +
           events.rest;
}

double bob_cheat_bound(const ProtocolParams& p) {
    p.validate();
    return bob_cheat_bound(event_probs(p.k, p.source), p.a);
}

double classical_bound(double honest_abort_probability) {
    if (!(honest_abort_probability >= 0.0 && honest_abort_probability <= 1.0)) {
        throw std::domain_error("honest abort probability must lie in [0, 1], got " +
                                std::to_string(honest_abort_probability));
    }
    return 1.0 - std::sqrt(honest_abort_probability / 2.0);
}

}  // namespace qcf
