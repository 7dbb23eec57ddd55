// channel.hpp
// Model of the experimental apparatus: attenuated-laser source statistics,
// fiber transmission, detector efficiency and dark counts.

#pragma once

namespace qcf {

// Apparatus parameters. Defaults are the standard telecom values used
// throughout the simulations.
struct ChannelParams {
    double k_loss = 1.0;       // receiver constant loss [dB]
    double beta = 0.2;         // fiber absorption coefficient [dB/km]
    double length_km = 21.0;   // channel length [km]
    double eta = 0.2;          // detector quantum efficiency
    double dark_count = 1e-5;  // dark count probability per slot
    double noise = 0.01;       // probability a detected signal reads out wrong

    void validate() const;  // throws std::domain_error naming the offending field
};

struct SourceParams {
    double mu = 0.0;  // mean photon number per pulse; 0 is a valid degenerate source

    void validate() const;
};

// System transmission efficiency F = 10^{-(beta L + k)/10}, in (0, 1].
double transmission(const ChannelParams& ch);

// P[pulse carries `photons` photons] = e^{-mu} mu^i / i!.
double poisson_pmf(SourceParams src, int photons);

// Z: probability that no signal arrives at Bob's detectors for one pulse,
// Z = p0 + (1 - p0)(1 - F eta). Detection is pulse-level: a nonempty pulse
// is seen with probability F eta regardless of its photon count.
double blank_probability(SourceParams src, const ChannelParams& ch);

// Poisson photon counts are sampled by CDF inversion, truncated here.
// For mu <= 2 the truncated tail mass is below 1e-40.
inline constexpr int kPoissonTruncation = 50;

// Maps one uniform draw in [0, 1) to a photon count.
int sample_photon_count(SourceParams src, double unit_uniform);

}  // namespace qcf
