#include "qcf/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcf {

namespace {

void require_nonnegative(double v, const char* name) {
    if (!(v >= 0.0)) {
        throw std::domain_error(std::string(name) + " must be >= 0, got " + std::to_string(v));
    }
}

void require_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
    }
}

}  // namespace

void ChannelParams::validate() const {
    require_nonnegative(k_loss, "k_loss");
    require_nonnegative(beta, "beta");
    require_nonnegative(length_km, "length_km");
    require_probability(eta, "eta");
    require_probability(dark_count, "dark_count");
    require_probability(noise, "noise");
}

void SourceParams::validate() const {
    require_nonnegative(mu, "mu");
}

double transmission(const ChannelParams& ch) {
    ch.validate();
    return std::pow(10.0, -(ch.beta * ch.length_km + ch.k_loss) / 10.0);
}

double poisson_pmf(SourceParams src, int photons) {
    src.validate();
    if (photons < 0) {
        throw std::domain_error("photon count must be >= 0, got " + std::to_string(photons));
    }
    if (src.mu == 0.0) {
        return photons == 0 ? 1.0 : 0.0;
    }
    return std::exp(-src.mu + photons * std::log(src.mu) - std::lgamma(photons + 1.0));
}

double blank_probability(SourceParams src, const ChannelParams& ch) {
    const double p0 = poisson_pmf(src, 0);
    return p0 + (1.0 - p0) * (1.0 - transmission(ch) * ch.eta);
}

int sample_photon_count(SourceParams src, double unit_uniform) {
    double cdf = 0.0;
    for (int i = 0; i < kPoissonTruncation; ++i) {
        cdf += poisson_pmf(src, i);
        if (unit_uniform < cdf) return i;
    }
    return kPoissonTruncation;
}

}  // namespace qcf
