#include "semnoma/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace semnoma {

const char* to_string(User user) {
    switch (user) {
        case User::b: return "B";
        case User::s1: return "S1";
        case User::s2: return "S2";
    }
    return "?";
}

void GeometryConfig::validate() const {
    if (!(min_distance > 0.0 && cell_radius > min_distance)) {
        throw std::invalid_argument("geometry requires cell_radius > min_distance > 0");
    }
    if (!(pathloss_exp > 0.0)) throw std::invalid_argument("pathloss_exp must be positive");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power)) {
        throw std::invalid_argument("noise_power must be positive and finite");
    }
    if (!(ref_pathloss > 0.0 && ref_pathloss <= 1.0)) {
        throw std::invalid_argument("ref_pathloss must lie in (0, 1]");
    }
}

double ChannelRealization::gain(User user) const {
    switch (user) {
        case User::b: return gain_b;
        case User::s1: return gain_s1;
        case User::s2: return gain_s2;
    }
    return 0.0;
}

void ChannelRealization::validate() const {
    for (double g : {gain_b, gain_s1, gain_s2}) {
        if (!std::isfinite(g) || g < 0.0) {
            throw std::invalid_argument("channel gains must be finite and non-negative");
        }
    }
}

RandomEngine child_stream(std::uint64_t master_seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return RandomEngine(seq);
}

double distance_from_uniform(double u, const GeometryConfig& geom) {
    const double r_min2 = geom.min_distance * geom.min_distance;
    const double r_max2 = geom.cell_radius * geom.cell_radius;
    return std::sqrt(u * (r_max2 - r_min2) + r_min2);
}

double place_user(RandomEngine& rng, const GeometryConfig& geom) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return distance_from_uniform(unit(rng), geom);
}

double path_loss(double distance, const GeometryConfig& geom) {
    if (!(distance >= geom.min_distance)) {
        throw std::domain_error("path_loss: distance below min_distance");
    }
    return geom.ref_pathloss * std::pow(1.0 / distance, geom.pathloss_exp);
}

double draw_gain(RandomEngine& rng, double mean_gain) {
    std::exponential_distribution<double> unit_exp(1.0);
    return mean_gain * unit_exp(rng);
}

double snr(double power, double gain, double noise, double interference_power,
           double interference_gain) {
    return power * gain / (noise + interference_power * interference_gain);
}

ChannelRealization draw_realization(RandomEngine& rng, const GeometryConfig& geom) {
    const double d_b = place_user(rng, geom);
    const double d_s1 = place_user(rng, geom);
    const double d_s2 = place_user(rng, geom);
    ChannelRealization ch;
    ch.gain_b = draw_gain(rng, path_loss(d_b, geom));
    ch.gain_s1 = draw_gain(rng, path_loss(d_s1, geom));
    ch.gain_s2 = draw_gain(rng, path_loss(d_s2, geom));
    return ch;
}

}  // namespace semnoma
