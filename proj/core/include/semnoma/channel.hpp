#pragma once

#include <cstdint>
#include <random>

namespace semnoma {

enum class User : std::uint8_t { b, s1, s2 };

const char* to_string(User user);

/// Cell geometry, distance-dependent path loss and receiver noise. All
/// quantities are linear; conversions from dB happen at the I/O boundary.
struct GeometryConfig {
    double cell_radius = 100.0;   // m
    double ref_pathloss = 1e-3;   // linear gain at 1 m (-30 dB)
    double pathloss_exp = 4.0;
    double noise_power = 1e-9;    // sigma^2 (-90 dB)
    double min_distance = 1.0;    // m

    void validate() const;

    bool operator==(const GeometryConfig&) const = default;
};

/// Per-slot linear power gains |h|^2 for the bit user and both semantic users.
struct ChannelRealization {
    double gain_b = 0.0;
    double gain_s1 = 0.0;
    double gain_s2 = 0.0;

    double gain(User user) const;
    void validate() const;

    bool operator==(const ChannelRealization&) const = default;
};

using RandomEngine = std::mt19937_64;

/// Independent stream for realization `index` of a run seeded with
/// `master_seed`. Streams depend only on the pair, never on scheduling.
RandomEngine child_stream(std::uint64_t master_seed, std::uint64_t index);

/// Maps u in [0, 1] to a radius that is uniform in area over the annulus
/// [min_distance, cell_radius].
double distance_from_uniform(double u, const GeometryConfig& geom);

double place_user(RandomEngine& rng, const GeometryConfig& geom);

/// ref_pathloss * d^-beta. Throws std::domain_error for d < min_distance.
double path_loss(double distance, const GeometryConfig& geom);

/// Rayleigh amplitude fading: the power gain is exponential with mean `mean_gain`.
double draw_gain(RandomEngine& rng, double mean_gain);

/// power * gain / (noise + interference_power * interference_gain).
double snr(double power, double gain, double noise, double interference_power = 0.0,
           double interference_gain = 0.0);

/// Places the three users and draws their fading, in the order B, S1, S2.
ChannelRealization draw_realization(RandomEngine& rng, const GeometryConfig& geom);

}  // namespace semnoma
