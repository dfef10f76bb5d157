#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "semnoma/allocator.hpp"
#include "semnoma/channel.hpp"
#include "semnoma/semantic_model.hpp"

namespace semnoma {

double db_to_linear(double db);

struct RunConfig {
    std::uint64_t master_seed = 42;
    std::size_t n_realizations = 100'000;
    double p_max = 10.0;  // linear
    GeometryConfig geometry;
    LogisticParams logistic;
    SemanticConfig semantics;
    SolverConfig solver;
    /// Worker cap; 0 means hardware concurrency. Never affects results.
    unsigned max_threads = 0;

    ModelConfig model() const { return {logistic, semantics, geometry.noise_power}; }
    void validate() const;
};

struct ModeCounts {
    std::size_t oma_bit = 0;
    std::size_t hetero_noma = 0;
    std::size_t semantic_noma = 0;
    std::size_t time_shared = 0;  // OMA baseline realizations

    std::size_t total() const { return oma_bit + hetero_noma + semantic_noma + time_shared; }
    bool operator==(const ModeCounts&) const = default;
};

struct Participation {
    double b = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
};

/// A solver diagnostic tied to the realization that produced it.
struct SlotDiagnostic {
    std::uint64_t realization = 0;
    SlotStatus status = SlotStatus::ok;

    bool operator==(const SlotDiagnostic&) const = default;
};

struct ErgodicStats {
    double mean_se = 0.0;  // suts/s/Hz
    double mean_se_b_suts = 0.0;
    double mean_se_s1 = 0.0;
    double mean_se_s2 = 0.0;
    double mean_rate_b_bits = 0.0;  // bits/s/Hz
    double mean_power_b = 0.0;      // linear, inactive slots count as 0
    double mean_power_s1 = 0.0;
    double mean_power_s2 = 0.0;
    double participation_b = 0.0;
    double participation_s1 = 0.0;
    double participation_s2 = 0.0;
    std::size_t n_realizations = 0;
    ModeCounts mode_counts;

    /// Semantic-only slots in which neither user could pass the gate.
    std::size_t semantic_invalid_slots = 0;
    /// Total solver diagnostics (no_positive_se, residual_unmet).
    std::size_t diagnostic_count = 0;
    /// The first kMaxRecordedDiagnostics of them, in realization order.
    std::vector<SlotDiagnostic> diagnostics;

    static constexpr std::size_t kMaxRecordedDiagnostics = 32;

    Participation participation() const { return {participation_b, participation_s1, participation_s2}; }
    bool operator==(const ErgodicStats&) const = default;
};

/// Channel for realization `index`; must be a pure function of the index.
using ChannelSource = std::function<ChannelRealization(std::uint64_t index)>;

/// Placement and Rayleigh draws from child_stream(master_seed, index).
ChannelSource seeded_channels(std::uint64_t master_seed, const GeometryConfig& geom);

/// Schedules, allocates and averages n_realizations slots. Outputs are a pure
/// function of the config (and source): reduction runs in index order with
/// compensated summation regardless of worker count.
ErgodicStats run_hybrid(const RunConfig& cfg);
ErgodicStats run_hybrid(const RunConfig& cfg, const ChannelSource& source);

/// Time-shared OMA: user u transmits alone at full power for a fraction
/// proportional to its hybrid participation. Throws for all-zero participation.
ErgodicStats run_oma_baseline(const RunConfig& cfg, const Participation& participation);
ErgodicStats run_oma_baseline(const RunConfig& cfg, const Participation& participation,
                              const ChannelSource& source);

enum class SweepAxisKind { p_max_db, eps_th };
enum class Scheme { hybrid, oma };

const char* to_string(SweepAxisKind kind);
const char* to_string(Scheme scheme);

struct SweepAxis {
    SweepAxisKind kind = SweepAxisKind::p_max_db;
    std::vector<double> values;
};

struct SweepRow {
    double axis_value = 0.0;
    Scheme scheme = Scheme::hybrid;
    ErgodicStats stats;
};

/// One row per (axis value, scheme), axis-major. Every point reuses the base
/// master seed; OMA time fractions come from the hybrid run at the same point.
std::vector<SweepRow> sweep(const RunConfig& base, const SweepAxis& axis, std::span<const Scheme> schemes);

}  // namespace semnoma
