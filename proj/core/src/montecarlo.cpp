#include "semnoma/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"
#include "semnoma/scheduler.hpp"

namespace semnoma {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void RunConfig::validate() const {
    if (n_realizations < 1) throw std::invalid_argument("n_realizations must be at least 1");
    if (!std::isfinite(p_max) || p_max < 0.0) throw std::invalid_argument("p_max must be finite and non-negative");
    geometry.validate();
    logistic.validate();
    semantics.validate();
    solver.validate();
}

const char* to_string(SweepAxisKind kind) {
    return kind == SweepAxisKind::p_max_db ? "pmax_db" : "eps_th";
}

const char* to_string(Scheme scheme) { return scheme == Scheme::hybrid ? "hybrid" : "oma"; }

namespace {

// Neumaier summation.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct HybridSample {
    SlotMode mode = SlotMode::oma_bit;
    bool indicator_b = false;
    bool indicator_s1 = false;
    bool indicator_s2 = false;
    SlotOutcome outcome;
};

void record(ErgodicStats& stats, std::uint64_t index, SlotStatus status) {
    if (status == SlotStatus::semantic_invalid) {
        ++stats.semantic_invalid_slots;
    } else if (status != SlotStatus::ok) {
        ++stats.diagnostic_count;
        if (stats.diagnostics.size() < ErgodicStats::kMaxRecordedDiagnostics) {
            stats.diagnostics.push_back({index, status});
        }
    }
}

}  // namespace

ChannelSource seeded_channels(std::uint64_t master_seed, const GeometryConfig& geom) {
    return [master_seed, geom](std::uint64_t index) {
        RandomEngine rng = child_stream(master_seed, index);
        return draw_realization(rng, geom);
    };
}

ErgodicStats run_hybrid(const RunConfig& cfg) {
    return run_hybrid(cfg, seeded_channels(cfg.master_seed, cfg.geometry));
}

ErgodicStats run_hybrid(const RunConfig& cfg, const ChannelSource& source) {
    cfg.validate();
    const ModelConfig model = cfg.model();

    ErgodicStats stats;
    CompensatedSum se, se_b, se_s1, se_s2, bits_b, pw_b, pw_s1, pw_s2;
    std::size_t active_b = 0, active_s1 = 0, active_s2 = 0;

    detail::indexed_map_reduce<HybridSample>(
        cfg.n_realizations, cfg.max_threads,
        [&](std::size_t i) {
            const ChannelRealization ch = source(i);
            const SlotPlan plan = plan_slot(ch);
            return HybridSample{plan.mode, plan.indicator_b, plan.indicator_s1, plan.indicator_s2,
                                solve_slot(plan, ch, cfg.p_max, model, cfg.solver)};
        },
        [&](std::size_t i, const HybridSample& s) {
            const SlotOutcome& o = s.outcome;
            se.add(o.slot_se);
            se_b.add(s.indicator_b ? o.rate_b_suts : 0.0);
            se_s1.add(s.indicator_s1 ? o.rate_s1 : 0.0);
            se_s2.add(s.indicator_s2 ? o.rate_s2 : 0.0);
            bits_b.add(s.indicator_b ? o.rate_b_bits : 0.0);
            pw_b.add(o.alloc.p_b);
            pw_s1.add(o.alloc.p_s1);
            pw_s2.add(o.alloc.p_s2);
            active_b += s.indicator_b;
            active_s1 += s.indicator_s1;
            active_s2 += s.indicator_s2;
            switch (s.mode) {
                case SlotMode::oma_bit: ++stats.mode_counts.oma_bit; break;
                case SlotMode::hetero_noma: ++stats.mode_counts.hetero_noma; break;
                case SlotMode::semantic_noma: ++stats.mode_counts.semantic_noma; break;
            }
            record(stats, i, o.status);
        });

    const double n = double(cfg.n_realizations);
    stats.n_realizations = cfg.n_realizations;
    stats.mean_se = se.value() / n;
    stats.mean_se_b_suts = se_b.value() / n;
    stats.mean_se_s1 = se_s1.value() / n;
    stats.mean_se_s2 = se_s2.value() / n;
    stats.mean_rate_b_bits = bits_b.value() / n;
    stats.mean_power_b = pw_b.value() / n;
    stats.mean_power_s1 = pw_s1.value() / n;
    stats.mean_power_s2 = pw_s2.value() / n;
    stats.participation_b = double(active_b) / n;
    stats.participation_s1 = double(active_s1) / n;
    stats.participation_s2 = double(active_s2) / n;
    return stats;
}

ErgodicStats run_oma_baseline(const RunConfig& cfg, const Participation& participation) {
    return run_oma_baseline(cfg, participation, seeded_channels(cfg.master_seed, cfg.geometry));
}

ErgodicStats run_oma_baseline(const RunConfig& cfg, const Participation& participation,
                              const ChannelSource& source) {
    cfg.validate();
    for (double p : {participation.b, participation.s1, participation.s2}) {
        if (!std::isfinite(p) || p < 0.0) throw std::invalid_argument("participation fractions must be non-negative");
    }
    const double total = participation.b + participation.s1 + participation.s2;
    if (!(total > 0.0)) throw std::invalid_argument("run_oma_baseline: participation is all zero");
    const double tau_b = participation.b / total;
    const double tau_s1 = participation.s1 / total;
    const double tau_s2 = participation.s2 / total;

    const ModelConfig model = cfg.model();
    const double noise = model.noise_power;
    const double eps_th = model.semantics.eps_th;

    struct OmaSample {
        double bits_b, suts_b, s1, s2;
    };

    ErgodicStats stats;
    CompensatedSum se, se_b, se_s1, se_s2, bits_b;
    detail::indexed_map_reduce<OmaSample>(
        cfg.n_realizations, cfg.max_threads,
        [&](std::size_t i) {
            const ChannelRealization ch = source(i);
            const double bits = bit_rate(snr(cfg.p_max, ch.gain_b, noise));
            auto sem = [&](double g) {
                return semantic_rate(gated_similarity(snr(cfg.p_max, g, noise), model.logistic, eps_th),
                                     model.semantics);
            };
            return OmaSample{tau_b * bits, tau_b * equivalent_semantic_rate(bits, model.semantics),
                             tau_s1 * sem(ch.gain_s1), tau_s2 * sem(ch.gain_s2)};
        },
        [&](std::size_t, const OmaSample& s) {
            se.add(s.suts_b + s.s1 + s.s2);
            se_b.add(s.suts_b);
            se_s1.add(s.s1);
            se_s2.add(s.s2);
            bits_b.add(s.bits_b);
        });

    const double n = double(cfg.n_realizations);
    stats.n_realizations = cfg.n_realizations;
    stats.mean_se = se.value() / n;
    stats.mean_se_b_suts = se_b.value() / n;
    stats.mean_se_s1 = se_s1.value() / n;
    stats.mean_se_s2 = se_s2.value() / n;
    stats.mean_rate_b_bits = bits_b.value() / n;
    stats.mean_power_b = tau_b * cfg.p_max;
    stats.mean_power_s1 = tau_s1 * cfg.p_max;
    stats.mean_power_s2 = tau_s2 * cfg.p_max;
    stats.participation_b = tau_b;
    stats.participation_s1 = tau_s1;
    stats.participation_s2 = tau_s2;
    stats.mode_counts.time_shared = cfg.n_realizations;
    return stats;
}

std::vector<SweepRow> sweep(const RunConfig& base, const SweepAxis& axis, std::span<const Scheme> schemes) {
    if (axis.values.empty()) throw std::invalid_argument("sweep: axis has no values");
    const bool want_hybrid = std::find(schemes.begin(), schemes.end(), Scheme::hybrid) != schemes.end();
    const bool want_oma = std::find(schemes.begin(), schemes.end(), Scheme::oma) != schemes.end();

    std::vector<SweepRow> rows;
    for (double value : axis.values) {
        RunConfig cfg = base;
        if (axis.kind == SweepAxisKind::p_max_db) {
            cfg.p_max = db_to_linear(value);
        } else {
            cfg.semantics.eps_th = value;
        }
        const ErgodicStats hybrid = run_hybrid(cfg);
        if (want_hybrid) rows.push_back({value, Scheme::hybrid, hybrid});
        if (want_oma) rows.push_back({value, Scheme::oma, run_oma_baseline(cfg, hybrid.participation())});
    }
    return rows;
}

}  // namespace semnoma
