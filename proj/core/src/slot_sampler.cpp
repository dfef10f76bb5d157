#include "semnoma/slot_sampler.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace semnoma {

std::vector<SampledSlot> sample_slots(std::uint64_t seed, SlotMode mode, std::size_t count,
                                      const ModelConfig& model, const SlotSamplerConfig& cfg) {
    if (mode == SlotMode::oma_bit) throw std::invalid_argument("sample_slots: OMA slots have no split to optimize");
    cfg.geometry.validate();

    const double noise = model.noise_power;
    const double eps_th = model.semantics.eps_th;
    auto feasible = [&](double p_max, double gain) {
        return gated_similarity(snr(p_max, gain, noise), model.logistic, eps_th) > 0.0;
    };

    std::vector<SampledSlot> slots;
    slots.reserve(count);
    RandomEngine rng = child_stream(seed, 0);
    std::uniform_real_distribution<double> budget_db(cfg.p_max_db_lo, cfg.p_max_db_hi);
    while (slots.size() < count) {
        SampledSlot s;
        s.ch = draw_realization(rng, cfg.geometry);
        s.p_max = std::pow(10.0, budget_db(rng) / 10.0);
        s.plan = plan_slot(s.ch);
        if (s.plan.mode != mode) continue;
        const bool any = mode == SlotMode::hetero_noma
                             ? feasible(s.p_max, s.ch.gain(*s.plan.second_decoded))
                             : feasible(s.p_max, s.ch.gain_s1) || feasible(s.p_max, s.ch.gain_s2);
        if (any) slots.push_back(s);
    }
    return slots;
}

}  // namespace semnoma
