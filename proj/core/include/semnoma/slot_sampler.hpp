#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "semnoma/allocator.hpp"
#include "semnoma/channel.hpp"
#include "semnoma/scheduler.hpp"

namespace semnoma {

/// A two-user slot whose power split is a nontrivial optimization problem.
struct SampledSlot {
    ChannelRealization ch;
    SlotPlan plan;
    double p_max = 0.0;  // linear
};

struct SlotSamplerConfig {
    GeometryConfig geometry;
    double p_max_db_lo = 0.0;
    double p_max_db_hi = 20.0;
};

/// Draws `count` slots of the given two-user mode from the cell model, with a
/// budget uniform in dB. A draw is kept only if at least one of its semantic
/// users passes the gate when given the whole budget; otherwise the optimum is
/// trivially an endpoint.
std::vector<SampledSlot> sample_slots(std::uint64_t seed, SlotMode mode, std::size_t count,
                                      const ModelConfig& model, const SlotSamplerConfig& cfg = {});

}  // namespace semnoma
