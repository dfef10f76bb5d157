#include "semnoma/scheduler.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace semnoma {

const char* to_string(SlotMode mode) {
    switch (mode) {
        case SlotMode::oma_bit: return "oma_bit";
        case SlotMode::hetero_noma: return "hetero_noma";
        case SlotMode::semantic_noma: return "semantic_noma";
    }
    return "?";
}

bool SlotPlan::active(User user) const {
    switch (user) {
        case User::b: return indicator_b;
        case User::s1: return indicator_s1;
        case User::s2: return indicator_s2;
    }
    return false;
}

int SlotPlan::active_count() const {
    return int(indicator_b) + int(indicator_s1) + int(indicator_s2);
}

void SlotPlan::check() const {
    const auto fail = [](const char* why) { throw std::logic_error(std::string("SlotPlan: ") + why); };
    if (active_count() == 0 || active_count() > 2) fail("one or two users must be active");
    switch (mode) {
        case SlotMode::oma_bit:
            if (!indicator_b || active_count() != 1) fail("OMA slot must serve B alone");
            if (first_decoded != User::b || second_decoded) fail("OMA slot decodes B only");
            break;
        case SlotMode::hetero_noma:
            if (!indicator_b || active_count() != 2) fail("hetero slot must pair B with one semantic user");
            if (first_decoded != User::b) fail("hetero slot must decode B first");
            if (!second_decoded || *second_decoded == User::b || !active(*second_decoded)) {
                fail("hetero slot must decode the active semantic user second");
            }
            break;
        case SlotMode::semantic_noma:
            if (indicator_b || !indicator_s1 || !indicator_s2) fail("semantic slot must pair S1 with S2");
            if (first_decoded == User::b || !second_decoded || *second_decoded == User::b ||
                *second_decoded == first_decoded) {
                fail("semantic slot must decode one semantic user after the other");
            }
            break;
    }
}

SlotPlan plan_slot(const ChannelRealization& ch) {
    // Listed in "strongest" tie priority; weakest scans in reverse.
    constexpr std::array<User, 3> order{User::b, User::s1, User::s2};

    User strongest = order[0];
    for (User u : order) {
        if (ch.gain(u) > ch.gain(strongest)) strongest = u;
    }
    User weakest = order[2];
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (ch.gain(*it) < ch.gain(weakest)) weakest = *it;
    }

    SlotPlan plan;
    if (strongest == User::b || weakest == User::b) {
        const User sem = strongest == User::b ? weakest : strongest;
        plan.indicator_b = true;
        plan.first_decoded = User::b;
        if (ch.gain(sem) > ch.gain_b) {
            plan.mode = SlotMode::oma_bit;
        } else {
            plan.mode = SlotMode::hetero_noma;
            plan.second_decoded = sem;
            (sem == User::s1 ? plan.indicator_s1 : plan.indicator_s2) = true;
        }
    } else {
        plan.mode = SlotMode::semantic_noma;
        plan.indicator_s1 = plan.indicator_s2 = true;
        plan.first_decoded = strongest;
        plan.second_decoded = weakest;
    }
    return plan;
}

}  // namespace semnoma
