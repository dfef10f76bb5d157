#pragma once

#include <optional>

#include "semnoma/channel.hpp"

namespace semnoma {

enum class SlotMode {
    oma_bit,        // bit user alone at full power
    hetero_noma,    // bit user + one semantic user, bit-to-semantic SIC order
    semantic_noma,  // both semantic users, stronger decoded first
};

const char* to_string(SlotMode mode);

/// Who is active in a slot and the order in which receivers decode.
struct SlotPlan {
    bool indicator_b = false;
    bool indicator_s1 = false;
    bool indicator_s2 = false;
    SlotMode mode = SlotMode::oma_bit;
    /// Decoded while treating the partner's signal as noise.
    User first_decoded = User::b;
    /// Decoded interference-free after SIC; empty for OMA slots.
    std::optional<User> second_decoded;

    bool active(User user) const;
    int active_count() const;

    /// Throws std::logic_error if the plan breaks a pairing invariant.
    void check() const;

    bool operator==(const SlotPlan&) const = default;
};

/// Pairs the strongest user with the weakest one and applies the OMA override
/// and decoding order. Gain ties are broken B > S1 > S2 for "strongest" and
/// S2 > S1 > B for "weakest".
SlotPlan plan_slot(const ChannelRealization& ch);

}  // namespace semnoma
