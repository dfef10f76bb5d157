#include <doctest.h>

#include <algorithm>
#include <array>

#include "generators.hpp"
#include "semnoma/scheduler.hpp"

using namespace semnoma;

TEST_SUITE("scheduler") {

TEST_CASE("bit user strongest pairs with the weakest semantic user") {
    const SlotPlan p = plan_slot({0.9, 0.5, 0.1});
    CHECK(p.mode == SlotMode::hetero_noma);
    CHECK(p.indicator_b);
    CHECK(p.indicator_s2);
    CHECK_FALSE(p.indicator_s1);
    CHECK(p.first_decoded == User::b);
    CHECK(p.second_decoded == User::s2);
}

TEST_CASE("semantic user stronger than the bit user resets to OMA") {
    const SlotPlan p = plan_slot({0.5, 0.9, 0.6});
    CHECK(p.mode == SlotMode::oma_bit);
    CHECK(p.indicator_b);
    CHECK_FALSE(p.indicator_s1);
    CHECK_FALSE(p.indicator_s2);
    CHECK_FALSE(p.second_decoded.has_value());
}

TEST_CASE("both semantic users paired") {
    const SlotPlan p = plan_slot({0.5, 0.9, 0.1});
    CHECK(p.mode == SlotMode::semantic_noma);
    CHECK(p.first_decoded == User::s1);
    CHECK(p.second_decoded == User::s2);
    CHECK_FALSE(p.indicator_b);

    const SlotPlan q = plan_slot({0.5, 0.1, 0.9});
    CHECK(q.mode == SlotMode::semantic_noma);
    CHECK(q.first_decoded == User::s2);
    CHECK(q.second_decoded == User::s1);
}

TEST_CASE("ties follow the fixed priority") {
    // All equal: strongest B, weakest S2, so B pairs with S2 and is not weaker.
    const SlotPlan all = plan_slot({1.0, 1.0, 1.0});
    CHECK(all.mode == SlotMode::hetero_noma);
    CHECK(all.second_decoded == User::s2);

    // Equal semantic users that are both strongest: S1 is strongest, weakest is B.
    const SlotPlan sem = plan_slot({0.1, 1.0, 1.0});
    CHECK(sem.mode == SlotMode::oma_bit);

    // B ties with S1 at the top: B counts as strongest.
    const SlotPlan top = plan_slot({1.0, 1.0, 0.2});
    CHECK(top.mode == SlotMode::hetero_noma);
    CHECK(top.second_decoded == User::s2);
}

TEST_CASE("plan check rejects broken plans") {
    SlotPlan p = plan_slot({0.9, 0.5, 0.1});
    CHECK_NOTHROW(p.check());
    p.indicator_s1 = true;
    CHECK_THROWS_AS(p.check(), std::logic_error);
}

TEST_CASE("property: fuzz over a million gain triples") {
    testing::Gen gen(31);
    std::array<std::size_t, 3> modes{};
    for (int i = 0; i < 1'000'000; ++i) {
        const ChannelRealization ch = gen.gains();
        const SlotPlan p = plan_slot(ch);
        REQUIRE_NOTHROW(p.check());
        ++modes[std::size_t(p.mode)];
        REQUIRE(p.active_count() <= 2);
        switch (p.mode) {
            case SlotMode::oma_bit: {
                REQUIRE(p.active_count() == 1);
                REQUIRE(p.indicator_b);
                // Reached only through the override: some semantic user beats B.
                REQUIRE(std::max(ch.gain_s1, ch.gain_s2) > ch.gain_b);
                break;
            }
            case SlotMode::hetero_noma: {
                REQUIRE(p.active_count() == 2);
                REQUIRE(p.first_decoded == User::b);
                REQUIRE(ch.gain_b >= ch.gain(*p.second_decoded));
                break;
            }
            case SlotMode::semantic_noma: {
                REQUIRE(p.active_count() == 2);
                REQUIRE(ch.gain(p.first_decoded) >= ch.gain(*p.second_decoded));
                REQUIRE(ch.gain_b <= std::max(ch.gain_s1, ch.gain_s2));
                break;
            }
        }
    }
    for (std::size_t m : modes) CHECK(m > 0);
}

TEST_CASE("property: plans are scale invariant") {
    testing::Gen gen(32);
    for (int i = 0; i < 100'000; ++i) {
        const ChannelRealization ch = gen.gains();
        // Powers of two keep ties exact under scaling.
        const double k = std::ldexp(1.0, gen.integer(-40, 40));
        const ChannelRealization scaled{ch.gain_b * k, ch.gain_s1 * k, ch.gain_s2 * k};
        REQUIRE(plan_slot(scaled) == plan_slot(ch));
    }
}

}
