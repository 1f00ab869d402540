#include "scanspectra/schedules.hpp"

#include <doctest.h>

#include <cmath>

using namespace scanspectra;

TEST_CASE("first appearances") {
    const FirstAppearanceStats identity = first_appearances(UpdateSequence{{0, 1, 2}, 3});
    CHECK(identity.first_positions == std::vector<long>{1, 2, 3});
    CHECK(identity.covered);
    CHECK(identity.sum_k == 6);
    CHECK(identity.cover_time == 3);

    const FirstAppearanceStats skewed = first_appearances(UpdateSequence{{2, 2, 0, 1}, 3});
    CHECK(skewed.first_positions == std::vector<long>{1, 3, 4});
    CHECK(skewed.appearance_order == std::vector<int>{2, 0, 1});
    CHECK(skewed.covered);
    CHECK(skewed.cover_time == 4);

    const FirstAppearanceStats stuck = first_appearances(UpdateSequence{{0, 0, 0}, 3});
    CHECK_FALSE(stuck.covered);
    CHECK(stuck.first_positions == std::vector<long>{1});

    CHECK_THROWS_AS(first_appearances(UpdateSequence{{0, 3}, 3}), std::invalid_argument);
}

TEST_CASE("first position is always 1 and positions strictly increase") {
    for (std::uint64_t stream = 0; stream < 50; ++stream) {
        const UpdateSequence seq = sample_covering_sequence(6, 42, stream);
        const FirstAppearanceStats stats = first_appearances(seq);
        REQUIRE(stats.covered);
        CHECK(stats.first_positions.front() == 1);
        CHECK(stats.first_positions.back() == static_cast<long>(seq.indices.size()));
        for (std::size_t i = 1; i < stats.first_positions.size(); ++i)
            CHECK(stats.first_positions[i] > stats.first_positions[i - 1]);
    }
}

TEST_CASE("certificates") {
    const Certificate accepted = certify_sequence(UpdateSequence{{0, 1}, 2});
    CHECK(accepted.cover_time == 2);
    CHECK(accepted.cover_threshold == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(accepted.sum_k == 3);
    CHECK(accepted.sum_threshold == 8.0);
    CHECK(accepted.accepted);
    CHECK(accepted.norm_bound(0.25) == doctest::Approx(1.0 - 0.25 / 64.0).epsilon(1e-15));

    const Certificate incomplete = certify_sequence(UpdateSequence{{0, 0, 0}, 3});
    CHECK_FALSE(incomplete.accepted);
    CHECK_FALSE(incomplete.covered);

    // Cover time 5 exceeds 2 n log n = 2.77 at n = 2.
    const Certificate late = certify_sequence(UpdateSequence{{0, 0, 0, 0, 1}, 2});
    CHECK(late.covered);
    CHECK_FALSE(late.accepted);
}

TEST_CASE("sampled covering sequences") {
    const UpdateSequence trivial = sample_covering_sequence(1, 99);
    CHECK(trivial.indices == std::vector<int>{0});

    // Deterministic per (seed, stream): regression pin.
    const UpdateSequence pinned = sample_covering_sequence(5, 1729, 0);
    CHECK(sequence_to_string(pinned) == "1 1 3 4 2 2 1 3 4 1 0");
    CHECK(sample_covering_sequence(5, 1729, 0).indices == pinned.indices);

    // Distinct seeds and streams give distinct sequences.
    CHECK(sample_covering_sequence(5, 1730, 0).indices != pinned.indices);
    CHECK(sample_covering_sequence(5, 1729, 1).indices != pinned.indices);

    // Every sampled sequence covers exactly at its end.
    for (std::uint64_t stream = 0; stream < 30; ++stream) {
        const UpdateSequence seq = sample_covering_sequence(7, 5, stream);
        const FirstAppearanceStats stats = first_appearances(seq);
        CHECK(stats.covered);
        CHECK(stats.cover_time == static_cast<long>(seq.indices.size()));
    }
}

TEST_CASE("coupon-collector moments") {
    const CouponMoments one = coupon_moments(1);
    CHECK(one.expected_sum_k == 1.0);
    CHECK(one.variance == 0.0);
    CHECK(one.expected_cover == 1.0);

    const CouponMoments two = coupon_moments(2);
    CHECK(two.expected_sum_k == 4.0);
    CHECK(two.variance == 2.0);
    CHECK(two.expected_cover == doctest::Approx(3.0).epsilon(1e-14));

    const CouponMoments three = coupon_moments(3);
    CHECK(three.expected_sum_k == 9.0);
    CHECK(three.variance_bound == 27.0);
    CHECK(three.variance <= three.variance_bound);

    CHECK_THROWS_AS(coupon_moments(0), std::invalid_argument);
}

TEST_CASE("sampled statistics track the exact moments") {
    const int n = 10;
    const int trials = 2000;
    const CouponMoments moments = coupon_moments(n);
    double sum = 0.0, sum_sq = 0.0, covers = 0.0;
    int accepted = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const UpdateSequence seq =
            sample_covering_sequence(n, 2024, static_cast<std::uint64_t>(trial));
        const FirstAppearanceStats stats = first_appearances(seq);
        sum += static_cast<double>(stats.sum_k);
        sum_sq += static_cast<double>(stats.sum_k) * static_cast<double>(stats.sum_k);
        covers += static_cast<double>(stats.cover_time);
        if (certify_sequence(seq).accepted) ++accepted;
    }
    const double mean = sum / trials;
    const double variance = (sum_sq - trials * mean * mean) / (trials - 1);
    const double se = std::sqrt(variance / trials);
    CHECK(std::abs(mean - moments.expected_sum_k) <= 3.0 * se);
    CHECK(variance <= moments.variance_bound * (1.0 + 3.0 / std::sqrt(trials)));
    CHECK(std::abs(covers / trials - moments.expected_cover) <=
          3.0 * std::sqrt(moments.variance_bound) / std::sqrt(trials) + 1.0);

    // Acceptance rate at least 1 - 2/n minus sampling noise.
    const double rate = static_cast<double>(accepted) / trials;
    const double rate_se = std::sqrt(rate * (1.0 - rate) / trials);
    CHECK(rate >= 1.0 - 2.0 / n - 3.0 * rate_se);
}

TEST_CASE("sequence string round trip") {
    const UpdateSequence seq = make_sequence({0, 2, 1, 2}, 3);
    CHECK(sequence_to_string(seq) == "0 2 1 2");
    CHECK(sequence_from_string("0 2 1 2", 3).indices == seq.indices);
    CHECK(sequence_from_string("", 3).indices.empty());
    CHECK_THROWS_AS(sequence_from_string("0 x", 3), std::invalid_argument);
    CHECK_THROWS_AS(sequence_from_string("0 7", 3), std::invalid_argument);
    CHECK_THROWS_AS(make_sequence({}, 3), std::invalid_argument);
}
