#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

#include "truncprice/stp_lab.hpp"

using namespace truncprice;

namespace {

/// Replays a fixed word so the toss sequence is known in advance.
struct FixedBits {
    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type word;
    result_type operator()() { return word; }
};

} // namespace

TEST(SimulatePlay, FirstTossHead) {
    FixedBits rng{0b1};
    const auto r = simulate_play(rng);
    EXPECT_EQ(r.payout, 2.0);
    EXPECT_EQ(r.tosses, 1u);
    EXPECT_FALSE(r.cap_hit);
}

TEST(SimulatePlay, HeadOnThirdToss) {
    FixedBits rng{0b100};
    EXPECT_EQ(simulate_play(rng).payout, 8.0);
}

TEST(SimulatePlay, CapHitIsReported) {
    FixedBits none{0};
    const auto r = simulate_play(none);
    EXPECT_TRUE(r.cap_hit);
    EXPECT_EQ(r.payout, std::ldexp(1.0, 62));

    FixedBits late{std::uint64_t{1} << 9}; // head on toss 10
    const auto capped = simulate_play(late, 5);
    EXPECT_TRUE(capped.cap_hit);
    EXPECT_EQ(capped.payout, 32.0);
}

TEST(SimulatePlay, PayoutIsPowerOfTwoInRange) {
    SimulationEngine rng(1);
    for (int i = 0; i < 100000; ++i) {
        const auto r = simulate_play(rng);
        ASSERT_GE(r.payout, 2.0);
        ASSERT_LE(r.payout, std::ldexp(1.0, 62));
        int exp = 0;
        ASSERT_EQ(std::frexp(r.payout, &exp), 0.5);
    }
}

TEST(SimulatePlay, FrequencyOfPayoutTwo) {
    SimulationEngine rng(20240101);
    constexpr int n = 1'000'000;
    int twos = 0;
    for (int i = 0; i < n; ++i) twos += simulate_play(rng).payout == 2.0;
    const double freq = static_cast<double>(twos) / n;
    EXPECT_GE(freq, 0.498);
    EXPECT_LE(freq, 0.502);
}

TEST(SimulateSession, SinglePlay) {
    const auto rep = simulate_session({42, 1});
    EXPECT_EQ(rep.mean_payout, rep.total_payout);
    EXPECT_EQ(rep.max_single_payout, rep.total_payout);
    EXPECT_EQ(rep.generator, "mt19937_64");
    EXPECT_EQ(rep.seed, 42u);
}

TEST(SimulateSession, Deterministic) {
    EXPECT_EQ(simulate_session({7, 1024}), simulate_session({7, 1024}));
    EXPECT_NE(simulate_session({7, 1024}).total_payout, simulate_session({8, 1024}).total_payout);
}

TEST(SimulateSession, MeanIsTotalOverPlays) {
    const auto rep = simulate_session({3, 5000});
    EXPECT_EQ(rep.mean_payout, rep.total_payout / 5000.0);
}

TEST(SimulateSession, ValidatesConfig) {
    EXPECT_THROW(simulate_session({1, 0}), Error);
    EXPECT_THROW(simulate_session({1, 10, 0}), Error);
    EXPECT_THROW(simulate_session({1, 10, 63}), Error);
}

TEST(SimulateSessions, IndependentOfThreadCount) {
    const auto one = simulate_sessions(9, 17, 256, kMaxTossCap, 1);
    const auto four = simulate_sessions(9, 17, 256, kMaxTossCap, 4);
    EXPECT_EQ(one, four);
    EXPECT_EQ(one[3], simulate_session({derive_seed(9, 3), 256}));
}

TEST(SimulateSessions, MedianOfMeansNearFellerFee) {
    // Median over 200 sessions of 1024 plays; Feller's fee is 10.
    std::vector<double> means;
    for (const auto& s : simulate_sessions(1, 200, 1024)) means.push_back(s.mean_payout);
    const double m = median(means);
    EXPECT_GE(m, 7.0);
    EXPECT_LE(m, 14.0);
}

TEST(SimulateSessions, FellerRatioAtTwoToSixteen) {
    std::vector<double> ratios;
    for (const auto& s : simulate_sessions(77, 64, 1u << 16)) ratios.push_back(s.mean_payout / 16.0);
    const double m = median(ratios);
    EXPECT_GE(m, 0.7);
    EXPECT_LE(m, 1.3);
}

TEST(Median, OddAndEven) {
    EXPECT_EQ(median({3, 1, 2}), 2.0);
    EXPECT_EQ(median({4, 1, 3, 2}), 2.5);
    EXPECT_THROW(median({}), Error);
}

TEST(FellerFee, Values) {
    EXPECT_EQ(feller_fair_fee(1024), 10.0);
    EXPECT_EQ(feller_fair_fee(2048), 11.0);
    EXPECT_EQ(feller_fair_fee(1), 0.0);
    EXPECT_THROW(feller_fair_fee(0), Error);
}

TEST(TwoBanker, Fees) {
    const auto rep = two_banker_demo({1, 1024}, {2, 1024});
    EXPECT_EQ(rep.fee_per_banker_pricing, 20480.0);
    EXPECT_EQ(rep.fee_combined_pricing, 22528.0);
    EXPECT_EQ(rep.empirical_total_payout, rep.first.total_payout + rep.second.total_payout);
    const auto again = two_banker_demo({1, 1024}, {2, 1024});
    EXPECT_EQ(again.empirical_total_payout, rep.empirical_total_payout);
}

TEST(LotteryPrefix, OnlyMatchingLotteryFires) {
    const std::vector<bool> head_first = {true};
    EXPECT_EQ(st_petersburg_payout_on_prefix(head_first), 2u);
    EXPECT_EQ(lottery_payout_on_prefix(1, head_first), 2u);
    EXPECT_EQ(lottery_payout_on_prefix(2, head_first), 0u);
    EXPECT_EQ(lottery_payout_on_prefix(3, head_first), 0u);

    const std::vector<bool> third = {false, false, true};
    EXPECT_EQ(lottery_payout_on_prefix(3, third), 8u);
    EXPECT_EQ(lottery_payout_on_prefix(1, third), 0u);
    EXPECT_FALSE(lottery_payout_on_prefix(4, std::vector<bool>{false, false}).has_value());
}

TEST(VerifyDecomposition, Depth3) {
    const auto rep = verify_decomposition(3);
    EXPECT_EQ(rep.sequences_checked, 3u);
    EXPECT_EQ(rep.mismatches, 0u);
}

TEST(VerifyDecomposition, Depth20And50) {
    for (unsigned depth : {20u, 50u}) {
        const auto rep = verify_decomposition(depth);
        EXPECT_EQ(rep.depth, depth);
        EXPECT_EQ(rep.sequences_checked, depth);
        EXPECT_EQ(rep.mismatches, 0u);
        ASSERT_EQ(rep.lottery_expectations.size(), depth);
        for (double e : rep.lottery_expectations) EXPECT_EQ(e, 1.0);
    }
}

// Brute force over every bit string of length 12: exactly one lottery fires
// whenever a head occurs, and its prize is the St. Petersburg payout.
TEST(VerifyDecomposition, ExhaustiveShortSequences) {
    constexpr unsigned len = 12;
    for (std::uint32_t word = 1; word < (1u << len); ++word) {
        std::vector<bool> bits(len);
        for (unsigned i = 0; i < len; ++i) bits[i] = (word >> i) & 1u;
        const auto stp = st_petersburg_payout_on_prefix(bits);
        ASSERT_TRUE(stp.has_value());
        std::uint64_t sum = 0;
        int fired = 0;
        for (unsigned k = 1; k <= len; ++k) {
            const auto pay = lottery_payout_on_prefix(k, bits);
            ASSERT_TRUE(pay.has_value());
            sum += *pay;
            fired += *pay != 0;
        }
        ASSERT_EQ(fired, 1);
        ASSERT_EQ(sum, *stp);
    }
}

TEST(VerifyDecomposition, RejectsDepth) {
    EXPECT_THROW(verify_decomposition(0), Error);
    EXPECT_THROW(verify_decomposition(51), Error);
}
