#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <future>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "truncprice/distribution.hpp"
#include "truncprice/error.hpp"

namespace truncprice {

/// Generator behind every simulation; its name is stamped on each report.
using SimulationEngine = std::mt19937_64;
inline constexpr const char* kGeneratorName = "mt19937_64";

inline constexpr unsigned kMaxTossCap = 62;

struct SimulationConfig {
    std::uint64_t seed = 0;
    std::uint64_t num_plays = 1;
    unsigned max_tosses = kMaxTossCap;

    void validate() const {
        if (num_plays < 1) {
            throw Error(ErrorCode::InvalidParameter, "num_plays must be at least 1");
        }
        if (max_tosses < 1 || max_tosses > kMaxTossCap) {
            throw Error(ErrorCode::InvalidParameter, "max_tosses must lie in [1, 62]");
        }
    }
};

struct PlayResult {
    double payout = 0.0;
    unsigned tosses = 0;
    bool cap_hit = false;
};

struct SessionReport {
    std::string generator = kGeneratorName;
    std::uint64_t seed = 0;
    std::uint64_t num_plays = 0;
    unsigned max_tosses = kMaxTossCap;
    double total_payout = 0.0;
    double mean_payout = 0.0;
    double max_single_payout = 0.0;
    std::uint64_t toss_cap_hits = 0;

    friend bool operator==(const SessionReport&, const SessionReport&) = default;
};

/// One St. Petersburg play: toss until the first head, pay 2^n for a head on
/// toss n. Each bit of one 64-bit draw is a fair toss, least significant
/// first. Without a head in `max_tosses` tosses the game stops and pays
/// 2^max_tosses, flagged as a cap hit.
template <class Engine>
PlayResult simulate_play(Engine& rng, unsigned max_tosses = kMaxTossCap) {
    static_assert(Engine::min() == 0 &&
                      Engine::max() == std::numeric_limits<std::uint64_t>::max(),
                  "simulate_play needs a full 64-bit generator");
    const std::uint64_t bits = rng();
    const unsigned first_head = static_cast<unsigned>(std::countr_zero(bits)) + 1;
    PlayResult r;
    if (first_head > max_tosses) {
        r.tosses = max_tosses;
        r.cap_hit = true;
    } else {
        r.tosses = first_head;
    }
    r.payout = std::ldexp(1.0, static_cast<int>(r.tosses));
    return r;
}

inline SessionReport simulate_session(const SimulationConfig& config) {
    config.validate();
    SimulationEngine rng(config.seed);
    SessionReport rep;
    rep.seed = config.seed;
    rep.num_plays = config.num_plays;
    rep.max_tosses = config.max_tosses;
    for (std::uint64_t i = 0; i < config.num_plays; ++i) {
        const PlayResult play = simulate_play(rng, config.max_tosses);
        rep.total_payout += play.payout;
        rep.max_single_payout = std::max(rep.max_single_payout, play.payout);
        if (play.cap_hit) ++rep.toss_cap_hits;
    }
    rep.mean_payout = rep.total_payout / static_cast<double>(config.num_plays);
    return rep;
}

/// Seed of session `index` in a batch rooted at `base_seed` (splitmix64 mix).
inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
    std::uint64_t z = base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Runs `sessions` independent sessions, each seeded by derive_seed(seed, i).
/// Results are ordered by session index and do not depend on thread count.
inline std::vector<SessionReport> simulate_sessions(std::uint64_t seed, std::size_t sessions,
                                                    std::uint64_t plays_per_session,
                                                    unsigned max_tosses = kMaxTossCap,
                                                    unsigned threads = 0) {
    SimulationConfig probe{seed, plays_per_session, max_tosses};
    probe.validate();
    std::vector<SessionReport> out(sessions);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(sessions, 1)));

    auto worker = [&](unsigned t) {
        for (std::size_t i = t; i < sessions; i += threads) {
            out[i] = simulate_session({derive_seed(seed, i), plays_per_session, max_tosses});
        }
    };
    std::vector<std::future<void>> tasks;
    for (unsigned t = 1; t < threads; ++t) tasks.push_back(std::async(std::launch::async, worker, t));
    worker(0);
    for (auto& f : tasks) f.get();
    return out;
}

inline double median(std::vector<double> values) {
    if (values.empty()) throw Error(ErrorCode::InvalidParameter, "median of empty set");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + mid, values.end());
    if (values.size() % 2 == 1) return values[mid];
    const double upper = values[mid];
    const double lower = *std::max_element(values.begin(), values.begin() + mid);
    return 0.5 * (lower + upper);
}

/// Feller's per-play fee for exactly `num_plays` plays: log2(num_plays).
inline double feller_fair_fee(std::uint64_t num_plays) {
    if (num_plays < 1) throw Error(ErrorCode::InvalidParameter, "num_plays must be at least 1");
    return std::log2(static_cast<double>(num_plays));
}

struct TwoBankerReport {
    SessionReport first;
    SessionReport second;
    /// Each banker charges log2 of its own play count.
    double fee_per_banker_pricing = 0.0;
    /// One banker hosting all plays would charge log2 of the combined count.
    double fee_combined_pricing = 0.0;
    double empirical_total_payout = 0.0;
};

/// A player splits plays between two bankers, each charging Feller's fee
/// for its own session length.
inline TwoBankerReport two_banker_demo(const SimulationConfig& first,
                                       const SimulationConfig& second) {
    TwoBankerReport rep;
    rep.first = simulate_session(first);
    rep.second = simulate_session(second);
    const auto n1 = first.num_plays;
    const auto n2 = second.num_plays;
    rep.fee_per_banker_pricing = static_cast<double>(n1) * feller_fair_fee(n1) +
                                 static_cast<double>(n2) * feller_fair_fee(n2);
    rep.fee_combined_pricing = static_cast<double>(n1 + n2) * feller_fair_fee(n1 + n2);
    rep.empirical_total_payout = rep.first.total_payout + rep.second.total_payout;
    return rep;
}

inline constexpr unsigned kMaxDecompositionDepth = 50;

struct DecompositionReport {
    unsigned depth = 0;
    std::uint64_t sequences_checked = 0;
    std::uint64_t mismatches = 0;
    std::vector<double> lottery_expectations;
};

/// Tosses are bits of a binary sequence, 1 = head; `prefix` holds the
/// first bits. Lottery Game K pays 2^K iff the first K bits read 0...01.
/// Returns nullopt if the prefix is too short to decide.
inline std::optional<std::uint64_t> lottery_payout_on_prefix(unsigned k,
                                                             const std::vector<bool>& prefix) {
    for (unsigned i = 1; i <= k; ++i) {
        if (i > prefix.size()) return std::nullopt;
        const bool bit = prefix[i - 1];
        if (i < k && bit) return 0;
        if (i == k) return bit ? (std::uint64_t{1} << k) : 0;
    }
    return 0;
}

/// St. Petersburg payout 2^n for the first 1 at position n.
inline std::optional<std::uint64_t> st_petersburg_payout_on_prefix(const std::vector<bool>& prefix) {
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (prefix[i]) return std::uint64_t{1} << (i + 1);
    }
    return std::nullopt;
}

/// Checks, for every first-head position n in 1..depth, that the
/// St. Petersburg payout on the prefix 0^(n-1)1 equals the summed payouts of
/// Lottery Games 1..depth on the same bits, with exactly one lottery firing,
/// and that every Lottery Game K in 1..depth has expectation exactly 1.
/// The game outcome depends only on bits up to the first head, so one prefix
/// per position covers every sequence.
inline DecompositionReport verify_decomposition(unsigned depth) {
    if (depth < 1 || depth > kMaxDecompositionDepth) {
        throw Error(ErrorCode::InvalidParameter, "depth must lie in [1, 50]");
    }
    DecompositionReport rep;
    rep.depth = depth;
    for (unsigned n = 1; n <= depth; ++n) {
        std::vector<bool> prefix(n, false);
        prefix[n - 1] = true;
        const auto stp = st_petersburg_payout_on_prefix(prefix);
        std::uint64_t lottery_sum = 0;
        unsigned fired = 0;
        bool decided = true;
        for (unsigned k = 1; k <= depth; ++k) {
            const auto pay = lottery_payout_on_prefix(k, prefix);
            if (!pay) {
                decided = false;
                continue;
            }
            lottery_sum += *pay;
            if (*pay != 0) ++fired;
        }
        ++rep.sequences_checked;
        if (!decided || !stp || *stp != lottery_sum || fired != 1) ++rep.mismatches;
    }
    rep.lottery_expectations.reserve(depth);
    for (unsigned k = 1; k <= depth; ++k) {
        const double e = expectation(lottery_game(k)).value();
        rep.lottery_expectations.push_back(e);
        if (e != 1.0) ++rep.mismatches;
    }
    return rep;
}

} // namespace truncprice
