#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "truncprice/error.hpp"
#include "truncprice/price.hpp"

namespace truncprice {

/// Absolute slack allowed on the total probability mass of a finite list.
inline constexpr double kProbabilitySumTolerance = 1e-12;

/// Largest K for which the Lottery Game K prize 2^K is a finite double.
inline constexpr unsigned kMaxLotteryK = 1023;

struct Outcome {
    double payout = 0.0;
    double probability = 0.0;

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Discrete payout distribution in canonical form: outcomes ordered by
/// ascending payout, so truncating at N always discards the largest prizes.
///
/// The St. Petersburg game has infinite support and is represented
/// analytically: outcome i pays 2^i with probability 2^-i, and the mass
/// beyond index N is exactly 2^-N. Lottery Game K is a two-outcome
/// distribution {(0, 1 - 2^-K), (2^K, 2^-K)} whose tail is also kept in
/// closed form so it stays exact for K beyond the 53-bit mantissa.
class DiscretePayoutDistribution {
public:
    enum class Kind { FiniteList, StPetersburg, LotteryGame };

    Kind kind() const noexcept { return kind_; }

    /// K of a Lottery Game; zero for every other kind.
    unsigned lottery_k() const noexcept { return lottery_k_; }

    /// Materialized outcomes. Empty for St. Petersburg.
    std::span<const Outcome> outcomes() const noexcept { return outcomes_; }

    /// Number of outcomes, or nullopt for infinite support.
    std::optional<std::size_t> support_size() const noexcept {
        if (kind_ == Kind::StPetersburg) return std::nullopt;
        return outcomes_.size();
    }

    /// Outcome at 1-based position `index`.
    Outcome outcome(std::size_t index) const {
        if (index == 0) {
            throw Error(ErrorCode::IndexOutOfRange, "outcome indices start at 1");
        }
        if (kind_ == Kind::StPetersburg) {
            const int i = index > 2000 ? 2000 : static_cast<int>(index);
            return {std::ldexp(1.0, i), std::ldexp(1.0, -i)};
        }
        if (index > outcomes_.size()) {
            throw Error(ErrorCode::IndexOutOfRange,
                        "outcome " + std::to_string(index) + " beyond support of size " +
                            std::to_string(outcomes_.size()));
        }
        return outcomes_[index - 1];
    }

    /// Probability mass strictly beyond the first `n` outcomes.
    double tail_mass(std::size_t n) const {
        if (n == 0) return 1.0;
        switch (kind_) {
        case Kind::StPetersburg:
            return n > 2000 ? 0.0 : std::ldexp(1.0, -static_cast<int>(n));
        case Kind::LotteryGame:
            return n == 1 ? std::ldexp(1.0, -static_cast<int>(lottery_k_)) : 0.0;
        case Kind::FiniteList:
            break;
        }
        if (n > outcomes_.size()) {
            throw Error(ErrorCode::IndexOutOfRange,
                        "truncation point " + std::to_string(n) + " beyond support of size " +
                            std::to_string(outcomes_.size()));
        }
        return suffix_mass_[n];
    }

    friend bool operator==(const DiscretePayoutDistribution& a,
                           const DiscretePayoutDistribution& b) {
        return a.kind_ == b.kind_ && a.lottery_k_ == b.lottery_k_ && a.outcomes_ == b.outcomes_;
    }

    friend DiscretePayoutDistribution make_finite(std::vector<Outcome> outcomes);
    friend DiscretePayoutDistribution st_petersburg();
    friend DiscretePayoutDistribution lottery_game(unsigned k);

private:
    DiscretePayoutDistribution(Kind kind, unsigned k, std::vector<Outcome> outcomes)
        : kind_(kind), lottery_k_(k), outcomes_(std::move(outcomes)) {
        // suffix_mass_[n] = sum of p_i for i > n, accumulated from the top so
        // the full-support entry is exactly zero.
        suffix_mass_.assign(outcomes_.size() + 1, 0.0);
        double acc = 0.0;
        for (std::size_t i = outcomes_.size(); i-- > 0;) {
            acc += outcomes_[i].probability;
            suffix_mass_[i] = std::min(acc, 1.0);
        }
        if (!suffix_mass_.empty()) suffix_mass_[0] = 1.0;
    }

    Kind kind_;
    unsigned lottery_k_ = 0;
    std::vector<Outcome> outcomes_;
    std::vector<double> suffix_mass_;
};

/// Builds a canonical finite distribution: sorted by payout, duplicate
/// payouts merged, zero-probability outcomes dropped.
inline DiscretePayoutDistribution make_finite(std::vector<Outcome> outcomes) {
    if (outcomes.empty()) {
        throw Error(ErrorCode::EmptyDistribution, "no outcomes given");
    }
    for (const auto& o : outcomes) {
        if (!std::isfinite(o.payout)) {
            throw Error(ErrorCode::InvalidParameter, "payout must be finite");
        }
        if (o.payout < 0.0) {
            throw Error(ErrorCode::NegativePayout,
                        "payout " + std::to_string(o.payout) + " is negative");
        }
        if (!std::isfinite(o.probability) || o.probability < 0.0 || o.probability > 1.0) {
            throw Error(ErrorCode::ProbabilityMassError,
                        "probability " + std::to_string(o.probability) + " outside [0, 1]");
        }
    }
    std::erase_if(outcomes, [](const Outcome& o) { return o.probability == 0.0; });
    if (outcomes.empty()) {
        throw Error(ErrorCode::EmptyDistribution, "every outcome has zero probability");
    }
    std::stable_sort(outcomes.begin(), outcomes.end(),
                     [](const Outcome& a, const Outcome& b) { return a.payout < b.payout; });

    std::vector<Outcome> merged;
    merged.reserve(outcomes.size());
    for (const auto& o : outcomes) {
        if (!merged.empty() && merged.back().payout == o.payout) {
            merged.back().probability += o.probability;
        } else {
            merged.push_back(o);
        }
    }

    double total = 0.0;
    for (const auto& o : merged) total += o.probability;
    if (std::abs(total - 1.0) > kProbabilitySumTolerance) {
        throw Error(ErrorCode::ProbabilityMassError,
                    "probabilities sum to " + std::to_string(total) + ", expected 1");
    }
    return DiscretePayoutDistribution(DiscretePayoutDistribution::Kind::FiniteList, 0,
                                      std::move(merged));
}

inline DiscretePayoutDistribution st_petersburg() {
    return DiscretePayoutDistribution(DiscretePayoutDistribution::Kind::StPetersburg, 0, {});
}

inline DiscretePayoutDistribution lottery_game(unsigned k) {
    if (k < 1 || k > kMaxLotteryK) {
        throw Error(ErrorCode::InvalidParameter,
                    "lottery K must lie in [1, " + std::to_string(kMaxLotteryK) + "]");
    }
    const double win = std::ldexp(1.0, -static_cast<int>(k));
    return DiscretePayoutDistribution(DiscretePayoutDistribution::Kind::LotteryGame, k,
                                      {{0.0, 1.0 - win}, {std::ldexp(1.0, static_cast<int>(k)), win}});
}

inline double tail_mass(const DiscretePayoutDistribution& dist, std::size_t n) {
    return dist.tail_mass(n);
}

/// Sum of payout times probability over the first `n` outcomes.
inline double partial_expectation(const DiscretePayoutDistribution& dist, std::size_t n) {
    if (dist.kind() == DiscretePayoutDistribution::Kind::StPetersburg) {
        // Every term 2^i * 2^-i is exactly one.
        return static_cast<double>(n);
    }
    const auto outs = dist.outcomes();
    if (n > outs.size()) {
        throw Error(ErrorCode::IndexOutOfRange, "truncation point beyond support");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += outs[i].payout * outs[i].probability;
    return sum;
}

inline Price expectation(const DiscretePayoutDistribution& dist) {
    if (dist.kind() == DiscretePayoutDistribution::Kind::StPetersburg) {
        return Price::unbounded();
    }
    return Price::finite(partial_expectation(dist, dist.outcomes().size()));
}

} // namespace truncprice
