#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "truncprice/distribution.hpp"
#include "truncprice/error.hpp"
#include "truncprice/price.hpp"

namespace truncprice {

/// A buyer's hopeless probability epsilon and cost-effectiveness factor k.
///
/// Outcomes whose combined tail probability is at most epsilon are ignored
/// and not paid for; k scales what remains (k < 1 seeks bargains, k > 1
/// speculates).
class BuyerProfile {
public:
    BuyerProfile(double epsilon, double k) : epsilon_(epsilon), k_(k) {
        if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
            throw Error(ErrorCode::InvalidParameter, "epsilon must lie in [0, 1]");
        }
        if (!(k > 0.0) || !std::isfinite(k)) {
            throw Error(ErrorCode::InvalidParameter, "k must be positive and finite");
        }
    }

    double epsilon() const noexcept { return epsilon_; }
    double k() const noexcept { return k_; }

private:
    double epsilon_;
    double k_;
};

struct TruncationResult {
    std::size_t n_epsilon = 1;
    double e_epsilon = 0.0;
    double retained_mass = 1.0;

    friend bool operator==(const TruncationResult&, const TruncationResult&) = default;
};

namespace detail {

inline void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw Error(ErrorCode::InvalidParameter, "epsilon must lie in [0, 1]");
    }
}

} // namespace detail

/// Minimal N >= 1 whose tail mass beyond the first N outcomes is <= epsilon.
inline std::size_t find_n_epsilon(const DiscretePayoutDistribution& dist, double epsilon) {
    detail::check_epsilon(epsilon);
    const auto support = dist.support_size();
    if (!support && epsilon == 0.0) {
        throw Error(ErrorCode::NoFiniteTruncation,
                    "epsilon = 0 on infinite support admits no finite truncation");
    }
    // Finite support always terminates at N = size (tail exactly 0). The
    // St. Petersburg tail 2^-N reaches any positive double by N = 1075.
    const std::size_t limit = support ? *support : std::size_t{2000};
    for (std::size_t n = 1; n <= limit; ++n) {
        if (dist.tail_mass(n) <= epsilon) return n;
    }
    throw Error(ErrorCode::NoFiniteTruncation, "no truncation point found");
}

inline TruncationResult truncated_expectation(const DiscretePayoutDistribution& dist,
                                              double epsilon) {
    const std::size_t n = find_n_epsilon(dist, epsilon);
    return {n, partial_expectation(dist, n), 1.0 - dist.tail_mass(n)};
}

/// Largest price the buyer accepts: k * E_eps, unbounded when no finite
/// truncation exists (epsilon = 0 against infinite support).
inline Price buyer_max_price(const DiscretePayoutDistribution& dist, const BuyerProfile& profile) {
    try {
        return Price::finite(profile.k() * truncated_expectation(dist, profile.epsilon()).e_epsilon);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NoFiniteTruncation) return Price::unbounded();
        throw;
    }
}

/// mu <= k * E_eps, compared exactly.
inline bool buyer_accepts(const DiscretePayoutDistribution& dist, const BuyerProfile& profile,
                          double mu) {
    if (!(mu >= 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "quoted price must be nonnegative");
    }
    const Price max = buyer_max_price(dist, profile);
    return max.is_unbounded() || mu <= max.value();
}

/// Quote of a seller who must honour the contract to the end: the full expectation.
inline Price seller_min_price_committed(const DiscretePayoutDistribution& dist) {
    return expectation(dist);
}

/// Quote of a seller able to close out early: k * E_eps with k >= 1, and
/// k > 1 whenever epsilon > 0 since the seller then carries the ignored tail.
inline Price seller_quote_closeable(const DiscretePayoutDistribution& dist, double epsilon,
                                    double k) {
    detail::check_epsilon(epsilon);
    if (!(k >= 1.0) || !std::isfinite(k)) {
        throw Error(ErrorCode::InvalidParameter, "seller k must be at least 1");
    }
    if (epsilon > 0.0 && k <= 1.0) {
        throw Error(ErrorCode::InvalidParameter, "seller k must exceed 1 when epsilon > 0");
    }
    try {
        return Price::finite(k * truncated_expectation(dist, epsilon).e_epsilon);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NoFiniteTruncation) return Price::unbounded();
        throw;
    }
}

} // namespace truncprice
