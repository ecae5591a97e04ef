#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "truncprice/distribution.hpp"

namespace oracle {

struct Truncation {
    std::size_t n;
    double e;
};

/// Scans every truncation point of a finite outcome list (already sorted by
/// payout) and returns the first whose dropped mass is <= epsilon. Each
/// candidate's tail is summed afresh from the list.
inline Truncation brute_force_truncation(const std::vector<truncprice::Outcome>& outs, double epsilon) {
    for (std::size_t n = 1; n <= outs.size(); ++n) {
        double dropped = 0.0;
        for (std::size_t i = outs.size(); i-- > n;) dropped += outs[i].probability;
        if (dropped <= epsilon) {
            double e = 0.0;
            for (std::size_t i = 0; i < n; ++i) e += outs[i].payout * outs[i].probability;
            return {n, e};
        }
    }
    return {0, 0.0};
}

/// Random canonical outcome list with dyadic probabilities (multiples of
/// 2^-20) and integer payouts, so every partial sum is exact in any order.
inline std::vector<truncprice::Outcome> random_dyadic_outcomes(std::mt19937_64& rng, std::size_t max_n) {
    std::uniform_int_distribution<std::size_t> size_dist(1, max_n);
    const std::size_t n = size_dist(rng);
    constexpr std::uint64_t total = std::uint64_t{1} << 20;
    std::vector<std::uint64_t> cuts;
    std::uniform_int_distribution<std::uint64_t> cut_dist(1, total - 1);
    while (cuts.size() + 1 < n) {
        const auto c = cut_dist(rng);
        bool dup = false;
        for (auto x : cuts) dup = dup || x == c;
        if (!dup) cuts.push_back(c);
    }
    cuts.push_back(0);
    cuts.push_back(total);
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> payouts;
    std::uniform_int_distribution<int> pay_dist(0, 10000);
    while (payouts.size() < n) {
        const double p = pay_dist(rng);
        bool dup = false;
        for (auto x : payouts) dup = dup || x == p;
        if (!dup) payouts.push_back(p);
    }
    std::sort(payouts.begin(), payouts.end());

    std::vector<truncprice::Outcome> outs;
    for (std::size_t i = 0; i < n; ++i) {
        outs.push_back({payouts[i], std::ldexp(static_cast<double>(cuts[i + 1] - cuts[i]), -20)});
    }
    return outs;
}

/// int_K^U (x - K) / (pi (1 + x^2)) dx from the antiderivative
/// ln(1 + x^2) / (2 pi) - K atan(x) / pi.
inline double cauchy_call_closed_form(double strike, double upper) {
    const double pi = std::numbers::pi;
    return (std::log1p(upper * upper) - std::log1p(strike * strike)) / (2.0 * pi) -
           strike * (std::atan(upper) - std::atan(strike)) / pi;
}

/// int_L^K (K - x) / (pi (1 + x^2)) dx.
inline double cauchy_put_closed_form(double lower, double strike) {
    const double pi = std::numbers::pi;
    return strike * (std::atan(strike) - std::atan(lower)) / pi -
           (std::log1p(strike * strike) - std::log1p(lower * lower)) / (2.0 * pi);
}

/// int_0^M x phi(x) dx = phi(0) - phi(M) for the standard normal.
inline double gaussian_call_closed_form_zero_strike(double upper) {
    const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    return c * (1.0 - std::exp(-0.5 * upper * upper));
}

} // namespace oracle
