#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "truncprice/density.hpp"
#include "truncprice/error.hpp"
#include "truncprice/quadrature.hpp"

namespace truncprice {

/// Absolute quadrature tolerance used for every option integral.
inline constexpr double kOptionQuadratureTolerance = 1e-10;

enum class OptionSide { Call, Put };

inline std::string to_string(OptionSide side) { return side == OptionSide::Call ? "call" : "put"; }

struct OptionSpec {
    double spot = 1.0;
    double strike = 1.0;
    double rate = 0.0;
    double maturity = 0.0;
    OptionSide side = OptionSide::Call;

    void validate() const {
        if (!(spot > 0.0) || !std::isfinite(spot)) {
            throw Error(ErrorCode::InvalidParameter, "spot must be positive");
        }
        if (!(strike >= 0.0) || !std::isfinite(strike)) {
            throw Error(ErrorCode::InvalidParameter, "strike must be nonnegative");
        }
        if (!std::isfinite(rate)) {
            throw Error(ErrorCode::InvalidParameter, "rate must be finite");
        }
        if (!(maturity >= 0.0) || !std::isfinite(maturity)) {
            throw Error(ErrorCode::InvalidParameter, "maturity must be nonnegative");
        }
    }

    double discount() const { return std::exp(-rate * maturity); }
};

/// Cut the integral where the density's tail beyond the bound carries
/// probability epsilon.
struct EpsilonQuantile {
    double epsilon = 0.01;
};

/// Cut the integral at fixed multiples of spot: upper_mult * S for calls,
/// lower_mult * S for puts.
struct ExplicitMultiple {
    double upper_mult = 100.0;
    double lower_mult = 0.01;
};

using BoundMode = std::variant<EpsilonQuantile, ExplicitMultiple>;

inline std::string mode_name(const BoundMode& mode) {
    return std::holds_alternative<EpsilonQuantile>(mode) ? "epsilon" : "multiple";
}

inline void validate(const BoundMode& mode) {
    if (const auto* q = std::get_if<EpsilonQuantile>(&mode)) {
        if (!(q->epsilon > 0.0 && q->epsilon < 1.0)) {
            throw Error(ErrorCode::InvalidParameter, "quantile epsilon must lie in (0, 1)");
        }
        return;
    }
    const auto& m = std::get<ExplicitMultiple>(mode);
    if (!(m.lower_mult > 0.0 && m.lower_mult < 1.0 && m.upper_mult > 1.0) ||
        !std::isfinite(m.upper_mult)) {
        throw Error(ErrorCode::InvalidParameter, "multiples need 0 < lower < 1 < upper");
    }
}

/// U with P(X > U) = epsilon.
inline double quantile_upper(const ContinuousDensity& density, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::InvalidParameter, "epsilon must lie in (0, 1)");
    }
    return density.survival_inverse(epsilon);
}

/// L with P(X < L) = epsilon.
inline double quantile_lower(const ContinuousDensity& density, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::InvalidParameter, "epsilon must lie in (0, 1)");
    }
    return density.survival_inverse(1.0 - epsilon);
}

struct OptionPriceResult {
    double price = 0.0;
    std::string mode;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    double quadrature_error = 0.0;
    std::size_t subdivisions = 0;
    /// Set when the truncation bound fails to bracket the strike; price is then 0.
    bool degenerate_bounds = false;
};

/// Discounted payoff integral truncated at the hopeless-probability bound:
///   call: e^{-rT} * int_K^U (x - K) p(x) dx
///   put:  e^{-rT} * int_L^K (K - x) p(x) dx
inline OptionPriceResult truncated_price(const ContinuousDensity& density, const OptionSpec& spec,
                                         const BoundMode& mode) {
    spec.validate();
    validate(mode);
    const double strike = spec.strike;

    OptionPriceResult res;
    res.mode = mode_name(mode);
    if (spec.side == OptionSide::Call) {
        const double upper = std::holds_alternative<EpsilonQuantile>(mode)
                                 ? quantile_upper(density, std::get<EpsilonQuantile>(mode).epsilon)
                                 : std::get<ExplicitMultiple>(mode).upper_mult * spec.spot;
        res.lower_bound = strike;
        res.upper_bound = upper;
        if (!(upper > strike)) {
            res.degenerate_bounds = true;
            return res;
        }
        const auto q = integrate([&](double x) { return (x - strike) * density.density(x); },
                                 strike, upper, kOptionQuadratureTolerance);
        res.price = spec.discount() * std::max(q.value, 0.0);
        res.quadrature_error = spec.discount() * q.error_estimate;
        res.subdivisions = q.subdivisions;
        return res;
    }

    const double lower = std::holds_alternative<EpsilonQuantile>(mode)
                             ? quantile_lower(density, std::get<EpsilonQuantile>(mode).epsilon)
                             : std::get<ExplicitMultiple>(mode).lower_mult * spec.spot;
    res.lower_bound = lower;
    res.upper_bound = strike;
    if (!(lower < strike)) {
        res.degenerate_bounds = true;
        return res;
    }
    const auto q = integrate([&](double x) { return (strike - x) * density.density(x); }, lower,
                             strike, kOptionQuadratureTolerance);
    res.price = spec.discount() * std::max(q.value, 0.0);
    res.quadrature_error = spec.discount() * q.error_estimate;
    res.subdivisions = q.subdivisions;
    return res;
}

struct DivergenceRow {
    double upper = 0.0;
    double partial_price = 0.0;
    double quadrature_error = 0.0;
};

/// Untruncated call integral int_K^M (x - K) p(x) dx for each M in `uppers`.
/// Each entry extends the previous one by the integral over the new stretch,
/// so converged tails stay flat to rounding.
inline std::vector<DivergenceRow> divergence_table(const ContinuousDensity& density, double strike,
                                                   const std::vector<double>& uppers) {
    if (!std::isfinite(strike)) {
        throw Error(ErrorCode::InvalidParameter, "strike must be finite");
    }
    double previous = strike;
    for (std::size_t i = 0; i < uppers.size(); ++i) {
        if (!std::isfinite(uppers[i]) || uppers[i] < strike || (i > 0 && !(uppers[i] > previous))) {
            throw Error(ErrorCode::InvalidParameter,
                        "uppers must be finite, at least the strike, and strictly increasing");
        }
        previous = uppers[i];
    }

    std::vector<DivergenceRow> rows;
    rows.reserve(uppers.size());
    double from = strike;
    double acc = 0.0;
    double err = 0.0;
    for (const double m : uppers) {
        if (m > from) {
            const auto q = integrate([&](double x) { return (x - strike) * density.density(x); },
                                     from, m, kOptionQuadratureTolerance);
            acc += q.value;
            err += q.error_estimate;
            from = m;
        }
        rows.push_back({m, acc, err});
    }
    return rows;
}

} // namespace truncprice
