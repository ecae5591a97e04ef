#pragma once

#include <cmath>
#include <optional>

#include "truncprice/error.hpp"

namespace truncprice {

/// A nonnegative money amount, or the absence of any finite amount.
class Price {
public:
    static Price finite(double value) {
        if (!std::isfinite(value) || value < 0.0) {
            throw Error(ErrorCode::InvalidParameter, "price must be finite and nonnegative");
        }
        return Price(value);
    }
    static Price unbounded() { return Price(std::nullopt); }

    bool is_finite() const noexcept { return value_.has_value(); }
    bool is_unbounded() const noexcept { return !value_.has_value(); }

    double value() const {
        if (!value_) {
            throw Error(ErrorCode::InvalidParameter, "unbounded price has no finite value");
        }
        return *value_;
    }

    friend bool operator==(const Price&, const Price&) = default;

private:
    explicit Price(std::optional<double> v) : value_(v) {}
    std::optional<double> value_;
};

} // namespace truncprice
