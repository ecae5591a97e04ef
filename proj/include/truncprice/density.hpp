#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "truncprice/error.hpp"

namespace truncprice {

/// Continuous density with an analytic survival function.
///
/// Cauchy(location, scale):  p(x) = 1 / (pi * scale * (1 + z^2)), z = (x - location) / scale
/// Gaussian(mean, stddev):   p(x) = exp(-z^2 / 2) / (stddev * sqrt(2 pi))
class ContinuousDensity {
public:
    enum class Kind { Cauchy, Gaussian };

    static ContinuousDensity cauchy(double location = 0.0, double scale = 1.0) {
        return ContinuousDensity(Kind::Cauchy, location, scale);
    }
    static ContinuousDensity gaussian(double mean = 0.0, double stddev = 1.0) {
        return ContinuousDensity(Kind::Gaussian, mean, stddev);
    }

    Kind kind() const noexcept { return kind_; }
    double location() const noexcept { return location_; }
    double scale() const noexcept { return scale_; }

    std::string name() const { return kind_ == Kind::Cauchy ? "cauchy" : "gaussian"; }

    double density(double x) const {
        const double z = (x - location_) / scale_;
        if (kind_ == Kind::Cauchy) {
            return 1.0 / (std::numbers::pi * scale_ * (z * z + 1.0));
        }
        return std::exp(-0.5 * z * z) / (scale_ * std::sqrt(2.0 * std::numbers::pi));
    }

    /// P(X > u).
    double survival(double u) const {
        const double z = (u - location_) / scale_;
        if (kind_ == Kind::Cauchy) {
            // atan2(1, z) / pi equals 1/2 - atan(z) / pi but keeps full
            // relative precision far into the right tail.
            return std::atan2(1.0, z) / std::numbers::pi;
        }
        return 0.5 * std::erfc(z / std::numbers::sqrt2);
    }

    /// The u with survival(u) == epsilon, for epsilon in (0, 1).
    double survival_inverse(double epsilon) const {
        if (!(epsilon > 0.0 && epsilon < 1.0)) {
            throw Error(ErrorCode::InvalidParameter, "survival level must lie in (0, 1)");
        }
        if (kind_ == Kind::Cauchy) {
            return location_ + scale_ * cauchy_standard_inverse(epsilon);
        }
        return location_ + scale_ * gaussian_standard_inverse(epsilon);
    }

private:
    ContinuousDensity(Kind kind, double location, double scale)
        : kind_(kind), location_(location), scale_(scale) {
        if (!std::isfinite(location) || !std::isfinite(scale) || scale <= 0.0) {
            throw Error(ErrorCode::InvalidParameter,
                        "density needs a finite location and a positive finite scale");
        }
    }

    static double cauchy_standard_inverse(double eps) {
        constexpr double pi = std::numbers::pi;
        if (eps < 0.25) return 1.0 / std::tan(pi * eps);
        if (eps > 0.75) return -1.0 / std::tan(pi * (1.0 - eps));
        return std::tan(pi * (0.5 - eps));
    }

    // No closed-form inverse of erfc in the standard library; bisect on the
    // monotone survival function down to adjacent doubles.
    static double gaussian_standard_inverse(double eps) {
        auto surv = [](double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); };
        double lo = -40.0;
        double hi = 40.0;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double s = surv(mid);
            if (s == eps) return mid;
            if (s > eps) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }

    Kind kind_;
    double location_;
    double scale_;
};

} // namespace truncprice
