#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "truncprice/distribution.hpp"

namespace truncprice::cli {

/// Runs the command line; returns the process exit code. Reports go to
/// `out`, diagnostics and warnings to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Decimal ("0.25", "3.7253e-9") or power form ("2^-28").
double parse_number_or_power(std::string_view text);

/// "st-petersburg", "lottery:K" or "file:<path>".
DiscretePayoutDistribution resolve_distribution(std::string_view source);

} // namespace truncprice::cli
