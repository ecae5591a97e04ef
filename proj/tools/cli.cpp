#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "truncprice/json_io.hpp"
#include "truncprice/truncprice.hpp"

namespace truncprice::cli {
namespace {

enum class Format { Table, Json, Csv };

/// A report is an ordered record, optionally followed by uniform rows
/// (sessions, divergence entries) that become the CSV body.
struct Report {
    truncprice::Json record = truncprice::Json::object();
    std::vector<truncprice::Json> rows;
    std::vector<std::string> warnings;
};

truncprice::Json price_json(const Price& p) {
    if (p.is_unbounded()) return "unbounded";
    return p.value();
}

std::string human_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string scalar_text(const truncprice::Json& v, bool machine) {
    if (v.is_null()) return machine ? "" : "n/a";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) {
        return machine ? format_number(v.get<double>()) : human_number(v.get<double>());
    }
    if (v.is_array() || v.is_object()) return render_json(v, -1);
    return v.dump();
}

std::string csv_cell(const truncprice::Json& v) {
    std::string s = scalar_text(v, true);
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        return quoted + "\"";
    }
    return s;
}

void flatten(const truncprice::Json& obj, std::vector<std::pair<std::string, truncprice::Json>>& out) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (it.value().is_object()) {
            flatten(it.value(), out);
        } else {
            out.emplace_back(it.key(), it.value());
        }
    }
}

void print_table(const Report& r, std::ostream& out) {
    std::function<void(const truncprice::Json&, int)> print = [&](const truncprice::Json& obj, int depth) {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
            if (it.value().is_object()) {
                out << pad << it.key() << ":\n";
                print(it.value(), depth + 1);
            } else if (it.value().is_array()) {
                out << pad << it.key() << ":";
                for (const auto& el : it.value()) out << ' ' << scalar_text(el, false);
                out << '\n';
            } else {
                out << pad << it.key() << ": " << scalar_text(it.value(), false) << '\n';
            }
        }
    };
    print(r.record, 0);
    if (r.rows.empty()) return;

    std::vector<std::string> cols;
    for (auto it = r.rows.front().begin(); it != r.rows.front().end(); ++it) cols.push_back(it.key());
    std::vector<std::size_t> width(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) width[c] = cols[c].size();
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : r.rows) {
        auto& line = cells.emplace_back();
        for (std::size_t c = 0; c < cols.size(); ++c) {
            line.push_back(scalar_text(row.at(cols[c]), false));
            width[c] = std::max(width[c], line.back().size());
        }
    }
    out << '\n';
    for (std::size_t c = 0; c < cols.size(); ++c) {
        out << (c ? "  " : "") << std::string(width[c] - cols[c].size(), ' ') << cols[c];
    }
    out << '\n';
    for (const auto& line : cells) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out << (c ? "  " : "") << std::string(width[c] - line[c].size(), ' ') << line[c];
        }
        out << '\n';
    }
}

void print_csv(const Report& r, std::ostream& out) {
    std::vector<std::pair<std::string, truncprice::Json>> fields;
    if (r.rows.empty()) {
        flatten(r.record, fields);
        for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i].first;
        out << '\n';
        for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_cell(fields[i].second);
        out << '\n';
        return;
    }
    bool header = true;
    for (const auto& row : r.rows) {
        if (header) {
            bool first = true;
            for (auto it = row.begin(); it != row.end(); ++it) {
                out << (first ? "" : ",") << it.key();
                first = false;
            }
            out << '\n';
            header = false;
        }
        bool first = true;
        for (auto it = row.begin(); it != row.end(); ++it) {
            out << (first ? "" : ",") << csv_cell(it.value());
            first = false;
        }
        out << '\n';
    }
}

void emit(Report r, Format format, std::ostream& out, std::ostream& err) {
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    switch (format) {
    case Format::Json: {
        truncprice::Json j = r.record;
        j["warnings"] = r.warnings;
        if (!r.rows.empty()) j["rows"] = r.rows;
        out << render_json(j) << '\n';
        return;
    }
    case Format::Csv:
        print_csv(r, out);
        return;
    case Format::Table:
        print_table(r, out);
        return;
    }
}

truncprice::Json session_json(const SessionReport& s) {
    truncprice::Json j;
    j["generator"] = s.generator;
    j["seed"] = s.seed;
    j["num_plays"] = s.num_plays;
    j["max_tosses"] = s.max_tosses;
    j["total_payout"] = s.total_payout;
    j["mean_payout"] = s.mean_payout;
    j["max_single_payout"] = s.max_single_payout;
    j["toss_cap_hits"] = s.toss_cap_hits;
    return j;
}

// --- price ----------------------------------------------------------------

struct PriceArgs {
    std::string dist;
    std::string epsilon;
    double k = 1.0;
    std::optional<double> seller_k;
    std::optional<double> mu;
};

Report cmd_price(const PriceArgs& a) {
    const auto dist = resolve_distribution(a.dist);
    const double eps = parse_number_or_power(a.epsilon);
    const BuyerProfile profile(eps, a.k);
    const double seller_k = a.seller_k.value_or(a.k);

    Report r;
    r.record["command"] = "price";
    auto& p = r.record["parameters"];
    p["dist"] = a.dist;
    p["epsilon"] = eps;
    p["epsilon_text"] = a.epsilon;
    p["k"] = a.k;
    p["seller_k"] = seller_k;
    p["mu"] = a.mu ? truncprice::Json(*a.mu) : truncprice::Json(nullptr);

    try {
        const auto t = truncated_expectation(dist, eps);
        r.record["n_epsilon"] = t.n_epsilon;
        r.record["e_epsilon"] = t.e_epsilon;
        r.record["retained_mass"] = t.retained_mass;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoFiniteTruncation) throw;
        r.record["n_epsilon"] = nullptr;
        r.record["e_epsilon"] = nullptr;
        r.record["retained_mass"] = nullptr;
        r.warnings.push_back("no finite truncation exists at epsilon = 0 on infinite support");
    }
    r.record["buyer_max_price"] = price_json(buyer_max_price(dist, profile));
    r.record["seller_committed_price"] = price_json(seller_min_price_committed(dist));
    try {
        r.record["seller_closeable_quote"] = price_json(seller_quote_closeable(dist, eps, seller_k));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InvalidParameter) throw;
        r.record["seller_closeable_quote"] = nullptr;
        r.warnings.push_back("closeable seller quote unavailable: " + std::string(e.what()));
    }
    if (a.mu) {
        r.record["verdict"] = buyer_accepts(dist, profile, *a.mu) ? "accept" : "reject";
    } else {
        r.record["verdict"] = nullptr;
    }
    return r;
}

// --- stp ------------------------------------------------------------------

struct StpArgs {
    std::uint64_t n = 1024;
    std::uint64_t n2 = 1024;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> seed2;
    unsigned max_tosses = kMaxTossCap;
    std::size_t sessions = 1;
    unsigned depth = 20;
};

Report cmd_stp_simulate(const StpArgs& a) {
    Report r;
    r.record["command"] = "stp simulate";
    auto& p = r.record["parameters"];
    p["n"] = a.n;
    p["seed"] = a.seed;
    p["generator"] = kGeneratorName;
    p["max_tosses"] = a.max_tosses;
    p["sessions"] = a.sessions;
    if (a.sessions <= 1) {
        const auto s = simulate_session({a.seed, a.n, a.max_tosses});
        r.record["session"] = session_json(s);
        r.record["feller_fee"] = feller_fair_fee(a.n);
        return r;
    }
    const auto reports = simulate_sessions(a.seed, a.sessions, a.n, a.max_tosses);
    std::vector<double> means;
    std::uint64_t cap_hits = 0;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        means.push_back(reports[i].mean_payout);
        cap_hits += reports[i].toss_cap_hits;
        truncprice::Json row;
        row["session"] = i;
        row["seed"] = reports[i].seed;
        row["mean_payout"] = reports[i].mean_payout;
        row["max_single_payout"] = reports[i].max_single_payout;
        row["toss_cap_hits"] = reports[i].toss_cap_hits;
        r.rows.push_back(std::move(row));
    }
    r.record["median_mean_payout"] = median(means);
    r.record["feller_fee"] = feller_fair_fee(a.n);
    r.record["toss_cap_hits"] = cap_hits;
    return r;
}

Report cmd_stp_feller(const StpArgs& a) {
    Report r;
    r.record["command"] = "stp feller";
    r.record["parameters"]["n"] = a.n;
    r.record["fee"] = feller_fair_fee(a.n);
    return r;
}

Report cmd_stp_two_banker(const StpArgs& a) {
    const std::uint64_t seed2 = a.seed2.value_or(derive_seed(a.seed, 1));
    const auto rep = two_banker_demo({a.seed, a.n, a.max_tosses}, {seed2, a.n2, a.max_tosses});
    Report r;
    r.record["command"] = "stp two-banker";
    auto& p = r.record["parameters"];
    p["n1"] = a.n;
    p["n2"] = a.n2;
    p["seed1"] = a.seed;
    p["seed2"] = seed2;
    p["generator"] = kGeneratorName;
    p["max_tosses"] = a.max_tosses;
    r.record["fee_per_banker_pricing"] = rep.fee_per_banker_pricing;
    r.record["fee_combined_pricing"] = rep.fee_combined_pricing;
    r.record["payout_first_banker"] = rep.first.total_payout;
    r.record["payout_second_banker"] = rep.second.total_payout;
    r.record["empirical_total_payout"] = rep.empirical_total_payout;
    r.record["toss_cap_hits"] = rep.first.toss_cap_hits + rep.second.toss_cap_hits;
    return r;
}

Report cmd_stp_decompose(const StpArgs& a) {
    const auto rep = verify_decomposition(a.depth);
    Report r;
    r.record["command"] = "stp decompose";
    r.record["parameters"]["depth"] = a.depth;
    r.record["sequences_checked"] = rep.sequences_checked;
    r.record["mismatches"] = rep.mismatches;
    r.record["lottery_expectations"] = rep.lottery_expectations;
    return r;
}

// --- option ---------------------------------------------------------------

struct OptionArgs {
    std::string density = "cauchy";
    double location = 0.0;
    double scale = 1.0;
    double strike = 1.0;
    double spot = 1.0;
    double rate = 0.0;
    double maturity = 0.0;
    std::string side = "call";
    std::string mode = "multiple";
    std::string epsilon = "0.01";
    double upper_mult = 100.0;
    double lower_mult = 0.01;
    std::vector<double> uppers;
};

ContinuousDensity make_density(const OptionArgs& a) {
    if (a.density == "cauchy") return ContinuousDensity::cauchy(a.location, a.scale);
    if (a.density == "gaussian") return ContinuousDensity::gaussian(a.location, a.scale);
    throw Error(ErrorCode::InvalidParameter, "unknown density \"" + a.density + "\"");
}

Report cmd_option_price(const OptionArgs& a) {
    const auto density = make_density(a);
    OptionSpec spec{a.spot, a.strike, a.rate, a.maturity,
                    a.side == "put" ? OptionSide::Put : OptionSide::Call};
    if (a.side != "call" && a.side != "put") {
        throw Error(ErrorCode::InvalidParameter, "side must be call or put");
    }
    BoundMode mode;
    if (a.mode == "epsilon") {
        mode = EpsilonQuantile{parse_number_or_power(a.epsilon)};
    } else if (a.mode == "multiple") {
        mode = ExplicitMultiple{a.upper_mult, a.lower_mult};
    } else {
        throw Error(ErrorCode::InvalidParameter, "mode must be epsilon or multiple");
    }
    const auto res = truncated_price(density, spec, mode);

    Report r;
    r.record["command"] = "option price";
    auto& p = r.record["parameters"];
    p["density"] = a.density;
    p["location"] = a.location;
    p["scale"] = a.scale;
    p["side"] = a.side;
    p["spot"] = a.spot;
    p["strike"] = a.strike;
    p["rate"] = a.rate;
    p["maturity"] = a.maturity;
    p["mode"] = a.mode;
    if (a.mode == "epsilon") {
        p["epsilon"] = std::get<EpsilonQuantile>(mode).epsilon;
    } else {
        p["upper_mult"] = a.upper_mult;
        p["lower_mult"] = a.lower_mult;
    }
    r.record["price"] = res.price;
    r.record["mode"] = res.mode;
    r.record["bounds"] = truncprice::Json::array({res.lower_bound, res.upper_bound});
    r.record["quadrature_error"] = res.quadrature_error;
    r.record["degenerate_bounds"] = res.degenerate_bounds;
    if (res.degenerate_bounds) {
        r.warnings.push_back("truncation bound does not bracket the strike; price set to 0");
    }
    return r;
}

Report cmd_option_diverge(const OptionArgs& a) {
    const auto density = make_density(a);
    const auto rows = divergence_table(density, a.strike, a.uppers);
    Report r;
    r.record["command"] = "option diverge";
    auto& p = r.record["parameters"];
    p["density"] = a.density;
    p["location"] = a.location;
    p["scale"] = a.scale;
    p["strike"] = a.strike;
    p["uppers"] = a.uppers;
    for (const auto& row : rows) {
        truncprice::Json j;
        j["upper"] = row.upper;
        j["partial_price"] = row.partial_price;
        j["quadrature_error"] = row.quadrature_error;
        r.rows.push_back(std::move(j));
    }
    return r;
}

} // namespace

double parse_number_or_power(std::string_view text) {
    auto parse_plain = [&](std::string_view s) {
        double v = 0.0;
        const auto* end = s.data() + s.size();
        const auto res = std::from_chars(s.data(), end, v);
        if (res.ec != std::errc{} || res.ptr != end || s.empty()) {
            throw Error(ErrorCode::ParseError, "cannot parse number \"" + std::string(text) + "\"");
        }
        return v;
    };
    const auto caret = text.find('^');
    if (caret == std::string_view::npos) return parse_plain(text);
    const double base = parse_plain(text.substr(0, caret));
    const double exponent = parse_plain(text.substr(caret + 1));
    if (base == 2.0 && exponent == std::trunc(exponent) && std::abs(exponent) < 2000.0) {
        return std::ldexp(1.0, static_cast<int>(exponent));
    }
    return std::pow(base, exponent);
}

DiscretePayoutDistribution resolve_distribution(std::string_view source) {
    if (source == "st-petersburg") return st_petersburg();
    if (source.starts_with("lottery:")) {
        const auto k = parse_number_or_power(source.substr(8));
        if (k != std::trunc(k) || k < 1 || k > kMaxLotteryK) {
            throw Error(ErrorCode::InvalidParameter, "lottery K must be an integer in [1, 1023]");
        }
        return lottery_game(static_cast<unsigned>(k));
    }
    if (source.starts_with("file:")) return load_distribution_file(std::string(source.substr(5)));
    throw Error(ErrorCode::InvalidParameter,
                "unknown distribution \"" + std::string(source) +
                    "\" (expected st-petersburg, lottery:K or file:PATH)");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Truncated-expectation pricing toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format_name = "table";
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();

    PriceArgs pa;
    auto* price = app.add_subcommand("price", "Price a discrete payout distribution");
    price->add_option("--dist", pa.dist, "st-petersburg, lottery:K or file:PATH")->required();
    price->add_option("--epsilon", pa.epsilon, "Hopeless probability, decimal or 2^-N")->required();
    price->add_option("--k", pa.k, "Buyer cost-effectiveness factor")->capture_default_str();
    price->add_option("--seller-k", pa.seller_k, "Seller factor for the closeable quote (default: k)");
    price->add_option("--mu", pa.mu, "Quoted price to accept or reject");

    StpArgs sa;
    auto* stp = app.add_subcommand("stp", "St. Petersburg experiments");
    stp->require_subcommand(1);
    auto* simulate = stp->add_subcommand("simulate", "Seeded Monte Carlo sessions");
    simulate->add_option("--n", sa.n, "Plays per session")->capture_default_str();
    simulate->add_option("--seed", sa.seed, "Seed")->capture_default_str();
    simulate->add_option("--max-tosses", sa.max_tosses, "Toss cap")->capture_default_str();
    simulate->add_option("--sessions", sa.sessions, "Number of sessions")->capture_default_str();
    auto* feller = stp->add_subcommand("feller", "Feller's fee log2(n)");
    feller->add_option("--n", sa.n, "Number of plays")->capture_default_str();
    auto* banker = stp->add_subcommand("two-banker", "Split play between two bankers");
    banker->add_option("--n1", sa.n, "Plays at the first banker")->capture_default_str();
    banker->add_option("--n2", sa.n2, "Plays at the second banker")->capture_default_str();
    banker->add_option("--seed", sa.seed, "Seed of the first session")->capture_default_str();
    banker->add_option("--seed2", sa.seed2, "Seed of the second session");
    banker->add_option("--max-tosses", sa.max_tosses, "Toss cap")->capture_default_str();
    auto* decompose = stp->add_subcommand("decompose", "Exhaustive lottery decomposition check");
    decompose->add_option("--depth", sa.depth, "Number of first-head positions")->capture_default_str();

    OptionArgs oa;
    auto* option = app.add_subcommand("option", "Truncated option pricing");
    option->require_subcommand(1);
    auto add_density = [&](CLI::App* sub) {
        sub->add_option("--density", oa.density, "cauchy or gaussian")->capture_default_str();
        sub->add_option("--location", oa.location, "Density location / mean")->capture_default_str();
        sub->add_option("--scale", oa.scale, "Density scale / stddev")->capture_default_str();
        sub->add_option("--strike", oa.strike, "Strike K")->capture_default_str();
    };
    auto* oprice = option->add_subcommand("price", "Truncated call/put price");
    add_density(oprice);
    oprice->add_option("--spot", oa.spot, "Spot S")->capture_default_str();
    oprice->add_option("--rate", oa.rate, "Risk-free rate r")->capture_default_str();
    oprice->add_option("--maturity", oa.maturity, "Maturity T in years")->capture_default_str();
    oprice->add_option("--side", oa.side, "call or put")->capture_default_str();
    oprice->add_option("--mode", oa.mode, "epsilon or multiple")->capture_default_str();
    oprice->add_option("--epsilon", oa.epsilon, "Quantile epsilon for --mode epsilon")->capture_default_str();
    oprice->add_option("--upper-mult", oa.upper_mult, "Call bound multiple of spot")->capture_default_str();
    oprice->add_option("--lower-mult", oa.lower_mult, "Put bound multiple of spot")->capture_default_str();
    auto* diverge = option->add_subcommand("diverge", "Untruncated partial call integrals");
    add_density(diverge);
    diverge->add_option("--uppers", oa.uppers, "Comma-separated upper limits")
        ->delimiter(',')
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    const Format format = format_name == "json" ? Format::Json
                          : format_name == "csv" ? Format::Csv
                                                 : Format::Table;
    try {
        Report r;
        if (price->parsed()) {
            r = cmd_price(pa);
        } else if (simulate->parsed()) {
            r = cmd_stp_simulate(sa);
        } else if (feller->parsed()) {
            r = cmd_stp_feller(sa);
        } else if (banker->parsed()) {
            r = cmd_stp_two_banker(sa);
        } else if (decompose->parsed()) {
            r = cmd_stp_decompose(sa);
        } else if (oprice->parsed()) {
            r = cmd_option_price(oa);
        } else if (diverge->parsed()) {
            r = cmd_option_diverge(oa);
        }
        emit(std::move(r), format, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace truncprice::cli
