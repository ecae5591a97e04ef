#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include <json.hpp>

#include "truncprice/distribution.hpp"
#include "truncprice/error.hpp"

namespace truncprice {

using Json = nlohmann::ordered_json;

/// Doubles in machine-readable output carry 17 significant digits, enough
/// to reproduce the exact bit pattern when read back.
inline std::string format_number(double v) {
    if (v == 0.0) return "0"; // also folds -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (res.ec != std::errc{}) {
        throw Error(ErrorCode::InvalidParameter, "number formatting failed");
    }
    return std::string(buf, res.ptr);
}

namespace detail {

inline void render(const Json& j, std::string& out, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ',';
            first = false;
            newline(depth + 1);
            out += Json(it.key()).dump();
            out += indent < 0 ? ":" : ": ";
            render(it.value(), out, indent, depth + 1);
        }
        newline(depth);
        out += '}';
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += '[';
        bool first = true;
        for (const auto& el : j) {
            if (!first) out += ',';
            first = false;
            newline(depth + 1);
            render(el, out, indent, depth + 1);
        }
        newline(depth);
        out += ']';
        return;
    }
    case Json::value_t::number_float: {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::InvalidParameter, "non-finite number in JSON output");
        }
        out += format_number(v);
        return;
    }
    default:
        out += j.dump();
        return;
    }
}

} // namespace detail

/// Serializes with 17-significant-digit floats; re-rendering a parsed
/// rendering reproduces the same bytes.
inline std::string render_json(const Json& j, int indent = 2) {
    std::string out;
    detail::render(j, out, indent, 0);
    return out;
}

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

inline Json distribution_to_json(const DiscretePayoutDistribution& dist) {
    Json j;
    switch (dist.kind()) {
    case DiscretePayoutDistribution::Kind::StPetersburg:
        j["kind"] = "st_petersburg";
        break;
    case DiscretePayoutDistribution::Kind::LotteryGame:
        j["kind"] = "lottery";
        j["k"] = dist.lottery_k();
        break;
    case DiscretePayoutDistribution::Kind::FiniteList: {
        j["kind"] = "finite";
        Json arr = Json::array();
        for (const auto& o : dist.outcomes()) {
            arr.push_back(Json{{"payout", o.payout}, {"probability", o.probability}});
        }
        j["outcomes"] = std::move(arr);
        break;
    }
    }
    return j;
}

/// Reads {"kind": "finite" | "st_petersburg" | "lottery", ...}. Keys other
/// than those the kind needs are ignored, so files may carry notes.
inline DiscretePayoutDistribution distribution_from_json(const Json& j) {
    try {
        if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
            throw Error(ErrorCode::ParseError, "distribution needs a string field \"kind\"");
        }
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "st_petersburg") return st_petersburg();
        if (kind == "lottery") {
            const auto& k = j.at("k");
            if (!k.is_number_integer() || k.get<long long>() < 1) {
                throw Error(ErrorCode::ParseError, "lottery \"k\" must be a positive integer");
            }
            const auto kv = k.get<long long>();
            if (kv > static_cast<long long>(kMaxLotteryK)) {
                throw Error(ErrorCode::InvalidParameter, "lottery \"k\" too large");
            }
            return lottery_game(static_cast<unsigned>(kv));
        }
        if (kind == "finite") {
            const auto& arr = j.at("outcomes");
            if (!arr.is_array()) throw Error(ErrorCode::ParseError, "\"outcomes\" must be an array");
            std::vector<Outcome> outs;
            outs.reserve(arr.size());
            for (const auto& o : arr) {
                if (!o.at("payout").is_number() || !o.at("probability").is_number()) {
                    throw Error(ErrorCode::ParseError, "outcome fields must be numbers");
                }
                outs.push_back({o.at("payout").get<double>(), o.at("probability").get<double>()});
            }
            return make_finite(std::move(outs));
        }
        throw Error(ErrorCode::ParseError, "unknown distribution kind \"" + kind + "\"");
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

inline std::string write_distribution(const DiscretePayoutDistribution& dist) {
    return render_json(distribution_to_json(dist)) + "\n";
}

inline DiscretePayoutDistribution read_distribution(const std::string& text) {
    return distribution_from_json(parse_json(text));
}

inline DiscretePayoutDistribution load_distribution_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_distribution(ss.str());
}

} // namespace truncprice
