#pragma once

// Machine-readable run reports shared by the CLI and the acceptance suite.

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "binzeta/zeta.hpp"

namespace binzeta {

using Json = nlohmann::json;

enum class Verdict { pass, fail, recorded };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::recorded: return "recorded";
    }
    return "?";
}

/// Integers that fit in 64 bits stay numbers; larger ones become decimal strings.
inline Json json_int(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

struct ResultItem {
    std::string name;
    std::optional<Json> expected;
    Json observed;
    Verdict verdict = Verdict::recorded;
    std::optional<double> wall_time_ms;
};

struct RunReport {
    std::string command;
    Json params = Json::object();
    std::vector<ResultItem> results;
    double wall_time_ms = 0;

    /// Records a comparison; verdict is pass iff observed == expected.
    ResultItem& check(std::string name, Json expected, Json observed) {
        const Verdict v = expected == observed ? Verdict::pass : Verdict::fail;
        results.push_back({std::move(name), std::move(expected), std::move(observed), v, std::nullopt});
        return results.back();
    }

    /// Records a boolean property under an explicit expectation string.
    ResultItem& check_true(std::string name, bool ok, Json observed, Json expected = "holds") {
        results.push_back({std::move(name), std::move(expected), std::move(observed),
                           ok ? Verdict::pass : Verdict::fail, std::nullopt});
        return results.back();
    }

    ResultItem& record(std::string name, Json observed) {
        results.push_back({std::move(name), std::nullopt, std::move(observed), Verdict::recorded, std::nullopt});
        return results.back();
    }

    bool ok() const {
        for (const auto& r : results)
            if (r.verdict == Verdict::fail) return false;
        return true;
    }
};

/// Measures wall time of a scope into a double.
class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline Json to_json(const RunReport& r) {
    Json results = Json::array();
    for (const auto& item : r.results) {
        Json j = {{"name", item.name},
                  {"expected", item.expected ? *item.expected : Json(nullptr)},
                  {"observed", item.observed},
                  {"verdict", to_string(item.verdict)}};
        if (item.wall_time_ms) j["wall_time_ms"] = *item.wall_time_ms;
        results.push_back(std::move(j));
    }
    return {{"command", r.command}, {"params", r.params}, {"results", results}, {"wall_time_ms", r.wall_time_ms}};
}

namespace detail {

inline std::string cell(const Json& j) {
    if (j.is_null()) return "-";
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace detail

inline void write_table(std::ostream& out, const RunReport& r) {
    out << r.command;
    if (!r.params.empty()) out << "  " << r.params.dump();
    out << "\n";
    std::size_t wn = 4, we = 8, wo = 8;
    for (const auto& item : r.results) {
        wn = std::max(wn, item.name.size());
        we = std::max(we, detail::cell(item.expected ? *item.expected : Json(nullptr)).size());
        wo = std::max(wo, detail::cell(item.observed).size());
    }
    we = std::min<std::size_t>(we, 48);
    wo = std::min<std::size_t>(wo, 48);
    out << std::left << std::setw(static_cast<int>(wn)) << "name" << "  " << std::setw(static_cast<int>(we))
        << "expected" << "  " << std::setw(static_cast<int>(wo)) << "observed" << "  verdict\n";
    for (const auto& item : r.results) {
        out << std::setw(static_cast<int>(wn)) << item.name << "  " << std::setw(static_cast<int>(we))
            << detail::cell(item.expected ? *item.expected : Json(nullptr)) << "  " << std::setw(static_cast<int>(wo))
            << detail::cell(item.observed) << "  " << to_string(item.verdict);
        if (item.wall_time_ms) out << "  (" << std::fixed << std::setprecision(1) << *item.wall_time_ms << " ms)";
        out << "\n";
    }
    out << std::fixed << std::setprecision(1) << "wall time " << r.wall_time_ms << " ms, "
        << (r.ok() ? "all checks passed" : "FAILURES") << "\n";
}

inline void write_csv(std::ostream& out, const RunReport& r) {
    out << "command,name,expected,observed,verdict\n";
    for (const auto& item : r.results)
        out << detail::csv_escape(r.command) << ',' << detail::csv_escape(item.name) << ','
            << detail::csv_escape(item.expected ? detail::cell(*item.expected) : "") << ','
            << detail::csv_escape(detail::cell(item.observed)) << ',' << to_string(item.verdict) << '\n';
}

}  // namespace binzeta
