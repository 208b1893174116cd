#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "netquake/graph.hpp"

namespace netquake {

inline constexpr const char* kToolVersion = "netquake 0.1.0";

// One run of a strategy or QRE on one network, as written to disk.
struct ResultRecord {
    std::string network_name;
    std::size_t N = 0;
    std::size_t M = 0;
    std::string strategy;
    nlohmann::json params = nlohmann::json::object();
    double R = 0.0;
    std::vector<std::pair<std::size_t, double>> samples;
    std::vector<double> history;  // QRE only
    long long runtime_ms = 0;
    std::string tool_version = kToolVersion;
};

inline double round4(double x) { return std::round(x * 1e4) / 1e4; }

// Change points of a step curve over Q = 0..N, always including 0 and N.
inline std::vector<std::pair<std::size_t, double>> curve_breakpoints(
    const std::vector<double>& materialized) {
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t q = 0; q < materialized.size(); ++q)
        if (q == 0 || q + 1 == materialized.size() || materialized[q] != materialized[q - 1])
            out.emplace_back(q, materialized[q]);
    return out;
}

inline nlohmann::json to_json(const ResultRecord& r) {
    nlohmann::json j;
    j["network_name"] = r.network_name;
    j["N"] = r.N;
    j["M"] = r.M;
    j["strategy"] = r.strategy;
    j["params"] = r.params;
    j["R"] = round4(r.R);
    nlohmann::json samples = nlohmann::json::array();
    for (auto [q, g] : r.samples)
        samples.push_back({q, g});
    j["samples"] = std::move(samples);
    if (!r.history.empty())
        j["history"] = r.history;
    j["runtime_ms"] = r.runtime_ms;
    j["tool_version"] = r.tool_version;
    return j;
}

// Problems with a serialized record; empty when it is valid.
inline std::vector<std::string> validate_record(const nlohmann::json& j) {
    std::vector<std::string> problems;
    auto need = [&](const char* key, auto check, const char* what) {
        if (!j.contains(key) || !check(j[key]))
            problems.push_back(std::string(key) + " must be " + what);
    };
    auto is_string = [](const nlohmann::json& v) { return v.is_string(); };
    auto is_count = [](const nlohmann::json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); };
    need("network_name", is_string, "a string");
    need("N", is_count, "a non-negative integer");
    need("M", is_count, "a non-negative integer");
    need("strategy", is_string, "a string");
    need("params", [](const nlohmann::json& v) { return v.is_object(); }, "an object");
    need("R", [](const nlohmann::json& v) { return v.is_number() && v.get<double>() >= 0.0 && v.get<double>() <= 1.0; }, "a number in [0, 1]");
    need("runtime_ms", is_count, "a non-negative integer");
    need("tool_version", is_string, "a string");
    if (!j.contains("samples") || !j["samples"].is_array()) {
        problems.push_back("samples must be an array");
        return problems;
    }
    long long last_q = -1;
    double last_g = 2.0;
    for (const auto& s : j["samples"]) {
        if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number()) {
            problems.push_back("each sample must be [Q, gcs]");
            break;
        }
        const long long q = s[0].get<long long>();
        const double g = s[1].get<double>();
        if (q <= last_q)
            problems.push_back("sample Q values must be strictly increasing");
        if (g > last_g || g < 0.0 || g > 1.0)
            problems.push_back("sample gcs values must be non-increasing in [0, 1]");
        last_q = q;
        last_g = g;
    }
    if (j.contains("history")) {
        const auto& h = j["history"];
        if (!h.is_array())
            problems.push_back("history must be an array");
        else
            for (std::size_t i = 1; i < h.size(); ++i)
                if (h[i].get<double>() > h[i - 1].get<double>())
                    problems.push_back("history must be non-increasing");
    }
    return problems;
}

}  // namespace netquake
