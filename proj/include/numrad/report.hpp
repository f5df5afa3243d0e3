#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "json.hpp"
#include "numrad/bounds.hpp"

namespace numrad {

/// Shortest round-trip decimal for a double (17 significant digits max).
inline std::string format_number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[32];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

inline nlohmann::json bound_to_json(const BoundValue& b, double omega) {
    nlohmann::json j = {{"id", std::string(to_string(b.id))}, {"value", b.value}, {"slack", b.value - omega}};
    j["t"] = b.t_used ? nlohmann::json(*b.t_used) : nlohmann::json(nullptr);
    j["inner"] = b.inner ? nlohmann::json(*b.inner) : nlohmann::json(nullptr);
    nlohmann::json detail = nlohmann::json::object();
    for (const auto& [k, v] : b.detail) detail[k] = v;
    j["detail"] = std::move(detail);
    return j;
}

inline nlohmann::json report_to_json(const BoundReport& r) {
    nlohmann::json j;
    j["omega"] = {{"value", r.omega.value},
                  {"theta_star", r.omega.theta_star},
                  {"grid_points", r.omega.grid_points},
                  {"refine_width", r.omega.refine_width}};
    j["bounds"] = nlohmann::json::array();
    for (const auto& b : r.bounds) j["bounds"].push_back(bound_to_json(b, r.omega.value));
    j["failures"] = nlohmann::json::array();
    for (const auto& [id, msg] : r.failures) j["failures"].push_back({{"id", std::string(to_string(id))}, {"error", msg}});
    return j;
}

inline std::string report_to_csv(const BoundReport& r) {
    std::string out = "id,t,value,inner,slack\n";
    out += "omega,," + format_number(r.omega.value) + ",,0\n";
    for (std::size_t k = 0; k < r.bounds.size(); ++k) {
        const auto& b = r.bounds[k];
        out += std::string(to_string(b.id)) + ',' + (b.t_used ? format_number(*b.t_used) : "") + ',' +
               format_number(b.value) + ',' + (b.inner ? format_number(*b.inner) : "") + ',' +
               format_number(r.slacks[k]) + '\n';
    }
    for (const auto& [id, msg] : r.failures) out += std::string(to_string(id)) + ",,error,," + '\n';
    return out;
}

inline std::string report_to_table(const BoundReport& r) {
    char line[256];
    std::string out;
    std::snprintf(line, sizeof line, "%-18s %-22s %-22s %-12s %s\n", "bound", "value", "inner", "t", "slack");
    out += line;
    std::snprintf(line, sizeof line, "%-18s %s\n", "omega", format_number(r.omega.value).c_str());
    out += line;
    for (std::size_t k = 0; k < r.bounds.size(); ++k) {
        const auto& b = r.bounds[k];
        char t[32] = "-";
        if (b.t_used) std::snprintf(t, sizeof t, "%.6f", *b.t_used);
        std::snprintf(line, sizeof line, "%-18s %-22s %-22s %-12s %.3e\n", std::string(to_string(b.id)).c_str(),
                      format_number(b.value).c_str(), b.inner ? format_number(*b.inner).c_str() : "-", t,
                      r.slacks[k]);
        out += line;
    }
    for (const auto& [id, msg] : r.failures) {
        out += std::string(to_string(id)) + "  FAILED: " + msg + '\n';
    }
    return out;
}

}  // namespace numrad
