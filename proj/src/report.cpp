#include "latlaw/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "latlaw/errors.hpp"
#include "latlaw/text.hpp"

namespace latlaw {

void CheckReport::finalize() {
    pass = residual <= tolerance;
    for (const auto& c : conditions) pass = pass && c.ok;
}

CheckReport make_report(std::string suite, std::string point_label, const std::vector<double>& points,
                        const std::vector<double>& deviations, double tolerance) {
    if (points.size() != deviations.size() || points.empty()) {
        throw DomainError("make_report: points and deviations must be non-empty and equally long");
    }
    CheckReport r;
    r.suite = std::move(suite);
    r.point_label = std::move(point_label);
    r.tolerance = tolerance;
    r.residual = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double d = std::abs(deviations[i]);
        // A NaN deviation is as bad as it gets.
        if (std::isnan(d)) d = std::numeric_limits<double>::infinity();
        r.details.push_back({points[i], deviations[i]});
        if (d > r.residual) {
            r.residual = d;
            r.worst_point = points[i];
        }
    }
    r.finalize();
    return r;
}

namespace {

nlohmann::ordered_json number(double x) {
    // JSON has no inf/nan; keep them visible as strings.
    if (std::isfinite(x)) return x;
    return format_double(x);
}

}  // namespace

nlohmann::ordered_json to_json(const CheckReport& report, bool with_details) {
    nlohmann::ordered_json j;
    j["suite"] = report.suite;
    j["residual"] = number(report.residual);
    j["worst_point"] = number(report.worst_point);
    j["point_label"] = report.point_label;
    j["tolerance"] = number(report.tolerance);
    j["verdict"] = report.pass ? "pass" : "fail";
    if (!report.note.empty()) j["note"] = report.note;
    if (!report.conditions.empty()) {
        auto& conds = j["conditions"] = nlohmann::ordered_json::array();
        for (const auto& c : report.conditions) {
            conds.push_back({{"name", c.name}, {"ok", c.ok}, {"value", number(c.value)}});
        }
    }
    if (with_details) {
        auto& rows = j["details"] = nlohmann::ordered_json::array();
        for (const auto& row : report.details) {
            rows.push_back({{"point", number(row.point)}, {"value", number(row.value)}});
        }
    }
    return j;
}

std::string to_text(const CheckReport& report) {
    std::ostringstream out;
    out << report.suite << ": " << (report.pass ? "PASS" : "FAIL") << "  residual=" << format_double(report.residual)
        << " at " << report.point_label << '=' << format_double(report.worst_point)
        << "  tolerance=" << format_double(report.tolerance) << '\n';
    for (const auto& c : report.conditions) {
        out << "  [" << (c.ok ? "ok" : "violated") << "] " << c.name << " (" << format_double(c.value) << ")\n";
    }
    if (!report.note.empty()) out << "  note: " << report.note << '\n';
    return out.str();
}

}  // namespace latlaw
