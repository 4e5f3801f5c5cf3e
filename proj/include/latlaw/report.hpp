#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace latlaw {

struct CheckRow {
    double point = 0.0;
    double value = 0.0;
};

/// A named side condition that must hold in addition to residual <= tolerance
/// (monotone convergence, a limit validator, ...).
struct CheckCondition {
    std::string name;
    bool ok = true;
    double value = 0.0;
};

/// Outcome of one verification suite.
///
/// pass == (residual <= tolerance && every condition ok), and worst_point
/// is the grid location (or coefficient index, alpha, n, ...) attaining
/// the residual. point_label names what worst_point measures.
struct CheckReport {
    std::string suite;
    double residual = 0.0;
    double worst_point = 0.0;
    std::string point_label = "s";
    double tolerance = 0.0;
    bool pass = true;
    std::string note;
    std::vector<CheckCondition> conditions;
    std::vector<CheckRow> details;

    /// Recomputes pass from residual, tolerance and conditions.
    void finalize();
};

/// Builds a report from per-point deviations (absolute values are taken).
CheckReport make_report(std::string suite, std::string point_label, const std::vector<double>& points,
                        const std::vector<double>& deviations, double tolerance);

nlohmann::ordered_json to_json(const CheckReport& report, bool with_details = true);
std::string to_text(const CheckReport& report);

}  // namespace latlaw
