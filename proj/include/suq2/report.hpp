#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace suq2 {

/// Identifies one verification cell. q is 0 for q-independent cells.
struct CellKey {
    double q = 0.0;
    int twice_nmax = 0;
    std::string subject; // generator, relation, coefficient kind, ...

    auto operator<=>(const CellKey&) const = default;
};

struct Metric {
    std::string name;
    double value = 0.0;
};

/// One check: inputs, named metrics, the thresholds applied, and the verdict.
/// pass is a pure function of metrics and thresholds; wall time is kept
/// outside the metric payload.
struct VerificationReport {
    std::string suite;
    CellKey key;
    std::vector<Metric> metrics;
    std::vector<Metric> thresholds;
    bool pass = false;
    std::string note;
    double wall_ms = 0.0;

    double metric(const std::string& name) const; // throws std::out_of_range
};

} // namespace suq2
