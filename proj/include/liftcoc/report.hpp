#pragma once

#include "liftcoc/rational.hpp"

#include <string>
#include <vector>

namespace liftcoc {

struct ExperimentReport {
    std::string id;
    Rat expected;
    std::string provenance; // paper | trivial | derived
    Rat computed;
    int depth = 0;
    bool stable = false;
    bool match = false;
    double wall_ms = 0.0;
};

// JSON array, rationals as "p/q" strings; key order fixed.
std::string reports_json(const std::vector<ExperimentReport> &reports);
std::string reports_table(const std::vector<ExperimentReport> &reports);
bool reports_all_pass(const std::vector<ExperimentReport> &reports);

} // namespace liftcoc
