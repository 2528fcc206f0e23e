#include "liftcoc/report.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace liftcoc {

std::string reports_json(const std::vector<ExperimentReport> &reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &r : reports) {
        nlohmann::ordered_json j;
        j["id"] = r.id;
        j["expected"] = rat_str(r.expected);
        j["provenance"] = r.provenance;
        j["computed"] = rat_str(r.computed);
        j["depth"] = r.depth;
        j["stable"] = r.stable;
        j["match"] = r.match;
        j["wall_ms"] = r.wall_ms;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

std::string reports_table(const std::vector<ExperimentReport> &reports) {
    std::ostringstream os;
    os << std::left << std::setw(30) << "id" << std::setw(12) << "expected" << std::setw(12)
       << "computed" << std::setw(7) << "depth" << std::setw(8) << "stable" << std::setw(7)
       << "match" << "wall_ms" << '\n';
    for (const auto &r : reports) {
        os << std::left << std::setw(30) << r.id << std::setw(12) << rat_str(r.expected)
           << std::setw(12) << rat_str(r.computed) << std::setw(7) << r.depth << std::setw(8)
           << (r.stable ? "yes" : "NO") << std::setw(7) << (r.match ? "yes" : "NO") << std::fixed
           << std::setprecision(1) << r.wall_ms << '\n';
    }
    return os.str();
}

bool reports_all_pass(const std::vector<ExperimentReport> &reports) {
    for (const auto &r : reports)
        if (!r.match || !r.stable)
            return false;
    return true;
}

} // namespace liftcoc
