#include "mocktheta/report.hpp"

#include <algorithm>
#include <ctime>
#include <nlohmann/json.hpp>

namespace mocktheta::verify {

int VerificationReport::passed() const {
    int n = 0;
    for (const auto& e : entries) n += e.pass ? 1 : 0;
    return n;
}

int VerificationReport::failed() const {
    return int(entries.size()) - passed();
}

void VerificationReport::add(CheckEntry e) { entries.push_back(std::move(e)); }

void VerificationReport::merge(const VerificationReport& other) {
    for (const auto& e : other.entries) entries.push_back(e);
}

std::string report_to_json(const VerificationReport& report, bool with_timestamp) {
    using json = nlohmann::ordered_json;
    std::vector<CheckEntry> sorted = report.entries;
    std::sort(sorted.begin(), sorted.end(),
              [](const CheckEntry& a, const CheckEntry& b) { return a.id < b.id; });
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool_version"] = kToolVersion;
    if (with_timestamp) {
        char buf[64];
        const std::time_t now = std::time(nullptr);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        j["generated_at"] = buf;
    }
    j["config"] = {{"suite", report.suite},
                   {"seed", report.seed},
                   {"tol_scale", report.tol_scale}};
    json arr = json::array();
    for (const auto& e : sorted) {
        arr.push_back({{"id", e.id},
                       {"anchor", e.anchor},
                       {"samples", e.samples},
                       {"max_deviation", e.max_dev},
                       {"tolerance", e.tol},
                       {"pass", e.pass}});
    }
    j["entries"] = arr;
    j["summary"] = {{"passed", report.passed()}, {"failed", report.failed()}};
    return j.dump(2) + "\n";
}

}  // namespace mocktheta::verify
