#pragma once
// Verification report records: one entry per identity, with the sampled
// deviation, the tolerance it was held to, and a stable JSON rendering.

#include <cstdint>
#include <string>
#include <vector>

namespace mocktheta::verify {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

struct CheckEntry {
    std::string id;      // stable identity id
    std::string anchor;  // the identity itself, as a formula
    int samples = 0;
    double max_dev = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string suite;
    std::uint64_t seed = 0;
    double tol_scale = 1.0;
    std::vector<CheckEntry> entries;

    int passed() const;
    int failed() const;
    bool all_pass() const { return failed() == 0; }
    void add(CheckEntry e);
    void merge(const VerificationReport& other);
};

// Stable JSON: entries ordered by id; the timestamp field is the only
// run-dependent content and can be omitted for byte comparisons.
std::string report_to_json(const VerificationReport& report, bool with_timestamp);

}  // namespace mocktheta::verify
