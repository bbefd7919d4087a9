#pragma once
// Identity suites: the exact q-series catalog and the numerical verification
// suites shared by the command-line driver and the acceptance runner.

#include <optional>
#include <string>
#include <vector>

#include "mocktheta/rational.hpp"
#include "mocktheta/report.hpp"

namespace mocktheta::verify {

// ---------------------------------------------------------------------------
// Exact q-series catalog
// ---------------------------------------------------------------------------

struct QCheckResult {
    std::string id;
    bool pass = false;
    std::optional<Rat> first_mismatch;
    Rat checked_below{0};
};

std::vector<std::string> qcheck_ids();
bool has_qcheck(const std::string& id);
// order = exponent bound (exclusive); the default matches the suites.
QCheckResult run_qcheck(const std::string& id, long long order = 50);

// ---------------------------------------------------------------------------
// Numerical suites
// ---------------------------------------------------------------------------

// "qseries", "lerch", "indefinite", "fourier", "mock", "property", "all"
std::vector<std::string> suite_ids();
bool has_suite(const std::string& id);

// tol_scale multiplies every per-entry tolerance (1.0 = the calibrated
// defaults); the seed drives all sample-point generation.
VerificationReport run_suite(const std::string& id, std::uint64_t seed = 42,
                             double tol_scale = 1.0);

}  // namespace mocktheta::verify
