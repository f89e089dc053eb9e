#ifndef GCH_VERIFY_HPP
#define GCH_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace gch {

struct CheckResult {
    std::string name;
    double max_error;
    double tolerance;
    bool pass;
    bool gating = true; // diagnostics report but never fail a suite
};

// Property suites: kernels, series, kj, qj, integral, genfunc, apps, all.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);

const std::vector<std::string>& suite_names();

bool all_pass(const std::vector<CheckResult>& results);

} // namespace gch

#endif
