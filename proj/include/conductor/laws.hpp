#pragma once

// Seeded property suites for the general closure laws of conductor ideals.
// Cases are drawn from the ideals of small index of a few quadratic rings,
// over the base Z and over orders; the truth for "is a conductor ideal"
// always comes from is_conductor_bruteforce.

#include <cstdint>
#include <string>
#include <vector>

namespace conductor {

struct LawOptions {
    std::uint64_t seed = 20240611;
    int cases = 200;
    std::vector<std::int64_t> ds{-1, 5, -3, 2, -5};
    std::uint64_t max_index = 64;
};

struct LawResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;
};

/// Names accepted by run_law, in a fixed order.
const std::vector<std::string>& law_names();

LawResult run_law(const std::string& name, const LawOptions& opts);
std::vector<LawResult> run_laws(const LawOptions& opts);

} // namespace conductor
