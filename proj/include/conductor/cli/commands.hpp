#pragma once

#include "conductor/cli/report.hpp"
#include "conductor/quadratic.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace conductor::cli {

// Exit statuses. The first three are the verdict; everything above is an error.
inline constexpr int kExitConductor = 0;
inline constexpr int kExitNotConductor = 1;
inline constexpr int kExitHypothesisFailed = 2;
inline constexpr int kExitUsage = 3;
inline constexpr int kExitFailure = 4;
inline constexpr int kExitCrosscheck = 5;

int exit_code(Decision d);

struct CheckOptions {
    std::int64_t d = -1;
    std::string ideal;
    std::uint64_t order_f = 0;  // 0 selects the base Z
    std::string criterion = "auto";
    bool crosscheck = false;
    Limits limits;
};

/// Criterion that `auto` resolves to for this input.
std::string resolve_criterion(const QuadField& field, const Subring& base, const Ideal& i,
                              const std::string& requested, const Limits& limits);

Report run_check(const CheckOptions& opts);

/// "-1,2,3" -> {-1, 2, 3}
std::vector<std::int64_t> parse_int_list(const std::string& s);

/// Full command line entry point; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace conductor::cli
