#pragma once

// Sweeps every ideal of bounded index and compares each fast criterion with
// the brute-force conductor test.

#include "conductor/quadratic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace conductor {

struct CrossvalOptions {
    std::vector<std::int64_t> ds{-1, 2, 3, 5, -5, 13};
    std::uint64_t max_index = 200;
    /// Orders Z + fS to sweep besides the base Z. f = 1 means S itself.
    std::vector<std::uint64_t> order_fs;
    Limits limits;
    bool parallel = true;
};

struct Mismatch {
    std::int64_t d = 0;
    std::uint64_t f = 0;  // 0 for the base Z
    IntMatrix ideal;
    mpz_class index;
    std::string check;
    std::string expected;
    std::string got;

    bool operator==(const Mismatch&) const = default;
};

struct SweepSummary {
    std::int64_t d = 0;
    std::uint64_t f = 0;
    std::uint64_t ideals = 0;
    std::uint64_t checks = 0;
    std::uint64_t oracle_conductors = 0;
    std::uint64_t certificates = 0;  // sufficiency certificates issued
    std::uint64_t radical = 0;
    std::uint64_t hypothesis_failed = 0;  // criterion runs that declined to decide
    /// Base Z only: whether the conductor ideals are exactly {nS : n^2 <= bound}.
    std::optional<bool> scalar_pattern;
    std::vector<Mismatch> mismatches;
};

struct CrossvalReport {
    std::vector<SweepSummary> sweeps;

    std::uint64_t mismatch_count() const;
    /// Smallest index first, then field order, then basis.
    std::optional<Mismatch> minimal_counterexample() const;
};

SweepSummary sweep_integers(const QuadField& field, std::uint64_t max_index, const Limits& limits = {});
SweepSummary sweep_order(const QuadField& field, std::uint64_t f, std::uint64_t max_index, const Limits& limits = {});

/// Deterministic regardless of how the sweeps are scheduled.
CrossvalReport crossval(const CrossvalOptions& opts);

} // namespace conductor
