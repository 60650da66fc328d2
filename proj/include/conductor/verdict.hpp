#pragma once

#include "conductor/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace conductor {

enum class Decision { Conductor, NotConductor, HypothesisFailed };

std::string_view decision_name(Decision d);
Decision parse_decision(std::string_view s);

/// Which local condition a prime satisfied. The letters follow the
/// Dedekind criterion over Z: a = residue degree >= 2, b = e does not
/// divide v - 1, c = strict inequality against a sibling prime.
enum class Condition { None, ResidueDegree, Divisibility, Inequality, ProperSum, Colon, NotApplicable };

std::string_view condition_name(Condition c);
Condition parse_condition(std::string_view s);

struct PrimeReport {
    std::int64_t p = 0;
    IntMatrix prime;  // HNF basis of M
    int e = 0;
    int f = 0;
    int v = 0;
    Condition condition = Condition::None;

    bool operator==(const PrimeReport&) const = default;
};

enum class WitnessKind { None, Element, Lattice };

std::string_view witness_kind_name(WitnessKind k);
WitnessKind parse_witness_kind(std::string_view s);

struct Witness {
    WitnessKind kind = WitnessKind::None;
    IntVector element;
    IntMatrix lattice;
    std::string note;

    static Witness none() { return {}; }
    static Witness of_element(IntVector x, std::string note);
    static Witness of_lattice(IntMatrix basis, std::string note);

    bool operator==(const Witness&) const = default;
};

struct Verdict {
    Decision decision = Decision::HypothesisFailed;
    std::string criterion;
    std::vector<PrimeReport> primes;
    Witness witness;

    bool operator==(const Verdict&) const = default;
};

} // namespace conductor
