#include "conductor/verdict.hpp"

#include "conductor/errors.hpp"

#include <array>
#include <utility>

namespace conductor {

namespace {

constexpr std::array<std::pair<Decision, std::string_view>, 3> kDecisions{{
    {Decision::Conductor, "Conductor"},
    {Decision::NotConductor, "NotConductor"},
    {Decision::HypothesisFailed, "HypothesisFailed"},
}};

constexpr std::array<std::pair<Condition, std::string_view>, 7> kConditions{{
    {Condition::None, "none"},
    {Condition::ResidueDegree, "a"},
    {Condition::Divisibility, "b"},
    {Condition::Inequality, "c"},
    {Condition::ProperSum, "sum"},
    {Condition::Colon, "colon"},
    {Condition::NotApplicable, "n/a"},
}};

constexpr std::array<std::pair<WitnessKind, std::string_view>, 3> kWitnessKinds{{
    {WitnessKind::None, "none"},
    {WitnessKind::Element, "element"},
    {WitnessKind::Lattice, "lattice"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value)
{
    for (auto const& [v, name] : table)
        if (v == value) return name;
    return "?";
}

template <typename E, std::size_t N>
E value_of(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view s, const char* what)
{
    for (auto const& [v, name] : table)
        if (name == s) return v;
    throw Error(ErrorCode::InvalidArgument, std::string("unknown ") + what + " '" + std::string(s) + "'");
}

} // namespace

std::string_view decision_name(Decision d) { return name_of(kDecisions, d); }
Decision parse_decision(std::string_view s) { return value_of(kDecisions, s, "decision"); }
std::string_view condition_name(Condition c) { return name_of(kConditions, c); }
Condition parse_condition(std::string_view s) { return value_of(kConditions, s, "condition"); }
std::string_view witness_kind_name(WitnessKind k) { return name_of(kWitnessKinds, k); }
WitnessKind parse_witness_kind(std::string_view s) { return value_of(kWitnessKinds, s, "witness kind"); }

Witness Witness::of_element(IntVector x, std::string note)
{
    return Witness{WitnessKind::Element, std::move(x), {}, std::move(note)};
}

Witness Witness::of_lattice(IntMatrix basis, std::string note)
{
    return Witness{WitnessKind::Lattice, {}, std::move(basis), std::move(note)};
}

} // namespace conductor
