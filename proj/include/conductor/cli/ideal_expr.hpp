#pragma once

// Ideal expressions on the command line:
//
//   ideal := "(" gen ("," gen)* ")" | "[[" int "," int ";" int "," int "]]" | "P(" int "," int ")"
//   gen   := term (("+" | "-") term)*
//   term  := int | int? ("w" | "sqrt(" int ")")
//
// Whitespace is ignored. A generator may start with "-", and "*" may sit
// between a coefficient and w or sqrt.

#include "conductor/quadratic.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace conductor::cli {

struct Term {
    enum class Atom { One, W, Sqrt };
    mpz_class coeff = 1;
    Atom atom = Atom::One;
    mpz_class radicand;
    std::size_t offset = 0;

    bool operator==(const Term&) const = default;
};

struct Gen {
    std::vector<Term> terms;

    bool operator==(const Gen&) const = default;
};

struct IdealExpr {
    enum class Kind { Generators, Matrix, Named };
    Kind kind = Kind::Generators;
    std::vector<Gen> gens;
    std::array<mpz_class, 4> matrix;
    mpz_class p;
    mpz_class k;
    std::size_t offset = 0;

    bool operator==(const IdealExpr&) const = default;
};

IdealExpr parse_ideal_expr(std::string_view src);
std::string print(const IdealExpr& e);
/// Element of S named by a generator; sqrt(k) must be m^2 or d*m^2.
Element lower(const Gen& g, const QuadField& field);
Ideal lower(const IdealExpr& e, const QuadField& field);
Ideal parse_ideal(std::string_view src, const QuadField& field);

/// Generator form "(a + b w, ...)" of an ideal's HNF basis, parseable back.
std::string format_ideal(const IntLattice& l);

} // namespace conductor::cli
