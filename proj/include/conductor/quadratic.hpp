#pragma once

/*
 * Quadratic number rings. S = Z[w] is the maximal order of Q(sqrt d) on the
 * basis (1, w), with w = (1 + sqrt d)/2 when d = 1 mod 4 and w = sqrt d
 * otherwise. Base rings R are either the prime subring Z or an order
 * Z + fS of conductor fS.
 *
 * The criteria here answer "is I an R-conductor ideal of S" from local
 * data at the primes containing I; every one of them can be checked
 * against is_conductor_bruteforce.
 */

#include "conductor/ring.hpp"
#include "conductor/verdict.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace conductor {

inline constexpr std::uint64_t kDefaultFactorBound = 10'000'000;

struct Limits {
    std::uint64_t coset_bound = kDefaultCosetBound;
    std::uint64_t factor_bound = kDefaultFactorBound;
};

class QuadField {
public:
    std::int64_t d() const noexcept { return d_; }
    std::int64_t discriminant() const noexcept { return disc_; }
    /// w^2 = trace * w - norm
    std::int64_t omega_trace() const noexcept { return trace_; }
    std::int64_t omega_norm() const noexcept { return norm_; }

    const RingTable& ring() const noexcept { return ring_; }
    Element integer(const mpz_class& a) const { return {a, 0}; }
    Element omega() const { return {0, 1}; }
    Element sqrt_d() const;
    Ideal whole() const { return Ideal::whole(ring_); }
    Subring integers() const { return Subring::integers(ring_); }

private:
    friend QuadField make_field(std::int64_t d);
    QuadField(std::int64_t d, std::int64_t disc, std::int64_t trace, std::int64_t norm, RingTable ring)
        : d_(d), disc_(disc), trace_(trace), norm_(norm), ring_(std::move(ring)) {}

    std::int64_t d_;
    std::int64_t disc_;
    std::int64_t trace_;
    std::int64_t norm_;
    RingTable ring_;
};

/// Throws DegenerateD for d in {0, 1}, NotSquarefree otherwise when d has a
/// square factor.
QuadField make_field(std::int64_t d);

/// The order Z + fS = span(1, f w).
struct QuadOrder {
    std::uint64_t f;
    Subring ring;
};

QuadOrder make_order(const QuadField& field, std::uint64_t f);

bool is_prime(std::uint64_t n);
/// Kronecker symbol (D/p) of the field discriminant.
int kronecker_symbol(const QuadField& field, std::uint64_t p);

enum class SplitType { Split, Inert, Ramified };
std::string_view split_type_name(SplitType t);

struct Splitting {
    SplitType type;
    int e;
    int f;
};

Splitting splitting(const QuadField& field, std::uint64_t p);

/// Roots in [0, p) of the minimal polynomial of w modulo p, ascending.
std::vector<std::uint64_t> omega_roots_mod(const QuadField& field, std::uint64_t p);

struct QPrime {
    std::int64_t p = 0;
    int e = 0;
    int residue_degree = 0;
    /// 1-based position among the primes above p.
    int position = 0;
    Ideal ideal;
};

/// Primes of S above p in deterministic order: (p, w - r) by ascending
/// root r when p splits or ramifies, (p) when p is inert.
std::vector<QPrime> primes_above(const QuadField& field, std::uint64_t p);

/// Largest l with I ⊆ M^l.
int valuation(const QuadField& field, const QPrime& m, const Ideal& i);

struct FactorTerm {
    QPrime prime;
    int exponent;
};

struct IdealFactorization {
    std::vector<FactorTerm> terms;

    int exponent_at(const QPrime& m) const;
    bool is_radical() const;
};

/// Factorization of I into primes of S, verified by multiplying back.
/// Throws FactorBoundExceeded if |S/I| has a prime factor above the bound.
IdealFactorization factor(const QuadField& field, const Ideal& i, std::uint64_t factor_bound = kDefaultFactorBound);
Ideal expand(const QuadField& field, const IdealFactorization& fz);

/// Prime factorization of a positive integer by trial division.
std::vector<std::pair<std::uint64_t, int>> factor_integer(const mpz_class& n, std::uint64_t factor_bound);

/// v_p(t) where L ∩ Z = tZ.
int contracted_valuation(const QuadField& field, const IntLattice& l, std::uint64_t p);

/// ceil(l / e_M). With `checked`, compares against v_p(M^l ∩ Z) computed
/// from the lattice and throws CrossCheckMismatch on disagreement.
int exponent_formula(const QuadField& field, const QPrime& m, int l, bool checked = true);

struct RelativeDegrees {
    int e;  // v_M((M ∩ R)S)
    int f;  // dim over R/(M ∩ R) of S/M
};

RelativeDegrees relative_degrees(const QuadField& field, const Subring& base, const QPrime& m);

/// Whether (I :_R M) ⊆ I, by the valuation formula over a Dedekind base
/// (Z or S itself), cross-checked against the lattice colon.
bool colon_condition(const QuadField& field, const QPrime& m, const Ideal& i,
                     const IdealFactorization& fz, const Subring& base);

/// Maximal ideals of the base containing the base-ideal N, as lattices.
std::vector<IntLattice> maximal_ideals_over(const QuadField& field, const Subring& base, const IntLattice& n);

/// A maximal ideal m ⊇ N of the base with dim m/(m^2 + N) >= 2, if any.
std::optional<IntLattice> pir_obstruction(const QuadField& field, const Subring& base, const IntLattice& n);
/// Whether base/N is a principal ideal ring. Always true for the base Z.
bool is_pir_quotient(const QuadField& field, const Subring& base, const IntLattice& n);

/// I ∩ R for a full-rank base.
IntLattice contraction(const Subring& base, const Ideal& i);

Verdict brute_verdict(const QuadField& field, const Subring& base, const Ideal& i, const Limits& limits = {});
Verdict cor212_verdict(const QuadField& field, const Ideal& i, const Limits& limits = {});
Verdict prop26_verdict(const QuadField& field, const Subring& base, const Ideal& m, const Limits& limits = {});
Verdict thm27_verdict(const QuadField& field, const Subring& base, const Ideal& i, const Limits& limits = {});
Verdict cor28_verdict(const QuadField& field, const Subring& base, const Ideal& i, const Limits& limits = {});
Verdict cor213_verdict(const QuadField& field, const Subring& base, const Ideal& i, const Limits& limits = {});

enum class Sufficiency { Via1, Via2, Inconclusive };
std::string_view sufficiency_name(Sufficiency s);

Sufficiency prop29_sufficient(const QuadField& field, const Subring& base, const Ideal& i, const Limits& limits = {});

} // namespace conductor
