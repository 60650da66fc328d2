#include "conductor/quadratic.hpp"

#include "conductor/errors.hpp"
#include "conductor/local_conditions.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace conductor {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m)
{
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

u64 reduce(std::int64_t a, u64 p)
{
    std::int64_t const m = static_cast<std::int64_t>(p);
    std::int64_t r = a % m;
    return static_cast<u64>(r < 0 ? r + m : r);
}

// Square root of a quadratic residue a modulo an odd prime p.
u64 sqrt_mod(u64 a, u64 p)
{
    a %= p;
    if (a == 0) return 0;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 c = powmod(z, q, p);
    u64 x = powmod(a, (q + 1) / 2, p);
    u64 t = powmod(a, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        for (u64 tt = t; tt != 1; tt = mulmod(tt, tt, p)) ++i;
        u64 b = c;
        for (int k = 0; k < m - i - 1; ++k) b = mulmod(b, b, p);
        x = mulmod(x, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return x;
}

int log_exact(mpz_class n, const mpz_class& q)
{
    // n = q^k exactly
    int k = 0;
    while (n > 1) {
        if (!mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t()))
            throw Error(ErrorCode::CrossCheckMismatch, "quotient order is not a power of the residue field size");
        n /= q;
        ++k;
    }
    return k;
}

bool lattice_is_whole(const IntLattice& l) { return lattice_index(l) == 1; }

std::optional<Element> first_row_outside(const IntMatrix& rows, const IntLattice& l)
{
    for (std::size_t k = 0; k < rows.rows(); ++k)
        if (!contains(l, rows.row(k))) return rows.row(k);
    return std::nullopt;
}

bool colon_in_ideal(const QuadField& field, const Subring& base, const Ideal& i, const QPrime& m)
{
    return rows_in(colon_in(field.ring(), i.lattice(), base, m.ideal.lattice()), i.lattice());
}

PrimeReport report_row(const QPrime& m, int e, int f, int v, Condition c)
{
    return PrimeReport{m.p, m.ideal.lattice().basis(), e, f, v, c};
}

} // namespace

QuadField make_field(std::int64_t d)
{
    if (d == 0 || d == 1) throw Error(ErrorCode::DegenerateD, "d = " + std::to_string(d));
    u64 const a = static_cast<u64>(d < 0 ? -d : d);
    for (u64 k = 2; k * k <= a; ++k)
        if (a % (k * k) == 0) throw Error(ErrorCode::NotSquarefree, std::to_string(d) + " is divisible by " + std::to_string(k * k));
    std::int64_t const r = ((d % 4) + 4) % 4;
    std::int64_t disc, trace, norm;
    if (r == 1) {
        disc = d;
        trace = 1;
        norm = (1 - d) / 4;
    } else {
        disc = 4 * d;
        trace = 0;
        norm = -d;
    }
    std::vector<std::vector<IntVector>> table{
        {make_vector({1, 0}), make_vector({0, 1})},
        {make_vector({0, 1}), make_vector({-norm, trace})},
    };
    return QuadField(d, disc, trace, norm, RingTable::make(table, make_vector({1, 0})));
}

Element QuadField::sqrt_d() const
{
    if (trace_ == 1) return make_vector({-1, 2});
    return make_vector({0, 1});
}

QuadOrder make_order(const QuadField& field, std::uint64_t f)
{
    if (f == 0) throw Error(ErrorCode::InvalidArgument, "order conductor index must be positive");
    IntMatrix b{{1, 0}, {0, 0}};
    b(1, 1) = static_cast<unsigned long>(f);
    Subring r = Subring::from_lattice(field.ring(), hnf(b, 2));
    Ideal expected = Ideal::from_lattice(field.ring(), IntLattice::scaled(2, static_cast<unsigned long>(f)));
    if (conductor_of(field.ring(), r) != expected)
        throw Error(ErrorCode::CrossCheckMismatch, "conductor of Z + " + std::to_string(f) + "S is not " + std::to_string(f) + "S");
    return QuadOrder{f, std::move(r)};
}

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 k = 3; k <= n / k; k += 2)
        if (n % k == 0) return false;
    return true;
}

int kronecker_symbol(const QuadField& field, std::uint64_t p)
{
    mpz_class disc = static_cast<long>(field.discriminant());
    return mpz_kronecker_ui(disc.get_mpz_t(), static_cast<unsigned long>(p));
}

std::string_view split_type_name(SplitType t)
{
    switch (t) {
    case SplitType::Split: return "split";
    case SplitType::Inert: return "inert";
    case SplitType::Ramified: return "ramified";
    }
    return "?";
}

Splitting splitting(const QuadField& field, std::uint64_t p)
{
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p));
    switch (kronecker_symbol(field, p)) {
    case 1: return {SplitType::Split, 1, 1};
    case -1: return {SplitType::Inert, 1, 2};
    default: return {SplitType::Ramified, 2, 1};
    }
}

std::vector<std::uint64_t> omega_roots_mod(const QuadField& field, std::uint64_t p)
{
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p));
    u64 const t = reduce(field.omega_trace(), p);
    u64 const n = reduce(field.omega_norm(), p);
    auto is_root = [&](u64 x) { return (mulmod(x, x, p) + p - mulmod(t, x, p) + n) % p == 0; };
    std::vector<u64> roots;
    if (p == 2) {
        for (u64 x = 0; x < 2; ++x)
            if (is_root(x)) roots.push_back(x);
        return roots;
    }
    u64 const disc = reduce(field.discriminant(), p);
    if (disc != 0 && powmod(disc, (p - 1) / 2, p) != 1) return roots;
    u64 const s = sqrt_mod(disc, p);
    u64 const half = (p + 1) / 2;
    roots.push_back(mulmod((t + s) % p, half, p));
    if (s != 0) roots.push_back(mulmod((t + p - s) % p, half, p));
    std::sort(roots.begin(), roots.end());
    for (u64 x : roots)
        if (!is_root(x)) throw Error(ErrorCode::CrossCheckMismatch, "modular square root failed for p = " + std::to_string(p));
    return roots;
}

std::vector<QPrime> primes_above(const QuadField& field, std::uint64_t p)
{
    Splitting const sp = splitting(field, p);
    std::vector<u64> const roots = omega_roots_mod(field, p);
    std::size_t const expected = sp.type == SplitType::Split ? 2 : sp.type == SplitType::Ramified ? 1 : 0;
    if (roots.size() != expected)
        throw Error(ErrorCode::CrossCheckMismatch, "Kronecker symbol disagrees with root count at p = " + std::to_string(p));

    auto const sp_long = static_cast<long>(p);
    std::vector<QPrime> out;
    if (sp.type == SplitType::Inert) {
        Element g = field.integer(sp_long);
        out.push_back({static_cast<std::int64_t>(p), 1, 2, 1, ideal_from_generators(field.ring(), std::span(&g, 1))});
    } else {
        int pos = 1;
        for (u64 r : roots) {
            std::vector<Element> gens{field.integer(sp_long), make_vector({-static_cast<long>(r), 1})};
            out.push_back({static_cast<std::int64_t>(p), sp.e, sp.f, pos++, ideal_from_generators(field.ring(), gens)});
        }
    }
    for (auto const& m : out) {
        mpz_class expected_index;
        mpz_ui_pow_ui(expected_index.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(m.residue_degree));
        if (m.ideal.index() != expected_index)
            throw Error(ErrorCode::CrossCheckMismatch, "prime above " + std::to_string(p) + " has index " + m.ideal.index().get_str());
    }
    return out;
}

int valuation(const QuadField& field, const QPrime& m, const Ideal& i)
{
    int l = 0;
    Ideal power = field.whole();
    for (;;) {
        Ideal next = ideal_product(field.ring(), power, m.ideal);
        if (!is_subset(i.lattice(), next.lattice())) return l;
        power = std::move(next);
        ++l;
    }
}

int IdealFactorization::exponent_at(const QPrime& m) const
{
    for (auto const& t : terms)
        if (t.prime.ideal == m.ideal) return t.exponent;
    return 0;
}

bool IdealFactorization::is_radical() const
{
    return std::all_of(terms.begin(), terms.end(), [](FactorTerm const& t) { return t.exponent <= 1; });
}

std::vector<std::pair<std::uint64_t, int>> factor_integer(const mpz_class& n, std::uint64_t factor_bound)
{
    if (n <= 0) throw Error(ErrorCode::InvalidArgument, "factor of non-positive integer");
    std::vector<std::pair<u64, int>> out;
    mpz_class rest = n;
    for (u64 p = 2; p <= factor_bound && rest > 1; p += (p == 2 ? 1 : 2)) {
        mpz_class pp = static_cast<unsigned long>(p);
        if (pp * pp > rest) break;
        int k = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p))) {
            rest /= pp;
            ++k;
        }
        if (k) out.emplace_back(p, k);
    }
    if (rest > 1) {
        // rest is prime unless the loop stopped at the bound
        mpz_class bound = static_cast<unsigned long>(factor_bound);
        if (rest > bound)
            throw Error(ErrorCode::FactorBoundExceeded, n.get_str() + " has a prime factor above " + std::to_string(factor_bound));
        u64 const q = rest.get_ui();
        auto it = std::find_if(out.begin(), out.end(), [q](auto const& pr) { return pr.first == q; });
        if (it != out.end()) ++it->second;
        else out.emplace_back(q, 1);
        std::sort(out.begin(), out.end());
    }
    return out;
}

IdealFactorization factor(const QuadField& field, const Ideal& i, std::uint64_t factor_bound)
{
    IdealFactorization fz;
    for (auto const& [p, k] : factor_integer(i.index(), factor_bound)) {
        for (auto& m : primes_above(field, p)) {
            int v = valuation(field, m, i);
            if (v > 0) fz.terms.push_back({std::move(m), v});
        }
    }
    if (expand(field, fz) != i)
        throw Error(ErrorCode::CrossCheckMismatch, "prime factorization does not multiply back to the ideal");
    return fz;
}

Ideal expand(const QuadField& field, const IdealFactorization& fz)
{
    Ideal out = field.whole();
    for (auto const& t : fz.terms)
        out = ideal_product(field.ring(), out, ideal_power(field.ring(), t.prime.ideal, static_cast<unsigned>(t.exponent)));
    return out;
}

int contracted_valuation(const QuadField& field, const IntLattice& l, std::uint64_t p)
{
    mpz_class t = line_multiplier(l, field.ring().one());
    mpz_class pp = static_cast<unsigned long>(p);
    mpz_class rest;
    return static_cast<int>(mpz_remove(rest.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t()));
}

int exponent_formula(const QuadField& field, const QPrime& m, int l, bool checked)
{
    if (l < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
    int const formula = (l + m.e - 1) / m.e;
    if (checked) {
        Ideal power = ideal_power(field.ring(), m.ideal, static_cast<unsigned>(l));
        int const direct = contracted_valuation(field, power.lattice(), static_cast<u64>(m.p));
        if (direct != formula)
            throw Error(ErrorCode::CrossCheckMismatch, "ceil(" + std::to_string(l) + "/" + std::to_string(m.e) + ") = " + std::to_string(formula) + " but M^l ∩ Z has valuation " + std::to_string(direct));
    }
    return formula;
}

RelativeDegrees relative_degrees(const QuadField& field, const Subring& base, const QPrime& m)
{
    IntLattice const& ml = m.ideal.lattice();
    IntMatrix below = base.meet(ml);
    std::vector<Element> gens;
    for (std::size_t k = 0; k < below.rows(); ++k) gens.push_back(below.row(k));
    Ideal extended = ideal_from_generators(field.ring(), gens);
    int const e = valuation(field, m, extended);
    int const f = log_exact(lattice_index(ml), base.quotient_order(ml));
    return {e, f};
}

bool colon_condition(const QuadField& field, const QPrime& m, const Ideal& i, const IdealFactorization& fz, const Subring& base)
{
    bool const over_z = base.is_integers();
    if (!over_z && !lattice_is_whole(base.lattice()))
        throw Error(ErrorCode::InvalidArgument, "colon formula needs a Dedekind base (Z or S)");
    int const v = fz.exponent_at(m);
    if (v < 1) throw Error(ErrorCode::InvalidArgument, "M does not contain I");

    int const e = over_z ? m.e : 1;
    bool formula = divisibility_condition(e, v);
    if (over_z) {
        for (auto const& t : fz.terms) {
            if (t.prime.p != m.p || t.prime.ideal == m.ideal) continue;
            formula = formula || inequality_condition(v, e, t.exponent, t.prime.e);
        }
    }
    bool const direct = colon_in_ideal(field, base, i, m);
    if (formula != direct)
        throw Error(ErrorCode::CrossCheckMismatch, "valuation formula says " + std::string(formula ? "true" : "false") + ", lattice colon says " + (direct ? "true" : "false"));
    return formula;
}

IntLattice contraction(const Subring& base, const Ideal& i)
{
    return lattice_intersect(base.lattice(), i.lattice());
}

std::vector<IntLattice> maximal_ideals_over(const QuadField& field, const Subring& base, const IntLattice& n)
{
    std::vector<IntLattice> out;
    mpz_class const q = base.quotient_order(n);
    for (auto const& [p, k] : factor_integer(q, kDefaultFactorBound)) {
        for (auto const& m : primes_above(field, p)) {
            IntLattice below = hnf(base.meet(m.ideal.lattice()), 2);
            if (!is_subset(n, below)) continue;
            if (std::find(out.begin(), out.end(), below) == out.end()) out.push_back(std::move(below));
        }
    }
    return out;
}

std::optional<IntLattice> pir_obstruction(const QuadField& field, const Subring& base, const IntLattice& n)
{
    if (base.is_integers()) return std::nullopt;
    if (!is_subset(n, base.lattice())) throw Error(ErrorCode::InvalidArgument, "N is not contained in the base ring");
    for (auto const& m : maximal_ideals_over(field, base, n)) {
        IntLattice const sq_plus_n = lattice_sum(lattice_product(field.ring(), m, m), n);
        mpz_class const residue = lattice_index(m) / lattice_index(base.lattice());
        int const dim = log_exact(lattice_index(sq_plus_n) / lattice_index(m), residue);
        if (dim > 1) return m;
    }
    return std::nullopt;
}

bool is_pir_quotient(const QuadField& field, const Subring& base, const IntLattice& n)
{
    return !pir_obstruction(field, base, n).has_value();
}

Verdict brute_verdict(const QuadField& field, const Subring& base, const Ideal& i, const Limits& limits)
{
    ConductorCheck c = is_conductor_bruteforce(field.ring(), base, i);
    Verdict out;
    out.criterion = "brute";
    out.decision = c.is_conductor ? Decision::Conductor : Decision::NotConductor;
    for (auto const& t : factor(field, i, limits.factor_bound).terms)
        out.primes.push_back(report_row(t.prime, t.prime.e, t.prime.residue_degree, t.exponent, Condition::NotApplicable));
    if (c.is_conductor)
        out.witness = Witness::of_lattice(c.realizing.lattice().basis(), "V = R + I has conductor I");
    else
        out.witness = Witness::of_element(*c.witness, "element of (R+I :_S S) outside I");
    return out;
}

Verdict cor212_verdict(const QuadField& field, const Ideal& i, const Limits& limits)
{
    IdealFactorization fz = factor(field, i, limits.factor_bound);
    Verdict out;
    out.criterion = "cor212";
    out.decision = Decision::Conductor;
    for (auto const& t : fz.terms) {
        QPrime const& m = t.prime;
        int const v = t.exponent;
        Condition c = Condition::None;
        if (m.residue_degree >= 2) {
            c = Condition::ResidueDegree;
        } else if (divisibility_condition(m.e, v)) {
            c = Condition::Divisibility;
        } else {
            for (auto const& q : fz.terms) {
                if (q.prime.p != m.p || q.prime.ideal == m.ideal) continue;
                if (inequality_condition(v, m.e, q.exponent, q.prime.e)) {
                    c = Condition::Inequality;
                    break;
                }
            }
        }
        out.primes.push_back(report_row(m, m.e, m.residue_degree, v, c));
        if (c == Condition::None && out.decision == Decision::Conductor) {
            out.decision = Decision::NotConductor;
            out.witness = Witness::of_lattice(m.ideal.lattice().basis(), "prime above " + std::to_string(m.p) + " satisfies none of a, b, c");
        }
    }
    return out;
}

Verdict prop26_verdict(const QuadField& field, const Subring& base, const Ideal& m, const Limits& limits)
{
    std::optional<QPrime> prime;
    for (auto const& [p, k] : factor_integer(m.index(), limits.factor_bound)) {
        for (auto& q : primes_above(field, p))
            if (q.ideal == m) prime = std::move(q);
    }
    if (!prime) {
        std::ostringstream os;
        os << m.lattice();
        throw Error(ErrorCode::NotMaximal, "ideal " + os.str() + " is not a maximal ideal of S");
    }

    IntLattice const sum = base.plus(m.lattice());
    bool const proper_sum = !lattice_is_whole(sum);
    CyclicCheck const cyc = is_cyclic_quotient(field.ring(), base, m, limits.coset_bound);
    // R/(M ∩ R) embeds in the finite field S/M, so M ∩ R is maximal in R.
    RelativeDegrees const rel = relative_degrees(field, base, *prime);
    bool const wide = rel.f >= 2;
    if (proper_sum != !cyc.cyclic || proper_sum != wide)
        throw Error(ErrorCode::CrossCheckMismatch, "R + M proper: " + std::to_string(proper_sum) + ", S/M not cyclic: " + std::to_string(!cyc.cyclic) + ", residue dimension >= 2: " + std::to_string(wide));

    Verdict out;
    out.criterion = "prop26";
    out.decision = proper_sum ? Decision::Conductor : Decision::NotConductor;
    out.primes.push_back(report_row(*prime, rel.e, rel.f, 1, proper_sum ? Condition::ProperSum : Condition::None));
    if (proper_sum)
        out.witness = Witness::of_lattice(sum.basis(), "R + M is a proper sublattice of S");
    else
        out.witness = Witness::of_element(*cyc.generator, "generates S/M as an R-module");
    return out;
}

namespace {

// Shared by thm27 and cor28: every
// M ⊇ I has R + M ≠ S or (I :_R M) ⊆ I.
void local_sum_or_colon(const QuadField& field, const Subring& base, const Ideal& i,
                        const IdealFactorization& fz, Verdict& out)
{
    out.decision = Decision::Conductor;
    for (auto const& t : fz.terms) {
        RelativeDegrees const rel = relative_degrees(field, base, t.prime);
        Condition c = Condition::None;
        if (!lattice_is_whole(base.plus(t.prime.ideal.lattice()))) c = Condition::ProperSum;
        else if (colon_in_ideal(field, base, i, t.prime)) c = Condition::Colon;
        out.primes.push_back(report_row(t.prime, rel.e, rel.f, t.exponent, c));
        if (c == Condition::None && out.decision == Decision::Conductor) {
            out.decision = Decision::NotConductor;
            IntMatrix cl = colon_in(field.ring(), i.lattice(), base, t.prime.ideal.lattice());
            out.witness = Witness::of_element(*first_row_outside(cl, i.lattice()),
                                              "in (I :_R M) but not in I, for M above " + std::to_string(t.prime.p) + " with R + M = S");
        }
    }
}

Verdict hypothesis_failed(std::string criterion, Witness w)
{
    Verdict out;
    out.criterion = std::move(criterion);
    out.decision = Decision::HypothesisFailed;
    out.witness = std::move(w);
    return out;
}

} // namespace

Verdict thm27_verdict(const QuadField& field, const Subring& base, const Ideal& i, const Limits& limits)
{
    if (!base.is_integers()) {
        if (auto m = pir_obstruction(field, base, contraction(base, i)))
            return hypothesis_failed("thm27", Witness::of_lattice(m->basis(), "maximal ideal m of R with dim m/(m^2 + I∩R) >= 2: R/(I∩R) is not a principal ideal ring"));
    }
    Verdict out;
    out.criterion = "thm27";
    local_sum_or_colon(field, base, i, factor(field, i, limits.factor_bound), out);
    return out;
}

Verdict cor28_verdict(const QuadField& field, const Subring& base, const Ideal& i, const Limits& limits)
{
    if (base.is_integers())
        return hypothesis_failed("cor28", Witness::of_element(field.ring().one(), "(Z :_S S) = {0}, so S/(R :_S S) is infinite"));
    Ideal const cond = conductor_of(field.ring(), base);
    if (auto m = pir_obstruction(field, base, cond.lattice()))
        return hypothesis_failed("cor28", Witness::of_lattice(m->basis(), "R/(R :_S S) is not a principal ideal ring"));
    Verdict out;
    out.criterion = "cor28";
    if (auto x = first_row_outside(cond.lattice().basis(), i.lattice())) {
        out.decision = Decision::NotConductor;
        out.witness = Witness::of_element(*x, "in (R :_S S) but not in I");
        return out;
    }
    local_sum_or_colon(field, base, i, factor(field, i, limits.factor_bound), out);
    return out;
}

Verdict cor213_verdict(const QuadField& field, const Subring& base, const Ideal& i, const Limits& limits)
{
    IdealFactorization const fz = factor(field, i, limits.factor_bound);
    for (auto const& t : fz.terms)
        if (t.exponent > 1)
            throw Error(ErrorCode::RadicalRequired, "exponent " + std::to_string(t.exponent) + " at a prime above " + std::to_string(t.prime.p));
    Verdict out;
    out.criterion = "cor213";
    out.decision = Decision::Conductor;
    for (auto const& t : fz.terms) {
        RelativeDegrees const rel = relative_degrees(field, base, t.prime);
        Condition c = Condition::None;
        if (rel.f >= 2) c = Condition::ResidueDegree;
        else if (colon_in_ideal(field, base, i, t.prime)) c = Condition::Colon;
        out.primes.push_back(report_row(t.prime, rel.e, rel.f, t.exponent, c));
        if (c == Condition::None && out.decision == Decision::Conductor) {
            out.decision = Decision::NotConductor;
            out.witness = Witness::of_lattice(t.prime.ideal.lattice().basis(), "f_M = 1 over R and (I :_R M) not in I");
        }
    }
    return out;
}

std::string_view sufficiency_name(Sufficiency s)
{
    switch (s) {
    case Sufficiency::Via1: return "SufficientVia1";
    case Sufficiency::Via2: return "SufficientVia2";
    case Sufficiency::Inconclusive: return "Inconclusive";
    }
    return "?";
}

Sufficiency prop29_sufficient(const QuadField& field, const Subring& base, const Ideal& i, const Limits& limits)
{
    IdealFactorization const fz = factor(field, i, limits.factor_bound);
    bool via1 = true;
    bool proper = true;
    for (auto const& t : fz.terms) {
        via1 = via1 && colon_in_ideal(field, base, i, t.prime);
        proper = proper && !lattice_is_whole(base.plus(t.prime.ideal.lattice()));
    }
    if (via1) return Sufficiency::Via1;
    bool const pir = base.is_integers() || is_pir_quotient(field, base, contraction(base, i));
    if (pir && proper) return Sufficiency::Via2;
    return Sufficiency::Inconclusive;
}

} // namespace conductor
