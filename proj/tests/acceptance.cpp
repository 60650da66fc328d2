// Acceptance suite: one PASS/FAIL line per criterion, with timing.

#include "conductor/crossval.hpp"
#include "conductor/errors.hpp"
#include "conductor/laws.hpp"
#include "conductor/quadratic.hpp"

#include "oracles.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

using namespace conductor;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

Ideal scalar(const QuadField& k, long n)
{
    return ideal_from_generators(k.ring(), std::vector<Element>{k.integer(n)});
}

oracle::Lattice2 model(const IntLattice& l)
{
    auto b = l.basis();
    return oracle::Lattice2::from_basis({b(0, 0).get_si(), b(0, 1).get_si()}, {b(1, 0).get_si(), b(1, 1).get_si()});
}

const std::vector<std::int64_t> kSweepFields{-1, 2, -2, 3, 5, -5, 13, -23};
constexpr std::uint64_t kSweepBound = 500;

// The base-Z sweep feeds three criteria; run it once.
const CrossvalReport& integer_sweep()
{
    static const CrossvalReport r = [] {
        CrossvalOptions o;
        o.ds = kSweepFields;
        o.max_index = kSweepBound;
        return crossval(o);
    }();
    return r;
}

const CrossvalReport& order_sweep()
{
    static const CrossvalReport r = [] {
        CrossvalOptions o;
        o.ds = {5, -3, 13};
        o.max_index = kSweepBound;
        o.order_fs = {2, 3, 6};
        return crossval(o);
    }();
    return r;
}

std::uint64_t count_mismatches(const CrossvalReport& r, const std::string& check, bool orders_only = false)
{
    std::uint64_t n = 0;
    for (auto const& s : r.sweeps) {
        if (orders_only && s.f == 0) continue;
        for (auto const& m : s.mismatches)
            if (m.check == check) ++n;
    }
    return n;
}

Outcome c1_order_regression()
{
    Outcome o;
    QuadField k = make_field(5);
    Subring r = make_order(k, 2).ring;
    Ideal two = scalar(k, 2);
    auto need = [&](bool cond, const char* what) {
        if (!cond) {
            o.ok = false;
            o.detail += std::string(what) + " failed; ";
        }
    };
    need(conductor_of(k.ring(), r) == two, "(R :_S S) = 2S");
    auto above = primes_above(k, 2);
    need(above.size() == 1 && above[0].ideal == two, "2S maximal in S");
    need(is_subset(two.lattice(), r.lattice()) && r.quotient_order(two.lattice()) == 2, "2S maximal in R");
    need(!is_conductor_bruteforce(k.ring(), r, scalar(k, 4)).is_conductor, "4S not a conductor ideal");
    need(!zero_ideal_is_conductor(k.ring(), r), "{0} not a conductor ideal");
    IntLattice sum = r.plus(two.lattice());
    need(sum == r.lattice() && lattice_index(sum) == 2, "R + M = R, proper in S");
    if (o.ok) o.detail = "(R :_S S) = 2S, [R : 2S] = 2, 4S and {0} rejected, R + 2S = R of index 2";
    return o;
}

Outcome c2_hypothesis_sentinel()
{
    QuadField k = make_field(5);
    Subring r = make_order(k, 2).ring;
    Ideal four = scalar(k, 4);
    Verdict v = thm27_verdict(k, r, four);
    IntLattice n = contraction(r, four);
    bool const pir = is_pir_quotient(k, r, n);

    oracle::Lattice2 nm = model(n);
    oracle::FiniteQuotient q(oracle::arith_for(5), oracle::Lattice2({{1, 0}, {0, 2}}, nm.modulus()), nm);
    bool const exhaustive = q.every_ideal_principal();
    std::size_t non_principal = 0;
    for (auto const& ideal : q.ideals()) {
        bool principal = false;
        for (auto x : ideal) principal = principal || q.principal(x) == ideal;
        if (!principal) ++non_principal;
    }
    std::ostringstream d;
    d << "decision " << decision_name(v.decision) << ", m/m^2 test says PIR = " << (pir ? "yes" : "no")
      << "; exhaustive: |R/(4S ∩ R)| = " << q.size() << ", " << q.ideals().size() << " ideals, " << non_principal
      << " not principal";
    return {v.decision == Decision::HypothesisFailed && !pir && !exhaustive && non_principal > 0, d.str()};
}

Outcome c3_equivalence_sweep()
{
    const CrossvalReport& r = integer_sweep();
    std::uint64_t ideals = 0, fewest = ~0ull;
    for (auto const& s : r.sweeps) {
        ideals += s.ideals;
        fewest = std::min(fewest, s.ideals);
    }
    std::uint64_t const bad = count_mismatches(r, "cor212") + count_mismatches(r, "thm27");
    std::ostringstream d;
    d << r.sweeps.size() << " fields, " << ideals << " ideals (at least " << fewest << " per field), " << bad << " mismatches";
    return {bad == 0 && r.sweeps.size() == kSweepFields.size(), d.str()};
}

Outcome c4_scalar_pattern()
{
    const CrossvalReport& r = integer_sweep();
    bool ok = true;
    std::ostringstream d;
    for (auto const& s : r.sweeps) {
        ok = ok && s.scalar_pattern.value_or(false) && s.oracle_conductors == 22;
        if (!s.scalar_pattern.value_or(false)) d << "d = " << s.d << " breaks the pattern; ";
    }
    d << "conductor ideals per field = {nS : n^2 <= " << kSweepBound << "}, 22 each";
    return {ok, d.str()};
}

Outcome c5_exponent_formulas()
{
    std::uint64_t checked = 0, pairs = 0;
    std::ostringstream bad;
    std::mt19937_64 rng(5);
    for (auto d : kSweepFields) {
        QuadField k = make_field(d);
        for (std::uint64_t p = 2; p <= 50; ++p) {
            if (!is_prime(p)) continue;
            for (auto const& m : primes_above(k, p)) {
                Ideal power = k.whole();
                for (int l = 0; l <= 12; ++l) {
                    if (l) power = ideal_product(k.ring(), power, m.ideal);
                    ++checked;
                    int const direct = contracted_valuation(k, power.lattice(), p);
                    if (exponent_formula(k, m, l, false) != direct) bad << "d=" << d << " p=" << p << " l=" << l << "; ";
                }
            }
        }
        // v_p(L ∩ Z) = max over Q above p of ceil(v_Q(L) / e_Q), for L ⊇ I
        std::vector<Ideal> pool = enumerate_ideals(k.ring(), 300);
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        for (int t = 0; t < 100; ++t) {
            const Ideal& i = pool[pick(rng)];
            Ideal l = ideal_sum(k.ring(), i, pool[pick(rng)]);
            if (!is_subset(i.lattice(), l.lattice())) bad << "L does not contain I; ";
            ++pairs;
            IdealFactorization fl = factor(k, l);
            for (auto const& [p, a] : factor_integer(i.index(), kDefaultFactorBound)) {
                int best = 0;
                for (auto const& q : primes_above(k, p)) best = std::max(best, (fl.exponent_at(q) + q.e - 1) / q.e);
                if (contracted_valuation(k, l.lattice(), p) != best) bad << "d=" << d << " pair " << t << "; ";
            }
        }
    }
    std::ostringstream d;
    d << checked << " (M, l) cases and " << pairs << " (I, L) pairs" << (bad.str().empty() ? "" : ", failures: " + bad.str());
    return {bad.str().empty(), d.str()};
}

Outcome c6_laws()
{
    LawOptions o;
    o.cases = 200;
    std::ostringstream d;
    bool ok = true;
    for (auto const& r : run_laws(o)) {
        ok = ok && r.failures == 0 && r.cases == 200;
        d << r.name << " " << r.cases - r.failures << "/" << r.cases << "; ";
        if (r.failures) d << "(" << r.first_failure << ") ";
    }
    d << "seed " << o.seed;
    return {ok, d.str()};
}

Outcome c7_radical_sweep()
{
    const CrossvalReport& r = order_sweep();
    std::uint64_t radical = 0, orders = 0;
    for (auto const& s : r.sweeps)
        if (s.f) {
            radical += s.radical;
            ++orders;
        }
    std::uint64_t const bad = count_mismatches(r, "cor213", true);
    std::ostringstream d;
    d << orders << " (field, order) pairs, " << radical << " radical ideals, " << bad << " mismatches";
    return {bad == 0 && orders == 9, d.str()};
}

Outcome c8_sufficiency_soundness()
{
    std::uint64_t certs = 0, bad = 0, ideals = 0;
    for (const CrossvalReport* r : {&integer_sweep(), &order_sweep()}) {
        bad += count_mismatches(*r, "prop29");
        for (auto const& s : r->sweeps) {
            certs += s.certificates;
            ideals += s.ideals;
        }
    }
    std::ostringstream d;
    d << ideals << " ideals, " << certs << " certificates issued, " << bad << " for non-conductors";
    return {bad == 0 && certs > 0, d.str()};
}

struct Proc {
    int status;
    std::string out;
};

Proc run_tool(const std::string& cmd)
{
    Proc p{-1, {}};
    FILE* f = popen((cmd + " 2>&1").c_str(), "r");
    if (!f) return p;
    std::array<char, 4096> buf;
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), f)) p.out.append(buf.data(), n);
    int const raw = pclose(f);
    p.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return p;
}

std::string last_line(const std::string& s)
{
    auto end = s.find_last_not_of('\n');
    if (end == std::string::npos) return {};
    auto start = s.rfind('\n', end);
    return s.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

Outcome c9_mutation_sensitivity()
{
    std::string const args = " crossval --d -1,2,3,5,-5,13 --max-index 200";
    Proc clean = run_tool(std::string(CONDUCTOR_TOOL) + args);
    Proc b = run_tool(std::string(CONDUCTOR_MUTANT_DIVISIBILITY) + args);
    Proc c = run_tool(std::string(CONDUCTOR_MUTANT_INEQUALITY) + args);
    auto caught = [](const Proc& p) { return p.status == 1 && p.out.find("minimal counterexample") != std::string::npos; };
    std::ostringstream d;
    d << "clean exit " << clean.status << "; divisibility mutant: " << last_line(b.out) << "; inequality mutant: " << last_line(c.out);
    return {clean.status == 0 && caught(b) && caught(c), d.str()};
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"C1 order Z + 2S in Q(sqrt 5): conductor, maximality, rejections", 0.1, c1_order_regression},
        {"C2 principal-ideal-ring hypothesis sentinel", 1.0, c2_hypothesis_sentinel},
        {"C3 local criterion vs brute force, index <= 500", 60.0, c3_equivalence_sweep},
        {"C4 base-Z conductor ideals are exactly nS", 60.0, c4_scalar_pattern},
        {"C5 contraction exponent formulas", 30.0, c5_exponent_formulas},
        {"C6 closure-law property suites", 0.0, c6_laws},
        {"C7 radical-ideal criterion over orders", 0.0, c7_radical_sweep},
        {"C8 sufficiency certificates are sound", 0.0, c8_sufficiency_soundness},
        {"C9 mutation sensitivity", 0.0, c9_mutation_sensitivity},
    };
    int failed = 0;
    for (auto const& c : criteria) {
        auto const start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (std::exception const& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double const s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool const in_time = c.limit_s == 0 || s < c.limit_s;
        bool const pass = o.ok && in_time;
        failed += !pass;
        std::printf("%s  %s  [%.3f s%s]  %s\n", pass ? "PASS" : "FAIL", c.name, s,
                    c.limit_s ? (in_time ? "" : ", over time limit") : "", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
