#include "conductor/cli/commands.hpp"

#include "conductor/cli/ideal_expr.hpp"
#include "conductor/crossval.hpp"
#include "conductor/errors.hpp"
#include "conductor/laws.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace conductor::cli {

using nlohmann::json;

int exit_code(Decision d)
{
    switch (d) {
    case Decision::Conductor: return kExitConductor;
    case Decision::NotConductor: return kExitNotConductor;
    case Decision::HypothesisFailed: return kExitHypothesisFailed;
    }
    return kExitFailure;
}

std::vector<std::int64_t> parse_int_list(const std::string& s)
{
    std::vector<std::int64_t> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (std::exception const&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw Error(ErrorCode::InvalidArgument, "not an integer: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty list");
    return out;
}

namespace {

Subring base_ring(const QuadField& field, std::uint64_t f)
{
    return f == 0 ? field.integers() : make_order(field, f).ring;
}

std::string base_label(std::uint64_t f)
{
    return f == 0 ? "z" : "order:" + std::to_string(f);
}

Verdict prop29_as_verdict(const QuadField& field, const Subring& base, const Ideal& i, const Limits& limits)
{
    Sufficiency s = prop29_sufficient(field, base, i, limits);
    Verdict v;
    v.criterion = "prop29";
    // the proposition only ever certifies; without a certificate it says nothing
    v.decision = s == Sufficiency::Inconclusive ? Decision::HypothesisFailed : Decision::Conductor;
    v.witness.note = std::string(sufficiency_name(s));
    for (auto const& t : factor(field, i, limits.factor_bound).terms) {
        RelativeDegrees rel = relative_degrees(field, base, t.prime);
        v.primes.push_back({t.prime.p, t.prime.ideal.lattice().basis(), rel.e, rel.f, t.exponent, Condition::NotApplicable});
    }
    return v;
}

} // namespace

std::string resolve_criterion(const QuadField& field, const Subring& base, const Ideal& i,
                              const std::string& requested, const Limits& limits)
{
    if (requested != "auto") return requested;
    if (base.is_integers()) return "cor212";
    if (factor(field, i, limits.factor_bound).is_radical()) return "cor213";
    return "brute";
}

Report run_check(const CheckOptions& opts)
{
    auto const start = std::chrono::steady_clock::now();
    QuadField const field = make_field(opts.d);
    Subring const base = base_ring(field, opts.order_f);
    Ideal const i = parse_ideal(opts.ideal, field);
    std::string const crit = resolve_criterion(field, base, i, opts.criterion, opts.limits);

    Report r;
    r.d = opts.d;
    r.base = base_label(opts.order_f);
    r.ideal = i.lattice().basis();
    r.index = i.index();
    if (crit == "cor212") {
        if (!base.is_integers()) throw Error(ErrorCode::InvalidArgument, "cor212 needs --base z");
        r.verdict = cor212_verdict(field, i, opts.limits);
    } else if (crit == "thm27") {
        r.verdict = thm27_verdict(field, base, i, opts.limits);
    } else if (crit == "cor28") {
        r.verdict = cor28_verdict(field, base, i, opts.limits);
    } else if (crit == "cor213") {
        r.verdict = cor213_verdict(field, base, i, opts.limits);
    } else if (crit == "prop29") {
        r.verdict = prop29_as_verdict(field, base, i, opts.limits);
    } else if (crit == "brute") {
        r.verdict = brute_verdict(field, base, i, opts.limits);
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown criterion '" + crit + "'");
    }
    if (opts.crosscheck)
        r.oracle = is_conductor_bruteforce(field.ring(), base, i).is_conductor ? Decision::Conductor : Decision::NotConductor;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

namespace {

struct Globals {
    std::string d = "-1";
    bool json = false;
    std::uint64_t seed = LawOptions{}.seed;
    std::optional<std::uint64_t> max_index;
    Limits limits;
};

std::int64_t single_d(const Globals& g)
{
    auto ds = parse_int_list(g.d);
    if (ds.size() != 1) throw Error(ErrorCode::InvalidArgument, "--d takes one value here");
    return ds[0];
}

int cmd_check(const Globals& g, CheckOptions opts, std::ostream& out)
{
    opts.d = single_d(g);
    opts.limits = g.limits;
    Report r = run_check(opts);
    if (g.json) out << to_json(r).dump(2) << "\n";
    else out << render_text(r, color_enabled());
    if (r.oracle && *r.oracle != r.verdict.decision && r.verdict.decision != Decision::HypothesisFailed)
        return kExitCrosscheck;
    return exit_code(r.verdict.decision);
}

int cmd_enumerate(const Globals& g, std::uint64_t order_f, std::ostream& out)
{
    QuadField const field = make_field(single_d(g));
    Subring const base = base_ring(field, order_f);
    std::uint64_t const bound = g.max_index.value_or(100);
    json list = json::array();
    for (auto const& i : enumerate_conductor_ideals(field.ring(), base, bound)) {
        Subring v = adjoin(field.ring(), base, i);
        list.push_back({{"ideal", format_ideal(i.lattice())},
                        {"basis", to_json(i.lattice().basis())},
                        {"index", i.index().get_str()},
                        {"realizing", to_json(v.lattice().basis())}});
    }
    if (g.json) {
        out << json{{"d", field.d()}, {"base", base_label(order_f)}, {"max_index", bound}, {"conductors", list}}.dump(2) << "\n";
        return 0;
    }
    out << list.size() << " conductor ideals of index <= " << bound << " over base " << base_label(order_f) << " (d = " << field.d() << ")\n";
    for (auto const& e : list)
        out << "  index " << std::setw(6) << e["index"].get<std::string>() << "  " << e["ideal"].get<std::string>()
            << "  realized by R + I = " << matrix_from_json(e["realizing"]) << "\n";
    return 0;
}

int cmd_split(const Globals& g, std::uint64_t p, std::ostream& out)
{
    QuadField const field = make_field(single_d(g));
    Splitting s = splitting(field, p);
    json primes = json::array();
    for (auto const& m : primes_above(field, p))
        primes.push_back({{"position", m.position}, {"ideal", format_ideal(m.ideal.lattice())},
                          {"basis", to_json(m.ideal.lattice().basis())}, {"index", m.ideal.index().get_str()},
                          {"e", m.e}, {"f", m.residue_degree}});
    json j{{"d", field.d()}, {"discriminant", field.discriminant()}, {"p", p}, {"kronecker", kronecker_symbol(field, p)},
           {"type", split_type_name(s.type)}, {"e", s.e}, {"f", s.f}, {"primes", primes}};
    if (g.json) {
        out << j.dump(2) << "\n";
        return 0;
    }
    out << "p = " << p << " is " << split_type_name(s.type) << " in Q(sqrt " << field.d() << "), D = " << field.discriminant()
        << ", (D/p) = " << kronecker_symbol(field, p) << ", e = " << s.e << ", f = " << s.f << "\n";
    for (auto const& m : primes)
        out << "  P(" << p << "," << m["position"].get<int>() << ") = " << m["ideal"].get<std::string>() << "  index "
            << m["index"].get<std::string>() << "\n";
    return 0;
}

json mismatch_json(const Mismatch& m)
{
    return {{"d", m.d}, {"base", base_label(m.f)}, {"ideal", format_ideal(hnf(m.ideal, 2))}, {"basis", to_json(m.ideal)},
            {"index", m.index.get_str()}, {"check", m.check}, {"expected", m.expected}, {"got", m.got}};
}

int cmd_crossval(const Globals& g, const std::string& orders, bool serial, std::ostream& out)
{
    CrossvalOptions o;
    o.ds = parse_int_list(g.d);
    o.max_index = g.max_index.value_or(200);
    o.limits = g.limits;
    o.parallel = !serial;
    if (!orders.empty())
        for (auto f : parse_int_list(orders)) {
            if (f < 1) throw Error(ErrorCode::InvalidArgument, "order index must be positive");
            o.order_fs.push_back(static_cast<std::uint64_t>(f));
        }
    auto const start = std::chrono::steady_clock::now();
    CrossvalReport r = crossval(o);
    double const ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    auto minimal = r.minimal_counterexample();

    json sweeps = json::array();
    for (auto const& s : r.sweeps) {
        json mm = json::array();
        for (auto const& m : s.mismatches) mm.push_back(mismatch_json(m));
        sweeps.push_back({{"d", s.d}, {"base", base_label(s.f)}, {"ideals", s.ideals}, {"checks", s.checks},
                          {"oracle_conductors", s.oracle_conductors}, {"certificates", s.certificates},
                          {"radical", s.radical}, {"hypothesis_failed", s.hypothesis_failed},
                          {"scalar_pattern", s.scalar_pattern ? json(*s.scalar_pattern) : json(nullptr)},
                          {"mismatches", mm}});
    }
    if (g.json) {
        out << json{{"max_index", o.max_index}, {"sweeps", sweeps}, {"mismatches", r.mismatch_count()},
                    {"minimal_counterexample", minimal ? mismatch_json(*minimal) : json(nullptr)}, {"elapsed_ms", ms}}
                   .dump(2)
            << "\n";
    } else {
        for (auto const& s : r.sweeps) {
            out << "d = " << std::setw(4) << s.d << "  base " << std::setw(8) << std::left << base_label(s.f) << std::right
                << "  ideals " << std::setw(5) << s.ideals << "  checks " << std::setw(6) << s.checks << "  conductors "
                << std::setw(4) << s.oracle_conductors << "  mismatches " << s.mismatches.size();
            if (s.scalar_pattern) out << "  nS pattern " << (*s.scalar_pattern ? "holds" : "BROKEN");
            out << "\n";
        }
        out << r.mismatch_count() << " mismatches\n";
        if (minimal)
            out << "minimal counterexample: d = " << minimal->d << ", base " << base_label(minimal->f) << ", I = "
                << format_ideal(hnf(minimal->ideal, 2)) << " (index " << minimal->index << "), " << minimal->check
                << " says " << minimal->got << ", oracle says " << minimal->expected << "\n";
    }
    return r.mismatch_count() == 0 ? 0 : 1;
}

int cmd_props(const Globals& g, bool d_given, int cases, const std::string& law, std::ostream& out)
{
    LawOptions o;
    o.seed = g.seed;
    o.cases = cases;
    if (d_given) o.ds = parse_int_list(g.d);
    if (g.max_index) o.max_index = *g.max_index;
    std::vector<LawResult> results = law.empty() ? run_laws(o) : std::vector<LawResult>{run_law(law, o)};
    int failures = 0;
    json list = json::array();
    for (auto const& r : results) {
        failures += r.failures;
        list.push_back({{"law", r.name}, {"cases", r.cases}, {"failures", r.failures}, {"first_failure", r.first_failure}});
    }
    if (g.json) {
        out << json{{"seed", o.seed}, {"laws", list}}.dump(2) << "\n";
    } else {
        for (auto const& r : results) {
            out << std::left << std::setw(24) << r.name << std::right << " cases " << std::setw(4) << r.cases
                << "  failures " << r.failures;
            if (r.failures) out << "  first: " << r.first_failure;
            out << "\n";
        }
        out << "seed " << o.seed << "\n";
    }
    return failures == 0 ? 0 : 1;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Decide which ideals of a quadratic ring are conductors of intermediate rings"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    auto* d_opt = app.add_option("--d", g.d, "squarefree d of Q(sqrt d); a comma list for crossval and props");
    app.add_flag("--json", g.json, "machine-readable output");
    app.add_option("--seed", g.seed, "seed for the property suites");
    app.add_option("--max-index", g.max_index, "index bound for enumeration sweeps");
    app.add_option("--factor-bound", g.limits.factor_bound, "trial division bound")->capture_default_str();
    app.add_option("--coset-bound", g.limits.coset_bound, "coset enumeration bound")->capture_default_str();

    auto add_base = [](CLI::App* sub, std::uint64_t& f) {
        auto* base = sub->add_option_function<std::string>(
            "--base",
            [](const std::string& v) {
                if (v != "z") throw CLI::ValidationError("--base", "only 'z' is supported; use --order-f for orders");
            },
            "base ring: z (the default)");
        auto* order = sub->add_option("--order-f", f, "base ring Z + fS")->check(CLI::PositiveNumber);
        base->excludes(order);
    };

    CheckOptions check;
    auto* c = app.add_subcommand("check", "decide whether an ideal is a conductor ideal");
    c->add_option("--ideal", check.ideal, "ideal expression, e.g. \"(5, w-2)\", \"[[2,0;0,2]]\", \"P(5,1)\"")->required();
    add_base(c, check.order_f);
    c->add_option("--criterion", check.criterion)
        ->check(CLI::IsMember({"auto", "cor212", "thm27", "cor28", "cor213", "prop29", "brute"}))
        ->capture_default_str();
    c->add_flag("--crosscheck", check.crosscheck, "also run the brute-force test");

    std::uint64_t enum_f = 0;
    auto* e = app.add_subcommand("enumerate", "list conductor ideals of bounded index");
    add_base(e, enum_f);

    std::uint64_t p = 0;
    auto* s = app.add_subcommand("split", "splitting of a rational prime");
    s->add_option("--p", p, "rational prime")->required();

    std::string orders;
    bool serial = false;
    auto* x = app.add_subcommand("crossval", "compare every criterion with brute force");
    x->add_option("--order-f", orders, "comma list of order indexes to sweep besides the base Z");
    x->add_flag("--serial", serial, "run sweeps one at a time");

    int cases = LawOptions{}.cases;
    std::string law;
    auto* pr = app.add_subcommand("props", "seeded property suites");
    pr->add_option("--cases", cases)->check(CLI::PositiveNumber)->capture_default_str();
    pr->add_option("--law", law, "run a single law")->check(CLI::IsMember(law_names()));

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& ex) {
        int const status = app.exit(ex, out, err);
        return status == 0 ? 0 : kExitUsage;
    }
    if (x->parsed() && d_opt->count() == 0) g.d = "-1,2,3,5,-5,13";

    try {
        if (c->parsed()) return cmd_check(g, check, out);
        if (e->parsed()) return cmd_enumerate(g, enum_f, out);
        if (s->parsed()) return cmd_split(g, p, out);
        if (x->parsed()) return cmd_crossval(g, orders, serial, out);
        if (pr->parsed()) return cmd_props(g, d_opt->count() > 0, cases, law, out);
    } catch (ParseError const& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (std::exception const& ex) {
        err << "error: " << ex.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace conductor::cli
