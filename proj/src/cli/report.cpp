#include "conductor/cli/report.hpp"

#include "conductor/cli/ideal_expr.hpp"
#include "conductor/errors.hpp"

#include <cstdlib>
#include <sstream>
#include <unistd.h>

namespace conductor::cli {

using nlohmann::json;

json to_json(const IntVector& v)
{
    json out = json::array();
    for (auto const& x : v) out.push_back(x.get_str());
    return out;
}

json to_json(const IntMatrix& m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
    return out;
}

IntVector vector_from_json(const json& j)
{
    IntVector v;
    for (auto const& x : j) v.emplace_back(x.get<std::string>());
    return v;
}

IntMatrix matrix_from_json(const json& j)
{
    IntMatrix m;
    for (auto const& row : j) m.append_row(vector_from_json(row));
    return m;
}

json to_json(const Report& r)
{
    json primes = json::array();
    for (auto const& p : r.verdict.primes)
        primes.push_back({{"p", p.p}, {"prime", to_json(p.prime)}, {"e", p.e}, {"f", p.f}, {"v", p.v},
                          {"condition", condition_name(p.condition)}});
    Witness const& w = r.verdict.witness;
    json witness = {{"kind", witness_kind_name(w.kind)}, {"note", w.note}};
    witness["element"] = w.kind == WitnessKind::Element ? to_json(w.element) : json(nullptr);
    witness["lattice"] = w.kind == WitnessKind::Lattice ? to_json(w.lattice) : json(nullptr);
    json crosscheck = nullptr;
    if (r.oracle) crosscheck = {{"oracle", decision_name(*r.oracle)}, {"agrees", *r.oracle == r.verdict.decision}};
    return {
        {"decision", decision_name(r.verdict.decision)},
        {"criterion", r.verdict.criterion},
        {"d", r.d},
        {"base", r.base},
        {"ideal", to_json(r.ideal)},
        {"index", r.index.get_str()},
        {"primes", primes},
        {"witness", witness},
        {"crosscheck", crosscheck},
        {"elapsed_ms", r.elapsed_ms},
    };
}

Report report_from_json(const json& j)
{
    try {
        Report r;
        r.d = j.at("d").get<std::int64_t>();
        r.base = j.at("base").get<std::string>();
        r.ideal = matrix_from_json(j.at("ideal"));
        r.index = mpz_class(j.at("index").get<std::string>());
        r.verdict.decision = parse_decision(j.at("decision").get<std::string>());
        r.verdict.criterion = j.at("criterion").get<std::string>();
        for (auto const& p : j.at("primes")) {
            PrimeReport row;
            row.p = p.at("p").get<std::int64_t>();
            row.prime = matrix_from_json(p.at("prime"));
            row.e = p.at("e").get<int>();
            row.f = p.at("f").get<int>();
            row.v = p.at("v").get<int>();
            row.condition = parse_condition(p.at("condition").get<std::string>());
            r.verdict.primes.push_back(std::move(row));
        }
        json const& w = j.at("witness");
        r.verdict.witness.kind = parse_witness_kind(w.at("kind").get<std::string>());
        r.verdict.witness.note = w.at("note").get<std::string>();
        if (!w.at("element").is_null()) r.verdict.witness.element = vector_from_json(w.at("element"));
        if (!w.at("lattice").is_null()) r.verdict.witness.lattice = matrix_from_json(w.at("lattice"));
        if (!j.at("crosscheck").is_null()) r.oracle = parse_decision(j.at("crosscheck").at("oracle").get<std::string>());
        r.elapsed_ms = j.at("elapsed_ms").get<double>();
        return r;
    } catch (json::exception const& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("malformed report: ") + e.what());
    }
}

namespace {

std::string matrix_text(const IntMatrix& m)
{
    std::ostringstream os;
    os << m;
    return os.str();
}

} // namespace

std::string render_text(const Report& r, bool color)
{
    auto paint = [&](std::string_view s, const char* code) {
        return color ? std::string("\033[") + code + "m" + std::string(s) + "\033[0m" : std::string(s);
    };
    char const* tone = r.verdict.decision == Decision::Conductor      ? "32"
                       : r.verdict.decision == Decision::NotConductor ? "31"
                                                                      : "33";
    std::ostringstream os;
    os << "decision:   " << paint(decision_name(r.verdict.decision), tone) << "\n";
    os << "criterion:  " << r.verdict.criterion << "\n";
    os << "d:          " << r.d << "\n";
    os << "base:       " << r.base << "\n";
    os << "ideal:      " << format_ideal(hnf(r.ideal, r.ideal.cols())) << "  " << matrix_text(r.ideal) << "\n";
    os << "index:      " << r.index << "\n";
    os << "primes:     " << r.verdict.primes.size() << "\n";
    for (auto const& p : r.verdict.primes)
        os << "  p=" << p.p << "  prime=" << matrix_text(p.prime) << "  e=" << p.e << "  f=" << p.f << "  v=" << p.v
           << "  condition=" << condition_name(p.condition) << "\n";
    Witness const& w = r.verdict.witness;
    os << "witness:    " << witness_kind_name(w.kind);
    if (w.kind == WitnessKind::Element) os << " " << to_string(w.element);
    if (w.kind == WitnessKind::Lattice) os << " " << matrix_text(w.lattice);
    if (!w.note.empty()) os << "  (" << w.note << ")";
    os << "\n";
    os << "crosscheck: ";
    if (r.oracle) os << "oracle " << decision_name(*r.oracle) << ", " << (*r.oracle == r.verdict.decision ? "agrees" : paint("DISAGREES", "31"));
    else os << "not run";
    os << "\n";
    os << "elapsed_ms: " << r.elapsed_ms << "\n";
    return os.str();
}

bool color_enabled()
{
    char const* no_color = std::getenv("NO_COLOR");
    if (no_color && *no_color) return false;
    return isatty(STDOUT_FILENO);
}

} // namespace conductor::cli
