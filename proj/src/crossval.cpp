#include "conductor/crossval.hpp"

#include "conductor/errors.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <string_view>

namespace conductor {

namespace {

std::string verdict_word(bool conductor)
{
    return std::string(decision_name(conductor ? Decision::Conductor : Decision::NotConductor));
}

class Recorder {
public:
    Recorder(SweepSummary& s, const Ideal& i) : s_(s), i_(i) {}

    // Runs one comparison; an exception counts as a mismatch.
    void check(std::string_view name, const std::string& expected, const std::function<std::string()>& run)
    {
        ++s_.checks;
        std::string got;
        try {
            got = run();
        } catch (std::exception const& e) {
            got = std::string("error: ") + e.what();
        }
        if (got != expected)
            s_.mismatches.push_back({s_.d, s_.f, i_.lattice().basis(), i_.index(), std::string(name), expected, got});
    }

private:
    SweepSummary& s_;
    const Ideal& i_;
};

void check_sufficiency(Recorder& rec, SweepSummary& s, const QuadField& field, const Subring& base,
                       const Ideal& i, bool truth, const Limits& limits)
{
    // A certificate is only wrong when it is issued for a non-conductor.
    rec.check("prop29", "sound", [&] {
        Sufficiency c = prop29_sufficient(field, base, i, limits);
        if (c == Sufficiency::Inconclusive) return std::string("sound");
        ++s.certificates;
        return truth ? std::string("sound") : std::string(sufficiency_name(c));
    });
}

} // namespace

SweepSummary sweep_integers(const QuadField& field, std::uint64_t max_index, const Limits& limits)
{
    SweepSummary s;
    s.d = field.d();
    Subring const z = field.integers();
    std::vector<Ideal> conductors;
    for_each_ideal(field.ring(), max_index, [&](const Ideal& i) {
        ++s.ideals;
        bool const truth = is_conductor_bruteforce(field.ring(), z, i).is_conductor;
        if (truth) conductors.push_back(i);
        std::string const want = verdict_word(truth);
        Recorder rec(s, i);
        rec.check("cor212", want, [&] { return std::string(decision_name(cor212_verdict(field, i, limits).decision)); });
        rec.check("thm27", want, [&] { return std::string(decision_name(thm27_verdict(field, z, i, limits).decision)); });
        check_sufficiency(rec, s, field, z, i, truth, limits);
    });
    s.oracle_conductors = conductors.size();

    std::vector<Ideal> scalars;
    for (long n = 1; static_cast<std::uint64_t>(n * n) <= max_index; ++n)
        scalars.push_back(ideal_from_generators(field.ring(), std::vector<Element>{field.integer(n)}));
    s.scalar_pattern = conductors == scalars;
    return s;
}

SweepSummary sweep_order(const QuadField& field, std::uint64_t f, std::uint64_t max_index, const Limits& limits)
{
    SweepSummary s;
    s.d = field.d();
    s.f = f;
    Subring const r = make_order(field, f).ring;
    for_each_ideal(field.ring(), max_index, [&](const Ideal& i) {
        ++s.ideals;
        bool const truth = is_conductor_bruteforce(field.ring(), r, i).is_conductor;
        if (truth) ++s.oracle_conductors;
        std::string const want = verdict_word(truth);
        Recorder rec(s, i);
        auto applicable = [&](Verdict v) {
            if (v.decision != Decision::HypothesisFailed) return std::string(decision_name(v.decision));
            ++s.hypothesis_failed;
            return want;
        };
        rec.check("thm27", want, [&] { return applicable(thm27_verdict(field, r, i, limits)); });
        rec.check("cor28", want, [&] { return applicable(cor28_verdict(field, r, i, limits)); });
        check_sufficiency(rec, s, field, r, i, truth, limits);
        if (factor(field, i, limits.factor_bound).is_radical()) {
            ++s.radical;
            rec.check("cor213", want, [&] { return std::string(decision_name(cor213_verdict(field, r, i, limits).decision)); });
        }
    });
    return s;
}

std::uint64_t CrossvalReport::mismatch_count() const
{
    std::uint64_t n = 0;
    for (auto const& s : sweeps) n += s.mismatches.size();
    return n;
}

std::optional<Mismatch> CrossvalReport::minimal_counterexample() const
{
    std::optional<Mismatch> best;
    for (auto const& s : sweeps)
        for (auto const& m : s.mismatches)
            if (!best || m.index < best->index) best = m;
    return best;
}

CrossvalReport crossval(const CrossvalOptions& opts)
{
    std::vector<std::function<SweepSummary()>> jobs;
    for (auto d : opts.ds) {
        QuadField const k = make_field(d);
        jobs.push_back([=] { return sweep_integers(k, opts.max_index, opts.limits); });
        for (auto f : opts.order_fs)
            jobs.push_back([=] { return sweep_order(k, f, opts.max_index, opts.limits); });
    }
    CrossvalReport report;
    if (!opts.parallel) {
        for (auto& j : jobs) report.sweeps.push_back(j());
        return report;
    }
    // results are collected in submission order, so scheduling cannot leak into the report
    std::vector<std::future<SweepSummary>> running;
    for (auto& j : jobs) running.push_back(std::async(std::launch::async, j));
    for (auto& r : running) report.sweeps.push_back(r.get());
    return report;
}

} // namespace conductor
