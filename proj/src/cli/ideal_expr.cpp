#include "conductor/cli/ideal_expr.hpp"

#include "conductor/errors.hpp"

#include <cctype>
#include <optional>

namespace conductor::cli {

namespace {

class Parser {
public:
    explicit Parser(std::string_view src) : s_(src) {}

    IdealExpr ideal()
    {
        IdealExpr e;
        e.offset = skip();
        if (peek() == '(') {
            ++pos_;
            e.kind = IdealExpr::Kind::Generators;
            e.gens.push_back(gen());
            while (accept(',')) e.gens.push_back(gen());
            expect(')');
        } else if (peek() == '[') {
            ++pos_;
            expect('[');
            e.kind = IdealExpr::Kind::Matrix;
            e.matrix[0] = signed_integer();
            expect(',');
            e.matrix[1] = signed_integer();
            expect(';');
            e.matrix[2] = signed_integer();
            expect(',');
            e.matrix[3] = signed_integer();
            expect(']');
            expect(']');
        } else if (peek() == 'P') {
            ++pos_;
            expect('(');
            e.kind = IdealExpr::Kind::Named;
            e.p = integer();
            expect(',');
            e.k = integer();
            expect(')');
        } else {
            fail("expected '(', '[[' or 'P('");
        }
        if (skip() != s_.size()) fail("trailing input");
        return e;
    }

private:
    Gen gen()
    {
        Gen g;
        bool negative = accept('-');
        for (;;) {
            Term t = term();
            if (negative) t.coeff = -t.coeff;
            g.terms.push_back(std::move(t));
            if (accept('+')) negative = false;
            else if (accept('-')) negative = true;
            else return g;
        }
    }

    Term term()
    {
        Term t;
        t.offset = skip();
        bool const has_coeff = std::isdigit(static_cast<unsigned char>(peek()));
        if (has_coeff) t.coeff = integer();
        if (has_coeff) accept('*');
        skip();
        if (s_.substr(pos_, 1) == "w") {
            ++pos_;
            t.atom = Term::Atom::W;
        } else if (s_.substr(pos_, 4) == "sqrt") {
            pos_ += 4;
            expect('(');
            t.atom = Term::Atom::Sqrt;
            t.radicand = signed_integer();
            expect(')');
        } else if (!has_coeff) {
            fail("expected an integer, 'w' or 'sqrt('");
        }
        return t;
    }

    mpz_class signed_integer()
    {
        bool const negative = accept('-');
        mpz_class v = integer();
        return negative ? mpz_class(-v) : v;
    }

    mpz_class integer()
    {
        std::size_t const start = skip();
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an integer");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }

    std::size_t skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return pos_;
    }

    char peek()
    {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool accept(char c)
    {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    [[noreturn]] void fail(const std::string& what) { throw ParseError(skip(), what); }

    std::string_view s_;
    std::size_t pos_ = 0;
};

void print_term(std::string& out, const Term& t, bool first)
{
    mpz_class c = t.coeff;
    if (!first) {
        out += c < 0 ? " - " : " + ";
        c = abs(c);
    }
    std::string atom;
    if (t.atom == Term::Atom::W) atom = "w";
    if (t.atom == Term::Atom::Sqrt) atom = "sqrt(" + t.radicand.get_str() + ")";
    if (atom.empty()) out += c.get_str();
    else if (c == 1) out += atom;
    else if (c == -1) out += "-" + atom;
    else out += c.get_str() + atom;
}

// m with k = m^2, if any.
std::optional<mpz_class> exact_root(const mpz_class& k)
{
    if (k < 0) return std::nullopt;
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), k.get_mpz_t());
    if (r * r != k) return std::nullopt;
    return r;
}

} // namespace

IdealExpr parse_ideal_expr(std::string_view src)
{
    return Parser(src).ideal();
}

std::string print(const IdealExpr& e)
{
    std::string out;
    switch (e.kind) {
    case IdealExpr::Kind::Generators:
        out = "(";
        for (std::size_t g = 0; g < e.gens.size(); ++g) {
            if (g) out += ", ";
            for (std::size_t t = 0; t < e.gens[g].terms.size(); ++t) print_term(out, e.gens[g].terms[t], t == 0);
        }
        return out + ")";
    case IdealExpr::Kind::Matrix:
        return "[[" + e.matrix[0].get_str() + ", " + e.matrix[1].get_str() + "; " + e.matrix[2].get_str() + ", " +
               e.matrix[3].get_str() + "]]";
    case IdealExpr::Kind::Named:
        return "P(" + e.p.get_str() + ", " + e.k.get_str() + ")";
    }
    return out;
}

Element lower(const Gen& g, const QuadField& field)
{
    Element x{0, 0};
    for (auto const& t : g.terms) {
        Element a;
        switch (t.atom) {
        case Term::Atom::One: a = field.integer(1); break;
        case Term::Atom::W: a = field.omega(); break;
        case Term::Atom::Sqrt:
            if (auto m = exact_root(t.radicand)) {
                a = field.integer(*m);
            } else if (t.radicand % field.d() == 0 && exact_root(t.radicand / field.d())) {
                mpz_class const m = *exact_root(t.radicand / field.d());
                a = field.sqrt_d();
                for (auto& c : a) c *= m;
            } else {
                throw ParseError(t.offset, "sqrt(" + t.radicand.get_str() + ") does not lie in Q(sqrt " + std::to_string(field.d()) + ")");
            }
            break;
        }
        x[0] += t.coeff * a[0];
        x[1] += t.coeff * a[1];
    }
    return x;
}

Ideal lower(const IdealExpr& e, const QuadField& field)
{
    switch (e.kind) {
    case IdealExpr::Kind::Generators: {
        std::vector<Element> gens;
        for (auto const& g : e.gens) gens.push_back(lower(g, field));
        return ideal_from_generators(field.ring(), gens);
    }
    case IdealExpr::Kind::Matrix: {
        IntMatrix m(2, 2);
        for (std::size_t k = 0; k < 4; ++k) m(k / 2, k % 2) = e.matrix[k];
        return Ideal::from_lattice(field.ring(), hnf(m, 2));
    }
    case IdealExpr::Kind::Named: {
        if (!e.p.fits_ulong_p() || !e.k.fits_ulong_p()) throw Error(ErrorCode::InvalidArgument, "P(p, k) out of range");
        auto primes = primes_above(field, e.p.get_ui());
        unsigned long const k = e.k.get_ui();
        if (k < 1 || k > primes.size())
            throw Error(ErrorCode::InvalidArgument, "there are " + std::to_string(primes.size()) + " primes above " + e.p.get_str());
        return primes[k - 1].ideal;
    }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown ideal expression");
}

Ideal parse_ideal(std::string_view src, const QuadField& field)
{
    return lower(parse_ideal_expr(src), field);
}

std::string format_ideal(const IntLattice& l)
{
    IdealExpr e;
    for (std::size_t r = 0; r < l.rank(); ++r) {
        IntVector const& row = l.row(r);
        Gen g;
        if (row[0] != 0 || row[1] == 0) g.terms.push_back({row[0], Term::Atom::One, 0, 0});
        if (row[1] != 0) g.terms.push_back({row[1], Term::Atom::W, 0, 0});
        e.gens.push_back(std::move(g));
    }
    return print(e);
}

} // namespace conductor::cli
