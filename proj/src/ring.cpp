#include "conductor/ring.hpp"

#include "conductor/errors.hpp"

#include <algorithm>

namespace conductor {

namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k)
{
    return "(b" + std::to_string(i) + ", b" + std::to_string(j) + ", b" + std::to_string(k) + ")";
}

} // namespace

RingTable RingTable::make(const std::vector<std::vector<IntVector>>& table, IntVector one)
{
    std::size_t const n = one.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "rank zero ring");
    if (table.size() != n) throw Error(ErrorCode::RankMismatch, "table has " + std::to_string(table.size()) + " rows for rank " + std::to_string(n));
    RingTable s;
    s.n_ = n;
    s.c_.resize(n * n * n);
    s.one_ = std::move(one);
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n) throw Error(ErrorCode::RankMismatch, "table row " + std::to_string(i) + " has wrong length");
        for (std::size_t j = 0; j < n; ++j) {
            if (table[i][j].size() != n) throw Error(ErrorCode::RankMismatch, "product b" + std::to_string(i) + "*b" + std::to_string(j) + " has wrong length");
            for (std::size_t k = 0; k < n; ++k) s.c_[(i * n + j) * n + k] = table[i][j][k];
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (s.constant(i, j, k) != s.constant(j, i, k))
                    throw Error(ErrorCode::NotCommutative, "b" + std::to_string(i) + "*b" + std::to_string(j) + " != b" + std::to_string(j) + "*b" + std::to_string(i));

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Element bi = s.basis_element(i), bj = s.basis_element(j), bk = s.basis_element(k);
                if (s.multiply(s.multiply(bi, bj), bk) != s.multiply(bi, s.multiply(bj, bk)))
                    throw Error(ErrorCode::NotAssociative, "basis triple " + triple(i, j, k));
            }

    for (std::size_t i = 0; i < n; ++i)
        if (s.multiply(s.one_, s.basis_element(i)) != s.basis_element(i))
            throw Error(ErrorCode::BadIdentity, "one * b" + std::to_string(i) + " != b" + std::to_string(i));
    return s;
}

Element RingTable::basis_element(std::size_t i) const
{
    Element e(n_);
    e.at(i) = 1;
    return e;
}

Element RingTable::multiply(const Element& x, const Element& y) const
{
    if (x.size() != n_ || y.size() != n_) throw Error(ErrorCode::RankMismatch, "element length mismatch");
    Element z(n_);
    mpz_class xy;
    for (std::size_t i = 0; i < n_; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (sgn(y[j]) == 0) continue;
            xy = x[i] * y[j];
            for (std::size_t k = 0; k < n_; ++k) z[k] += xy * constant(i, j, k);
        }
    }
    return z;
}

IntMatrix RingTable::multiplication_matrix(const Element& g) const
{
    IntMatrix m(0, n_);
    for (std::size_t i = 0; i < n_; ++i) m.append_row(multiply(basis_element(i), g));
    return m;
}

Ideal Ideal::from_lattice(const RingTable& ring, IntLattice lattice)
{
    if (lattice.rank() != ring.rank()) throw Error(ErrorCode::RankMismatch, "lattice rank differs from ring rank");
    for (std::size_t i = 0; i < ring.rank(); ++i) {
        IntMatrix m = ring.multiplication_matrix(ring.basis_element(i));
        for (std::size_t r = 0; r < lattice.rank(); ++r) {
            IntVector v = lattice.row(r);
            if (!contains(lattice, mul(v, m)))
                throw Error(ErrorCode::NotAnIdeal, "b" + std::to_string(i) + " * " + to_string(v) + " leaves the lattice");
        }
    }
    return Ideal(std::move(lattice));
}

Ideal Ideal::whole(const RingTable& ring)
{
    return Ideal(ring.whole());
}

Subring Subring::integers(const RingTable& ring)
{
    Subring r;
    r.one_ = ring.one();
    r.gens_ = IntMatrix(0, ring.rank());
    r.gens_.append_row(ring.one());
    return r;
}

Subring Subring::from_lattice(const RingTable& ring, IntLattice lattice)
{
    if (lattice.rank() != ring.rank()) throw Error(ErrorCode::RankMismatch, "lattice rank differs from ring rank");
    if (!conductor::contains(lattice, ring.one())) throw Error(ErrorCode::ClosureViolation, "identity not in lattice");
    for (std::size_t i = 0; i < lattice.rank(); ++i)
        for (std::size_t j = i; j < lattice.rank(); ++j) {
            Element p = ring.multiply(lattice.row(i), lattice.row(j));
            if (!conductor::contains(lattice, p))
                throw Error(ErrorCode::ClosureViolation, to_string(lattice.row(i)) + " * " + to_string(lattice.row(j)) + " leaves the lattice");
        }
    Subring r;
    r.one_ = ring.one();
    r.gens_ = lattice.basis();
    r.lattice_ = std::move(lattice);
    return r;
}

const IntLattice& Subring::lattice() const
{
    if (!lattice_) throw Error(ErrorCode::RankDeficient, "the prime subring has rank one");
    return *lattice_;
}

bool Subring::contains(const Element& x) const
{
    if (lattice_) return conductor::contains(*lattice_, x);
    // x = t * one
    std::optional<mpz_class> t;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (sgn(one_[k]) == 0) {
            if (sgn(x[k]) != 0) return false;
            continue;
        }
        if (!mpz_divisible_p(x[k].get_mpz_t(), one_[k].get_mpz_t())) return false;
        mpz_class q = x[k] / one_[k];
        if (t && *t != q) return false;
        t = q;
    }
    return true;
}

IntLattice Subring::plus(const IntLattice& l) const
{
    IntMatrix g = gens_;
    g.append_rows(l.basis());
    return hnf(g, l.rank());
}

IntMatrix Subring::meet(const IntLattice& l) const
{
    if (lattice_) return lattice_intersect(*lattice_, l).basis();
    mpz_class t = line_multiplier(l, one_);
    IntMatrix m(0, l.rank());
    IntVector row = one_;
    for (auto& x : row) x *= t;
    m.append_row(row);
    return m;
}

mpz_class Subring::quotient_order(const IntLattice& l) const
{
    if (lattice_) return lattice_index(lattice_intersect(*lattice_, l)) / lattice_index(*lattice_);
    return line_multiplier(l, one_);
}

Ideal ideal_from_generators(const RingTable& ring, std::span<const Element> gens)
{
    std::size_t const n = ring.rank();
    IntMatrix rows(0, n);
    for (auto const& g : gens)
        for (std::size_t i = 0; i < n; ++i) rows.append_row(ring.multiply(g, ring.basis_element(i)));
    IntMatrix e = echelon_hnf(rows);
    if (e.rows() != n)
        throw Error(ErrorCode::InfiniteIndex, "generated ideal has rank " + std::to_string(e.rows()) + " < " + std::to_string(n));
    return Ideal::from_lattice(ring, hnf(e, n));
}

IntLattice lattice_product(const RingTable& ring, const IntLattice& a, const IntLattice& b)
{
    if (a.rank() != b.rank() || a.rank() != ring.rank()) throw Error(ErrorCode::RankMismatch, "product of lattices of different rank");
    IntMatrix rows(0, ring.rank());
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < b.rank(); ++j) rows.append_row(ring.multiply(a.row(i), b.row(j)));
    return hnf(rows, ring.rank());
}

Ideal ideal_product(const RingTable& ring, const Ideal& a, const Ideal& b)
{
    return Ideal::from_lattice(ring, lattice_product(ring, a.lattice(), b.lattice()));
}

Ideal ideal_sum(const RingTable& ring, const Ideal& a, const Ideal& b)
{
    return Ideal::from_lattice(ring, lattice_sum(a.lattice(), b.lattice()));
}

Ideal ideal_intersect(const RingTable& ring, const Ideal& a, const Ideal& b)
{
    return Ideal::from_lattice(ring, lattice_intersect(a.lattice(), b.lattice()));
}

Ideal ideal_power(const RingTable& ring, const Ideal& a, unsigned k)
{
    Ideal p = Ideal::whole(ring);
    for (unsigned i = 0; i < k; ++i) p = ideal_product(ring, p, a);
    return p;
}

IntLattice colon(const RingTable& ring, const IntLattice& x, const IntLattice& y, const IntMatrix& z_gens)
{
    if (x.rank() != ring.rank() || y.rank() != ring.rank() || z_gens.cols() != ring.rank())
        throw Error(ErrorCode::RankMismatch, "colon operands of different rank");
    IntLattice result = y;
    for (std::size_t k = 0; k < z_gens.rows(); ++k)
        result = lattice_intersect(result, preimage(ring.multiplication_matrix(z_gens.row(k)), x));
    return result;
}

IntLattice colon(const RingTable& ring, const IntLattice& x, const IntLattice& y, const IntLattice& z)
{
    return colon(ring, x, y, z.basis());
}

IntMatrix colon_in(const RingTable& ring, const IntLattice& x, const Subring& r, const IntLattice& z)
{
    return r.meet(colon(ring, x, ring.whole(), z));
}

Subring adjoin(const RingTable& ring, const Subring& r, const Ideal& i)
{
    return Subring::from_lattice(ring, r.plus(i.lattice()));
}

Ideal conductor_of(const RingTable& ring, const Subring& v)
{
    if (v.is_integers()) throw Error(ErrorCode::RankDeficient, "(Z :_S S) = {0}");
    IntLattice s = ring.whole();
    return Ideal::from_lattice(ring, colon(ring, v.lattice(), s, s));
}

ConductorCheck is_conductor_bruteforce(const RingTable& ring, const Subring& r, const Ideal& i)
{
    Subring v = adjoin(ring, r, i);
    Ideal l = conductor_of(ring, v);
    ConductorCheck out{l == i, v, l, std::nullopt};
    if (!out.is_conductor) {
        for (std::size_t k = 0; k < l.lattice().rank(); ++k) {
            Element x = l.lattice().row(k);
            if (!contains(i.lattice(), x)) {
                out.witness = x;
                break;
            }
        }
        if (!out.witness) throw Error(ErrorCode::CrossCheckMismatch, "conductor differs from I but contains no basis vector outside it");
    }
    return out;
}

bool zero_ideal_is_conductor(const RingTable& ring, const Subring& r)
{
    try {
        conductor_of(ring, r);
        return false;
    } catch (Error const& e) {
        if (e.code() == ErrorCode::RankDeficient) return true;
        throw;
    }
}

std::vector<IntVector> coset_representatives(const IntLattice& l, std::uint64_t bound)
{
    mpz_class idx = lattice_index(l);
    if (idx > bound)
        throw Error(ErrorCode::QuotientTooLarge, "quotient of order " + idx.get_str() + " exceeds bound " + std::to_string(bound));
    std::size_t const n = l.rank();
    std::vector<IntVector> reps;
    reps.reserve(idx.get_ui());
    IntVector x(n);
    // odometer over 0 <= x_j < d_j
    for (;;) {
        reps.push_back(x);
        std::size_t j = n;
        while (j > 0) {
            --j;
            x[j] += 1;
            if (x[j] < l.basis()(j, j)) break;
            x[j] = 0;
            if (j == 0) return reps;
        }
        if (n == 0) return reps;
    }
}

CyclicCheck is_cyclic_quotient(const RingTable& ring, const Subring& r, const Ideal& i, std::uint64_t coset_bound)
{
    std::size_t const n = ring.rank();
    if (lattice_index(i.lattice()) == 1) return {true, ring.one()};
    for (auto const& x : coset_representatives(i.lattice(), coset_bound)) {
        IntMatrix g = i.lattice().basis();
        for (std::size_t k = 0; k < r.generators().rows(); ++k) g.append_row(ring.multiply(r.generators().row(k), x));
        IntMatrix e = echelon_hnf(g);
        if (e.rows() != n) continue;
        bool unimodular = true;
        for (std::size_t k = 0; k < n && unimodular; ++k) unimodular = e(k, k) == 1;
        if (unimodular) return {true, x};
    }
    return {false, std::nullopt};
}

namespace {

// All canonical upper-triangular bases with the given diagonal.
void fill_offdiagonal(IntMatrix& m, std::size_t pos, std::vector<IntLattice>& out)
{
    std::size_t const n = m.rows();
    // positions (i, j) with i < j in row-major order
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (count++ != pos) continue;
            mpz_class const d = m(j, j);
            for (mpz_class v = 0; v < d; ++v) {
                m(i, j) = v;
                fill_offdiagonal(m, pos + 1, out);
            }
            m(i, j) = 0;
            return;
        }
    out.push_back(LatticeBuilder::from_canonical(m));
}

void diagonals(std::size_t n, std::uint64_t target, std::vector<std::uint64_t>& diag,
               std::vector<std::vector<std::uint64_t>>& out)
{
    if (diag.size() + 1 == n) {
        diag.push_back(target);
        out.push_back(diag);
        diag.pop_back();
        return;
    }
    for (std::uint64_t d = 1; d <= target; ++d) {
        if (target % d) continue;
        diag.push_back(d);
        diagonals(n, target / d, diag, out);
        diag.pop_back();
    }
}

} // namespace

void for_each_ideal(const RingTable& ring, std::uint64_t max_index, const std::function<void(const Ideal&)>& visit)
{
    std::size_t const n = ring.rank();
    std::vector<IntMatrix> mults;
    for (std::size_t i = 0; i < n; ++i) mults.push_back(ring.multiplication_matrix(ring.basis_element(i)));

    for (std::uint64_t m = 1; m <= max_index; ++m) {
        std::vector<std::vector<std::uint64_t>> diags;
        std::vector<std::uint64_t> diag;
        diagonals(n, m, diag, diags);
        std::vector<IntLattice> shapes;
        for (auto const& d : diags) {
            IntMatrix b(n, n);
            for (std::size_t k = 0; k < n; ++k) b(k, k) = static_cast<unsigned long>(d[k]);
            fill_offdiagonal(b, 0, shapes);
        }
        std::sort(shapes.begin(), shapes.end(), [](IntLattice const& a, IntLattice const& b) { return a.lex_less(b); });
        for (auto& l : shapes) {
            bool closed = true;
            for (std::size_t i = 0; i < n && closed; ++i) {
                if (mults[i] == IntMatrix::identity(n)) continue;
                for (std::size_t r = 0; r < n && closed; ++r) closed = contains(l, mul(l.row(r), mults[i]));
            }
            if (closed) visit(Ideal::from_lattice(ring, std::move(l)));
        }
    }
}

std::vector<Ideal> enumerate_ideals(const RingTable& ring, std::uint64_t max_index)
{
    std::vector<Ideal> out;
    for_each_ideal(ring, max_index, [&](Ideal const& i) { out.push_back(i); });
    return out;
}

std::vector<Ideal> enumerate_conductor_ideals(const RingTable& ring, const Subring& r, std::uint64_t max_index)
{
    std::vector<Ideal> out;
    for_each_ideal(ring, max_index, [&](Ideal const& i) {
        if (is_conductor_bruteforce(ring, r, i).is_conductor) out.push_back(i);
    });
    return out;
}

} // namespace conductor
