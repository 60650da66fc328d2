#include "conductor/lattice.hpp"

#include "conductor/errors.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

namespace conductor {

IntVector make_vector(std::initializer_list<long> values)
{
    IntVector v;
    v.reserve(values.size());
    for (long x : values) v.emplace_back(x);
    return v;
}

std::string to_string(const IntVector& v)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols)
{
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (auto const& r : rows) {
        if (r.size() != cols_) throw Error(ErrorCode::InvalidArgument, "ragged matrix literal");
        for (long x : r) data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows, std::size_t cols)
{
    IntMatrix m(0, cols);
    for (auto const& r : rows) m.append_row(r);
    return m;
}

IntVector IntMatrix::row(std::size_t i) const
{
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void IntMatrix::append_row(const IntVector& v)
{
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw Error(ErrorCode::RankMismatch, "row length " + std::to_string(v.size()) + " vs " + std::to_string(cols_) + " columns");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
}

void IntMatrix::append_rows(const IntMatrix& other)
{
    if (rows_ == 0 && cols_ == 0) cols_ = other.cols_;
    if (other.cols_ != cols_) throw Error(ErrorCode::RankMismatch, "column count mismatch");
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
    rows_ += other.rows_;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m)
{
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    }
    return os << ']';
}

IntVector mul(const IntVector& x, const IntMatrix& m)
{
    if (x.size() != m.rows()) throw Error(ErrorCode::RankMismatch, "vector/matrix size mismatch");
    IntVector y(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) y[j] += x[i] * m(i, j);
    }
    return y;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b)
{
    if (a == b) return;
    for (std::size_t j = 0; j < m.cols(); ++j) swap(m(a, j), m(b, j));
}

// row[dst] -= q * row[src], touching only columns >= from
void sub_multiple(IntMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q, std::size_t from)
{
    for (std::size_t j = from; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

IntMatrix echelon_hnf(IntMatrix m)
{
    std::size_t const rows = m.rows();
    std::size_t const cols = m.cols();
    std::size_t pivot = 0;
    for (std::size_t c = 0; c < cols && pivot < rows; ++c) {
        for (;;) {
            // smallest nonzero magnitude in column c becomes the pivot
            std::size_t best = rows;
            for (std::size_t i = pivot; i < rows; ++i) {
                if (sgn(m(i, c)) == 0) continue;
                if (best == rows || mpz_cmpabs(m(i, c).get_mpz_t(), m(best, c).get_mpz_t()) < 0) best = i;
            }
            if (best == rows) break;
            swap_rows(m, pivot, best);
            bool done = true;
            for (std::size_t i = pivot + 1; i < rows; ++i) {
                if (sgn(m(i, c)) == 0) continue;
                mpz_class q = floor_div(m(i, c), m(pivot, c));
                sub_multiple(m, i, pivot, q, c);
                if (sgn(m(i, c)) != 0) done = false;
            }
            if (done) break;
        }
        if (sgn(m(pivot, c)) == 0) continue;
        if (sgn(m(pivot, c)) < 0) {
            for (std::size_t j = c; j < cols; ++j) m(pivot, j) = -m(pivot, j);
        }
        for (std::size_t i = 0; i < pivot; ++i) {
            mpz_class q = floor_div(m(i, c), m(pivot, c));
            if (sgn(q) != 0) sub_multiple(m, i, pivot, q, c);
        }
        ++pivot;
    }
    IntMatrix out(0, cols);
    for (std::size_t i = 0; i < pivot; ++i) out.append_row(m.row(i));
    return out;
}

IntLattice IntLattice::standard(std::size_t n)
{
    return IntLattice(IntMatrix::identity(n));
}

IntLattice IntLattice::scaled(std::size_t n, const mpz_class& k)
{
    if (sgn(k) == 0) throw Error(ErrorCode::RankDeficient, "zero multiple of the standard lattice");
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = abs(k);
    return IntLattice(std::move(m));
}

bool IntLattice::lex_less(const IntLattice& other) const
{
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j) {
            int c = cmp(basis_(i, j), other.basis_(i, j));
            if (c != 0) return c < 0;
        }
    return false;
}

std::ostream& operator<<(std::ostream& os, const IntLattice& l)
{
    return os << l.basis();
}

IntLattice hnf(const IntMatrix& gens, std::size_t ambient_rank)
{
    if (gens.cols() != ambient_rank)
        throw Error(ErrorCode::RankMismatch, std::to_string(gens.cols()) + " columns for ambient rank " + std::to_string(ambient_rank));
    IntMatrix e = echelon_hnf(gens);
    if (e.rows() != ambient_rank)
        throw Error(ErrorCode::RankDeficient, "span has rank " + std::to_string(e.rows()) + " < " + std::to_string(ambient_rank));
    return IntLattice(std::move(e));
}

IntLattice LatticeBuilder::from_canonical(IntMatrix basis)
{
    std::size_t const n = basis.rows();
    if (basis.cols() != n) throw Error(ErrorCode::RankMismatch, "basis is not square");
    for (std::size_t j = 0; j < n; ++j) {
        if (sgn(basis(j, j)) <= 0) throw Error(ErrorCode::InvalidArgument, "non-positive diagonal entry");
        for (std::size_t i = j + 1; i < n; ++i)
            if (sgn(basis(i, j)) != 0) throw Error(ErrorCode::InvalidArgument, "basis is not upper triangular");
        for (std::size_t i = 0; i < j; ++i)
            if (sgn(basis(i, j)) < 0 || basis(i, j) >= basis(j, j))
                throw Error(ErrorCode::InvalidArgument, "entry above diagonal not reduced");
    }
    return IntLattice(std::move(basis));
}

namespace {

void require_same_rank(const IntLattice& a, const IntLattice& b)
{
    if (a.rank() != b.rank())
        throw Error(ErrorCode::RankMismatch, "ranks " + std::to_string(a.rank()) + " and " + std::to_string(b.rank()));
}

// Rows of the echelon form of `stacked` whose pivots lie in the right half,
// restricted to the right half.
IntLattice right_block(const IntMatrix& stacked, std::size_t n)
{
    IntMatrix e = echelon_hnf(stacked);
    IntMatrix tail(0, n);
    for (std::size_t i = 0; i < e.rows(); ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < n && left_zero; ++j) left_zero = sgn(e(i, j)) == 0;
        if (!left_zero) continue;
        IntVector r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = e(i, n + j);
        tail.append_row(r);
    }
    return hnf(tail, n);
}

} // namespace

IntLattice lattice_sum(const IntLattice& a, const IntLattice& b)
{
    require_same_rank(a, b);
    IntMatrix g = a.basis();
    g.append_rows(b.basis());
    return hnf(g, a.rank());
}

IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b)
{
    require_same_rank(a, b);
    std::size_t const n = a.rank();
    // rows (a_i | a_i) and (b_j | 0): combinations with zero left half
    // have right half in a and in b.
    IntMatrix s(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            s(i, j) = a.basis()(i, j);
            s(i, n + j) = a.basis()(i, j);
            s(n + i, j) = b.basis()(i, j);
        }
    return right_block(s, n);
}

mpz_class lattice_index(const IntLattice& l)
{
    mpz_class d = 1;
    for (std::size_t i = 0; i < l.rank(); ++i) d *= l.basis()(i, i);
    return d;
}

IntVector coordinates(const IntLattice& l, const IntVector& v)
{
    std::size_t const n = l.rank();
    if (v.size() != n) throw Error(ErrorCode::RankMismatch, "vector of length " + std::to_string(v.size()) + " in rank " + std::to_string(n));
    IntVector rest = v;
    IntVector x(n);
    for (std::size_t j = 0; j < n; ++j) {
        mpz_class const& d = l.basis()(j, j);
        if (!mpz_divisible_p(rest[j].get_mpz_t(), d.get_mpz_t())) return {};
        x[j] = rest[j] / d;
        if (sgn(x[j]) == 0) continue;
        for (std::size_t k = j; k < n; ++k) rest[k] -= x[j] * l.basis()(j, k);
    }
    return x;
}

bool contains(const IntLattice& l, const IntVector& v)
{
    return !coordinates(l, v).empty();
}

bool is_subset(const IntLattice& a, const IntLattice& b)
{
    require_same_rank(a, b);
    return rows_in(a.basis(), b);
}

bool rows_in(const IntMatrix& rows, const IntLattice& l)
{
    for (std::size_t i = 0; i < rows.rows(); ++i)
        if (!contains(l, rows.row(i))) return false;
    return true;
}

IntLattice preimage(const IntMatrix& m, const IntLattice& l)
{
    std::size_t const n = l.rank();
    if (m.rows() != n || m.cols() != n) throw Error(ErrorCode::RankMismatch, "map is not " + std::to_string(n) + "x" + std::to_string(n));
    // rows (m_i | e_i) and (l_j | 0): a zero left half means x*m = -y*l.
    IntMatrix s(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            s(i, j) = m(i, j);
            s(n + i, j) = l.basis()(i, j);
        }
        s(i, n + i) = 1;
    }
    return right_block(s, n);
}

mpz_class line_multiplier(const IntLattice& l, const IntVector& u)
{
    std::size_t const n = l.rank();
    if (u.size() != n) throw Error(ErrorCode::RankMismatch, "vector length mismatch");
    if (std::all_of(u.begin(), u.end(), [](mpz_class const& x) { return sgn(x) == 0; }))
        throw Error(ErrorCode::InvalidArgument, "zero direction vector");
    std::vector<mpq_class> rest(u.begin(), u.end());
    mpz_class t = 1;
    for (std::size_t j = 0; j < n; ++j) {
        mpq_class x = rest[j] / mpq_class(l.basis()(j, j));
        x.canonicalize();
        mpz_class den = x.get_den();
        mpz_lcm(t.get_mpz_t(), t.get_mpz_t(), den.get_mpz_t());
        if (sgn(x) == 0) continue;
        for (std::size_t k = j; k < n; ++k) rest[k] -= x * mpq_class(l.basis()(j, k));
    }
    return t;
}

} // namespace conductor
