#pragma once

/*
 * Exact integer lattice arithmetic.
 *
 * Every lattice here is a full-rank subgroup of Z^n, stored by its
 * canonical row Hermite normal form: upper triangular, strictly positive
 * diagonal, and every entry above a diagonal entry d reduced into [0, d).
 * Two lattices are equal iff their bases are equal entry by entry.
 *
 * Vectors are rows. A linear map is an n x n matrix acting on the right,
 * x -> x * m.
 */

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace conductor {

using IntVector = std::vector<mpz_class>;

IntVector make_vector(std::initializer_list<long> values);
std::string to_string(const IntVector& v);

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(std::span<const IntVector> rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    mpz_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const mpz_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector row(std::size_t i) const;
    /// A default-constructed matrix takes the width of the first row appended.
    void append_row(const IntVector& v);
    void append_rows(const IntMatrix& other);

    bool operator==(const IntMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<mpz_class> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// Row vector times matrix.
IntVector mul(const IntVector& x, const IntMatrix& m);

/// Nonzero rows of the row Hermite normal form of the span of `gens`, in
/// pivot order. Works for any rank; the result has rank-many rows.
IntMatrix echelon_hnf(IntMatrix gens);

class IntLattice {
public:
    /// The standard lattice Z^n.
    static IntLattice standard(std::size_t n);
    /// k * Z^n.
    static IntLattice scaled(std::size_t n, const mpz_class& k);

    std::size_t rank() const noexcept { return basis_.rows(); }
    const IntMatrix& basis() const noexcept { return basis_; }
    IntVector row(std::size_t i) const { return basis_.row(i); }

    bool operator==(const IntLattice& other) const = default;

    /// Lexicographic order on row-major basis entries.
    bool lex_less(const IntLattice& other) const;

private:
    friend IntLattice hnf(const IntMatrix& gens, std::size_t ambient_rank);
    friend class LatticeBuilder;

    explicit IntLattice(IntMatrix basis) : basis_(std::move(basis)) {}

    IntMatrix basis_;
};

std::ostream& operator<<(std::ostream& os, const IntLattice& l);

/// Canonical basis of the row span of `gens`. Throws RankDeficient if the
/// span is not of full rank `ambient_rank`, RankMismatch on a column mismatch.
IntLattice hnf(const IntMatrix& gens, std::size_t ambient_rank);

/// Builds a lattice from an upper-triangular basis that is already in
/// canonical form. Used by enumerators; validates the shape.
class LatticeBuilder {
public:
    static IntLattice from_canonical(IntMatrix basis);
};

IntLattice lattice_sum(const IntLattice& a, const IntLattice& b);
IntLattice lattice_intersect(const IntLattice& a, const IntLattice& b);
mpz_class lattice_index(const IntLattice& l);
bool contains(const IntLattice& l, const IntVector& v);
bool is_subset(const IntLattice& a, const IntLattice& b);
/// Every row of `rows` lies in `l`.
bool rows_in(const IntMatrix& rows, const IntLattice& l);

/// {x : x * m in l}. Always of full rank for a full-rank target.
IntLattice preimage(const IntMatrix& m, const IntLattice& l);

/// Smallest t > 0 with t * u in l, for a nonzero vector u. Generates the
/// rank-one intersection of l with the line Z * u.
mpz_class line_multiplier(const IntLattice& l, const IntVector& u);

/// Coordinates of v in the basis of l, or an empty vector when v is not in l.
IntVector coordinates(const IntLattice& l, const IntVector& v);

} // namespace conductor
