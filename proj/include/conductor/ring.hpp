#pragma once

/*
 * Commutative rings of finite rank over Z with identity, given by
 * structure constants on a fixed Z-basis b_0..b_{n-1}, together with their
 * full-rank ideals and subrings, colon ideals and the brute-force
 * conductor test: I is an R-conductor ideal of S iff (R+I :_S S) = I.
 */

#include "conductor/lattice.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace conductor {

using Element = IntVector;

inline constexpr std::uint64_t kDefaultCosetBound = 1'000'000;

class RingTable {
public:
    /// table[i][j] holds the coordinates of b_i * b_j. Validates
    /// commutativity, associativity on all basis triples, and the identity.
    static RingTable make(const std::vector<std::vector<IntVector>>& table, IntVector one);

    std::size_t rank() const noexcept { return n_; }
    const Element& one() const noexcept { return one_; }
    Element basis_element(std::size_t i) const;
    const mpz_class& constant(std::size_t i, std::size_t j, std::size_t k) const
    {
        return c_[(i * n_ + j) * n_ + k];
    }

    Element multiply(const Element& x, const Element& y) const;
    /// Row i is b_i * g, so x * m == x * g for row vectors x.
    IntMatrix multiplication_matrix(const Element& g) const;
    IntLattice whole() const { return IntLattice::standard(n_); }

private:
    RingTable() = default;

    std::size_t n_ = 0;
    std::vector<mpz_class> c_;
    Element one_;
};

/// A full-rank ideal of S: b_i * v lies in the lattice for every ring basis
/// element b_i and every lattice basis vector v.
class Ideal {
public:
    /// Throws NotAnIdeal if the lattice is not closed under S.
    static Ideal from_lattice(const RingTable& ring, IntLattice lattice);
    static Ideal whole(const RingTable& ring);

    const IntLattice& lattice() const noexcept { return lattice_; }
    mpz_class index() const { return lattice_index(lattice_); }

    bool operator==(const Ideal& other) const = default;

private:
    explicit Ideal(IntLattice l) : lattice_(std::move(l)) {}

    IntLattice lattice_;
};

/// A subring containing the identity. Either a full-rank sublattice of S
/// or the rank-one prime subring Z*1.
class Subring {
public:
    static Subring integers(const RingTable& ring);
    /// Throws ClosureViolation unless the lattice contains 1 and is closed
    /// under multiplication.
    static Subring from_lattice(const RingTable& ring, IntLattice lattice);

    bool is_integers() const noexcept { return !lattice_.has_value(); }
    /// Throws RankDeficient for the prime subring.
    const IntLattice& lattice() const;
    /// Additive generators, one per row.
    const IntMatrix& generators() const noexcept { return gens_; }

    bool contains(const Element& x) const;
    /// The lattice R + l.
    IntLattice plus(const IntLattice& l) const;
    /// Additive generators of R ∩ l.
    IntMatrix meet(const IntLattice& l) const;
    /// |R / (R ∩ l)|.
    mpz_class quotient_order(const IntLattice& l) const;

    bool operator==(const Subring& other) const = default;

private:
    Subring() = default;

    std::optional<IntLattice> lattice_;
    IntMatrix gens_;
    Element one_;
};

Ideal ideal_from_generators(const RingTable& ring, std::span<const Element> gens);
Ideal ideal_product(const RingTable& ring, const Ideal& a, const Ideal& b);
Ideal ideal_sum(const RingTable& ring, const Ideal& a, const Ideal& b);
Ideal ideal_intersect(const RingTable& ring, const Ideal& a, const Ideal& b);
Ideal ideal_power(const RingTable& ring, const Ideal& a, unsigned k);

/// Additive span of all pairwise products of the rows of a and b.
IntLattice lattice_product(const RingTable& ring, const IntLattice& a, const IntLattice& b);

/// (X :_Y Z) = {x in Y : xZ ⊆ X}. Z is given by the rows of `z_gens`.
IntLattice colon(const RingTable& ring, const IntLattice& x, const IntLattice& y, const IntMatrix& z_gens);
IntLattice colon(const RingTable& ring, const IntLattice& x, const IntLattice& y, const IntLattice& z);
/// Additive generators of (X :_R Z) for a subring R.
IntMatrix colon_in(const RingTable& ring, const IntLattice& x, const Subring& r, const IntLattice& z);

/// R + I as a subring.
Subring adjoin(const RingTable& ring, const Subring& r, const Ideal& i);

/// (V :_S S). Throws RankDeficient when the conductor is {0}.
Ideal conductor_of(const RingTable& ring, const Subring& v);

struct ConductorCheck {
    bool is_conductor = false;
    /// V = R + I, the ring realizing I when is_conductor holds.
    Subring realizing;
    /// L = (R + I :_S S); always contains I.
    Ideal conductor;
    /// A basis vector of L outside I when !is_conductor.
    std::optional<Element> witness;
};

ConductorCheck is_conductor_bruteforce(const RingTable& ring, const Subring& r, const Ideal& i);

/// {0} is an R-conductor ideal iff (R :_S S) = {0}.
bool zero_ideal_is_conductor(const RingTable& ring, const Subring& r);

struct CyclicCheck {
    bool cyclic = false;
    /// x with R*x + I = S, when cyclic.
    std::optional<Element> generator;
};

/// Whether S/I is a cyclic R-module, by scanning all coset representatives.
/// Throws QuotientTooLarge when |S/I| exceeds coset_bound.
CyclicCheck is_cyclic_quotient(const RingTable& ring, const Subring& r, const Ideal& i,
                               std::uint64_t coset_bound = kDefaultCosetBound);

/// Representatives 0 <= x_j < d_j of Z^n / l, for the HNF diagonal d.
std::vector<IntVector> coset_representatives(const IntLattice& l, std::uint64_t bound = kDefaultCosetBound);

/// Visits every full-rank ideal of index <= max_index exactly once, ordered
/// by index and then lexicographically by basis.
void for_each_ideal(const RingTable& ring, std::uint64_t max_index,
                    const std::function<void(const Ideal&)>& visit);
std::vector<Ideal> enumerate_ideals(const RingTable& ring, std::uint64_t max_index);
std::vector<Ideal> enumerate_conductor_ideals(const RingTable& ring, const Subring& r,
                                              std::uint64_t max_index);

} // namespace conductor
