#include "conductor/errors.hpp"
#include "conductor/lattice.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace conductor;

namespace {

std::set<oracle::Vec> box_points(const IntLattice& l, long r)
{
    std::set<oracle::Vec> out;
    for (long x = -r; x <= r; ++x)
        for (long y = -r; y <= r; ++y)
            if (contains(l, make_vector({x, y}))) out.insert({x, y});
    return out;
}

IntMatrix random_full_rank(std::mt19937_64& rng, std::size_t n, long bound)
{
    std::uniform_int_distribution<long> dist(-bound, bound);
    for (;;) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = dist(rng);
        if (echelon_hnf(m).rows() == n) return m;
    }
}

// Random unimodular row operations: swaps, sign flips, row additions.
IntMatrix scramble(IntMatrix m, std::mt19937_64& rng)
{
    std::size_t const n = m.rows();
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<long> coef(-3, 3);
    for (int step = 0; step < 12; ++step) {
        std::size_t a = pick(rng), b = pick(rng);
        if (a == b) {
            for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
            continue;
        }
        mpz_class c = coef(rng);
        for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) += c * m(b, j);
        if (step % 5 == 0)
            for (std::size_t j = 0; j < m.cols(); ++j) swap(m(a, j), m(b, j));
    }
    return m;
}

} // namespace

TEST(Hnf, IdentityIsFixed)
{
    IntLattice l = hnf(IntMatrix::identity(2), 2);
    EXPECT_EQ(l.basis(), IntMatrix::identity(2));
}

TEST(Hnf, SpanOfTwoZeroAndOneOne)
{
    IntLattice l = hnf(IntMatrix{{2, 0}, {1, 1}}, 2);
    EXPECT_EQ(l.basis(), (IntMatrix{{1, 1}, {0, 2}}));
    auto model = oracle::Lattice2::from_basis({2, 0}, {1, 1});
    EXPECT_EQ(box_points(l, 6), model.in_box(6));
}

TEST(Hnf, PermutedDiagonal)
{
    EXPECT_EQ(hnf(IntMatrix{{0, 3}, {3, 0}}, 2).basis(), (IntMatrix{{3, 0}, {0, 3}}));
}

TEST(Hnf, Idempotent)
{
    IntLattice l = hnf(IntMatrix{{4, 6}, {2, 9}, {-8, 3}}, 2);
    EXPECT_EQ(hnf(l.basis(), 2), l);
}

TEST(Hnf, RankDeficientAndMismatch)
{
    try {
        hnf(IntMatrix{{1, 2}, {2, 4}}, 2);
        FAIL() << "expected RankDeficient";
    } catch (Error const& e) {
        EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
    }
    try {
        hnf(IntMatrix{{1, 2, 3}}, 2);
        FAIL() << "expected RankMismatch";
    } catch (Error const& e) {
        EXPECT_EQ(e.code(), ErrorCode::RankMismatch);
    }
}

TEST(Hnf, LargeEntriesStayExact)
{
    mpz_class big("123456789012345678901234567890");
    IntMatrix m(2, 2);
    m(0, 0) = big;
    m(0, 1) = 1;
    m(1, 0) = big + 1;
    m(1, 1) = 1;
    IntLattice l = hnf(m, 2);
    // determinant is -1
    EXPECT_EQ(lattice_index(l), 1);
}

TEST(LatticeSum, Examples)
{
    IntLattice a = hnf(IntMatrix{{1, 1}, {0, 2}}, 2);
    IntLattice b = hnf(IntMatrix{{2, 0}, {0, 1}}, 2);
    EXPECT_EQ(lattice_sum(a, a), a);
    IntLattice s = lattice_sum(a, b);
    EXPECT_EQ(s, IntLattice::standard(2));
    auto model = oracle::sum(oracle::Lattice2::from_basis({1, 1}, {0, 2}), oracle::Lattice2::from_basis({2, 0}, {0, 1}));
    EXPECT_EQ(box_points(s, 6), model.in_box(6));
    EXPECT_EQ(lattice_sum(a, IntLattice::standard(2)), IntLattice::standard(2));
}

TEST(LatticeIntersect, Examples)
{
    IntLattice three = IntLattice::scaled(2, 3);
    IntLattice parity = hnf(IntMatrix{{1, 1}, {0, 2}}, 2);
    IntLattice both = lattice_intersect(three, parity);
    EXPECT_EQ(both.basis(), (IntMatrix{{3, 3}, {0, 6}}));
    auto m3 = oracle::Lattice2::from_basis({3, 0}, {0, 3});
    auto mp = oracle::Lattice2::from_basis({1, 1}, {0, 2});
    std::set<oracle::Vec> expected;
    for (auto const& v : m3.in_box(6))
        if (mp.contains(v)) expected.insert(v);
    EXPECT_EQ(box_points(both, 6), expected);
    EXPECT_EQ(lattice_intersect(parity, parity), parity);
    EXPECT_EQ(lattice_intersect(parity, IntLattice::standard(2)), parity);
}

TEST(LatticeIntersect, RankMismatch)
{
    EXPECT_THROW(lattice_intersect(IntLattice::standard(2), IntLattice::standard(3)), Error);
    EXPECT_THROW(lattice_sum(IntLattice::standard(2), IntLattice::standard(3)), Error);
}

TEST(LatticeIndex, Examples)
{
    EXPECT_EQ(lattice_index(IntLattice::standard(2)), 1);
    EXPECT_EQ(lattice_index(hnf(IntMatrix{{1, 1}, {0, 2}}, 2)), 2);
    EXPECT_EQ(oracle::Lattice2::from_basis({1, 1}, {0, 2}).index(), 2);
    EXPECT_EQ(lattice_index(hnf(IntMatrix{{3, 3}, {0, 6}}, 2)), 18);
    EXPECT_EQ(oracle::Lattice2::from_basis({3, 3}, {0, 6}).index(), 18);
}

TEST(Contains, Examples)
{
    IntLattice l = hnf(IntMatrix{{1, 1}, {0, 2}}, 2);
    EXPECT_TRUE(contains(l, make_vector({1, 1})));
    EXPECT_FALSE(contains(l, make_vector({1, 0})));
    EXPECT_FALSE(oracle::Lattice2::from_basis({1, 1}, {0, 2}).contains({1, 0}));
    EXPECT_TRUE(is_subset(l, l));
    EXPECT_THROW(contains(l, make_vector({1, 0, 0})), Error);
}

TEST(Preimage, Examples)
{
    IntLattice l = hnf(IntMatrix{{1, 1}, {0, 2}}, 2);
    EXPECT_EQ(preimage(IntMatrix::identity(2), l), l);
    EXPECT_EQ(preimage(IntMatrix{{3, 1}, {5, -2}}, IntLattice::standard(2)), IntLattice::standard(2));
    IntLattice doubled = preimage(IntMatrix{{2, 0}, {0, 2}}, l);
    EXPECT_EQ(doubled, IntLattice::standard(2));
    // oracle: every box point x has 2x in l
    auto model = oracle::Lattice2::from_basis({1, 1}, {0, 2});
    for (long x = -6; x <= 6; ++x)
        for (long y = -6; y <= 6; ++y) EXPECT_TRUE(model.contains({2 * x, 2 * y}));
}

TEST(Preimage, ProjectionKernel)
{
    // x -> (x0, 0): preimage of 5Z x Z is 5Z x Z
    IntLattice l = hnf(IntMatrix{{5, 0}, {0, 1}}, 2);
    EXPECT_EQ(preimage(IntMatrix{{1, 0}, {0, 0}}, l), l);
}

TEST(LineMultiplier, Examples)
{
    IntLattice l = hnf(IntMatrix{{3, 3}, {0, 6}}, 2);
    EXPECT_EQ(line_multiplier(l, make_vector({1, 0})), 6);
    EXPECT_EQ(line_multiplier(l, make_vector({1, 1})), 3);
    EXPECT_THROW(line_multiplier(l, make_vector({0, 0})), Error);
}

// Properties

TEST(LatticeProperties, HnfIsCanonicalUnderUnimodularRowOps)
{
    std::mt19937_64 rng(20261016);
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int trial = 0; trial < 100; ++trial) {
            IntMatrix m = random_full_rank(rng, n, 9);
            IntLattice a = hnf(m, n);
            IntLattice b = hnf(scramble(m, rng), n);
            ASSERT_EQ(a, b) << "n=" << n << " trial " << trial;
            // shape invariants
            for (std::size_t j = 0; j < n; ++j) {
                ASSERT_GT(a.basis()(j, j), 0);
                for (std::size_t i = 0; i < j; ++i) {
                    ASSERT_GE(a.basis()(i, j), 0);
                    ASSERT_LT(a.basis()(i, j), a.basis()(j, j));
                }
                for (std::size_t i = j + 1; i < n; ++i) ASSERT_EQ(a.basis()(i, j), 0);
            }
        }
    }
}

TEST(LatticeProperties, IndexOfSumTimesIndexOfIntersection)
{
    std::mt19937_64 rng(7);
    for (std::size_t n : {2u, 3u}) {
        for (int trial = 0; trial < 150; ++trial) {
            IntLattice a = hnf(random_full_rank(rng, n, 7), n);
            IntLattice b = hnf(random_full_rank(rng, n, 7), n);
            ASSERT_EQ(lattice_index(lattice_intersect(a, b)) * lattice_index(lattice_sum(a, b)),
                      lattice_index(a) * lattice_index(b));
            ASSERT_EQ(lattice_sum(a, b), lattice_sum(b, a));
            ASSERT_EQ(lattice_intersect(a, b), lattice_intersect(b, a));
            ASSERT_TRUE(is_subset(lattice_intersect(a, b), a));
            ASSERT_TRUE(is_subset(a, lattice_sum(a, b)));
        }
    }
}

TEST(LatticeProperties, MutualContainmentIsEquality)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        IntLattice a = hnf(random_full_rank(rng, 2, 4), 2);
        IntLattice b = hnf(random_full_rank(rng, 2, 4), 2);
        ASSERT_EQ(is_subset(a, b) && is_subset(b, a), a == b);
    }
}

TEST(LatticeProperties, PreimageContainsInvariantLattice)
{
    std::mt19937_64 rng(13);
    int hits = 0;
    for (int trial = 0; trial < 400; ++trial) {
        IntLattice l = hnf(random_full_rank(rng, 2, 5), 2);
        IntMatrix m = random_full_rank(rng, 2, 3);
        bool maps_into = true;
        for (std::size_t i = 0; i < 2; ++i) maps_into = maps_into && contains(l, mul(l.row(i), m));
        IntLattice pre = preimage(m, l);
        // membership agrees pointwise on a box
        for (long x = -4; x <= 4; ++x)
            for (long y = -4; y <= 4; ++y) {
                IntVector v = make_vector({x, y});
                ASSERT_EQ(contains(pre, v), contains(l, mul(v, m)));
            }
        if (maps_into) {
            ++hits;
            ASSERT_TRUE(is_subset(l, pre));
        }
    }
    EXPECT_GT(hits, 10);
}

TEST(LatticeProperties, IntersectionMatchesModel)
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> d(-4, 4);
    for (int trial = 0; trial < 60; ++trial) {
        oracle::Vec a1{d(rng), d(rng)}, a2{d(rng), d(rng)}, b1{d(rng), d(rng)}, b2{d(rng), d(rng)};
        if (a1.first * a2.second == a1.second * a2.first || b1.first * b2.second == b1.second * b2.first) continue;
        IntLattice a = hnf(IntMatrix{{a1.first, a1.second}, {a2.first, a2.second}}, 2);
        IntLattice b = hnf(IntMatrix{{b1.first, b1.second}, {b2.first, b2.second}}, 2);
        auto ma = oracle::Lattice2::from_basis(a1, a2);
        auto mb = oracle::Lattice2::from_basis(b1, b2);
        std::set<oracle::Vec> expected;
        for (auto const& v : ma.in_box(8))
            if (mb.contains(v)) expected.insert(v);
        ASSERT_EQ(box_points(lattice_intersect(a, b), 8), expected);
        ASSERT_EQ(box_points(lattice_sum(a, b), 8), oracle::sum(ma, mb).in_box(8));
    }
}
