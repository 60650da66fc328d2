#pragma once

// Test-only oracles. Nothing here calls into the HNF, colon or factorization
// code; lattices are modelled as finite subgroups of (Z/d)^2 and ring
// elements are multiplied directly from w^2 = t*w - n.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::pair<long, long>;

inline long mod(long a, long d)
{
    long r = a % d;
    return r < 0 ? r + d : r;
}

/// A rank-2 lattice containing d*Z^2, stored as its image in (Z/d)^2.
class Lattice2 {
public:
    Lattice2(std::vector<Vec> gens, long d) : d_(d)
    {
        // subgroup closure by breadth-first search
        std::vector<Vec> frontier{{0, 0}};
        points_.insert({0, 0});
        while (!frontier.empty()) {
            Vec v = frontier.back();
            frontier.pop_back();
            for (auto const& g : gens) {
                Vec w{mod(v.first + g.first, d), mod(v.second + g.second, d)};
                if (points_.insert(w).second) frontier.push_back(w);
            }
        }
    }

    /// Lattice spanned by two independent rows; d = |det|.
    static Lattice2 from_basis(Vec a, Vec b)
    {
        long det = std::labs(a.first * b.second - a.second * b.first);
        return Lattice2({a, b}, det);
    }

    long modulus() const { return d_; }
    bool contains(Vec v) const { return points_.count({mod(v.first, d_), mod(v.second, d_)}) > 0; }
    long index() const { return d_ * d_ / static_cast<long>(points_.size()); }
    std::set<Vec> const& residues() const { return points_; }

    /// Re-expressed modulo a multiple of the current modulus.
    Lattice2 lifted(long d) const
    {
        std::vector<Vec> g(points_.begin(), points_.end());
        g.push_back({d_, 0});
        g.push_back({0, d_});
        return Lattice2(g, d);
    }

    std::set<Vec> in_box(long r) const
    {
        std::set<Vec> out;
        for (long x = -r; x <= r; ++x)
            for (long y = -r; y <= r; ++y)
                if (contains({x, y})) out.insert({x, y});
        return out;
    }

private:
    long d_;
    std::set<Vec> points_;
};

/// gcd(da, db) * Z^2 already lies in a + b, so the sum lives modulo the gcd.
inline Lattice2 sum(const Lattice2& a, const Lattice2& b)
{
    long d = std::gcd(a.modulus(), b.modulus());
    std::vector<Vec> g(a.residues().begin(), a.residues().end());
    g.insert(g.end(), b.residues().begin(), b.residues().end());
    return Lattice2(g, d);
}

/// Quadratic ring arithmetic on (a, b) = a + b*w with w^2 = t*w - n.
struct QuadArith {
    long t;
    long n;

    Vec mul(Vec x, Vec y) const
    {
        long ac = x.first * y.first;
        long bd = x.second * y.second;
        return {ac - bd * n, x.first * y.second + x.second * y.first + bd * t};
    }
};

inline QuadArith arith_for(long d)
{
    if (mod(d, 4) == 1) return {1, (1 - d) / 4};
    return {0, -d};
}

/// R + I is a subring; x lies in (R + I :_S S) iff x and x*w lie in R + I.
/// I is an R-conductor ideal iff no coset x + I outside I has that property.
inline bool is_conductor_by_cosets(const QuadArith& q, const Lattice2& r_plus_i, const Lattice2& i)
{
    long d = i.modulus();
    for (long a = 0; a < d; ++a)
        for (long b = 0; b < d; ++b) {
            if (i.contains({a, b})) continue;
            if (r_plus_i.contains({a, b}) && r_plus_i.contains(q.mul({a, b}, {0, 1}))) return false;
        }
    return true;
}

/// Number of roots of x^2 - t x + n modulo p, by trying every residue.
inline int root_count(const QuadArith& q, long p)
{
    int c = 0;
    for (long x = 0; x < p; ++x)
        if (mod(x * x - q.t * x + q.n, p) == 0) ++c;
    return c;
}

inline bool has_double_root(const QuadArith& q, long p)
{
    for (long x = 0; x < p; ++x)
        if (mod(x * x - q.t * x + q.n, p) == 0 && mod(2 * x - q.t, p) == 0) return true;
    return false;
}

/// Number of ideals of norm m in the maximal order, from local root counts.
inline long ideals_of_norm(const QuadArith& q, long m)
{
    long total = 1;
    for (long p = 2; m > 1; ++p) {
        int a = 0;
        while (m % p == 0) {
            m /= p;
            ++a;
        }
        if (a == 0) continue;
        if (has_double_root(q, p)) total *= 1;
        else if (root_count(q, p) == 2) total *= a + 1;
        else total *= (a % 2 == 0) ? 1 : 0;
    }
    return total;
}

/// The finite ring R/N for R, N given as lattice models with N ⊆ R and a
/// common modulus d with d*Z^2 ⊆ N. Elements are canonical coset reps.
class FiniteQuotient {
public:
    FiniteQuotient(const QuadArith& q, const Lattice2& r, const Lattice2& n) : q_(q), n_(n)
    {
        long d = n.modulus();
        for (long a = 0; a < d; ++a)
            for (long b = 0; b < d; ++b)
                if (r.contains({a, b})) {
                    Vec c = canon({a, b});
                    if (std::find(elems_.begin(), elems_.end(), c) == elems_.end()) elems_.push_back(c);
                }
    }

    std::size_t size() const { return elems_.size(); }

    Vec canon(Vec v) const
    {
        long d = n_.modulus();
        Vec best{d, d};
        for (auto const& p : n_.residues()) {
            Vec w{mod(v.first + p.first, d), mod(v.second + p.second, d)};
            best = std::min(best, w);
        }
        return best;
    }

    /// All ideals of R/N, as sorted sets of element indices.
    std::vector<std::set<std::size_t>> ideals() const
    {
        std::size_t const k = elems_.size();
        std::vector<std::set<std::size_t>> out;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            std::set<Vec> s;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1) s.insert(elems_[i]);
            if (!s.count(canon({0, 0}))) continue;
            bool ok = true;
            for (auto const& x : s) {
                for (auto const& y : s)
                    if (!s.count(canon({x.first + y.first, x.second + y.second}))) ok = false;
                for (auto const& a : elems_)
                    if (!s.count(canon(q_.mul(a, x)))) ok = false;
                if (!ok) break;
            }
            if (!ok) continue;
            std::set<std::size_t> idx;
            for (std::size_t i = 0; i < k; ++i)
                if (s.count(elems_[i])) idx.insert(i);
            out.push_back(idx);
        }
        return out;
    }

    /// The ideal A*x generated by one element.
    std::set<std::size_t> principal(std::size_t xi) const
    {
        std::set<Vec> s;
        for (auto const& a : elems_) s.insert(canon(q_.mul(a, elems_[xi])));
        std::set<std::size_t> idx;
        for (std::size_t i = 0; i < elems_.size(); ++i)
            if (s.count(elems_[i])) idx.insert(i);
        return idx;
    }

    bool every_ideal_principal() const
    {
        for (auto const& ideal : ideals()) {
            bool principal_found = false;
            for (std::size_t x : ideal)
                if (principal(x) == ideal) principal_found = true;
            if (!principal_found) return false;
        }
        return true;
    }

private:
    QuadArith q_;
    Lattice2 n_;
    std::vector<Vec> elems_;
};

} // namespace oracle
