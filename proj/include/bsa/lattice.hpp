#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "bsa/arrangement.hpp"

namespace bsa {

/// Edge of the arrangement: an intersection of hyperplanes, stored with the
/// full set of hyperplanes containing it (its closure), so two edges are
/// equal iff their masks are equal.
struct Flat {
    std::uint64_t mask = 0; // bit i-1 set <=> hyperplane i contains the edge
    std::size_t codim = 0;
    Subspace space;
    Int mobius = 0; // mu(ambient, this)
    bool dense = false;

    std::size_t m() const { // number of hyperplanes containing the edge
        std::uint64_t x = mask;
        std::size_t c = 0;
        while (x) { x &= x - 1; ++c; }
        return c;
    }

    std::vector<std::size_t> containing() const { // 1-based, sorted
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < 64; ++i)
            if (mask >> i & 1) out.push_back(i + 1);
        return out;
    }
};

/// Root of unity exp(-2 pi i k/N) kept as the reduced residue k/N in (0,1].
/// Divisibility replaces every power test: lambda^m = 1 iff N | m.
struct UnityRoot {
    Int k = 1, N = 1;

    static UnityRoot from_residue(const Rat& alpha_mod_one) {
        Rat r = alpha_mod_one - Rat(floor_rat(alpha_mod_one));
        if (r == 0) return UnityRoot{1, 1};
        return UnityRoot{num(r), den(r)};
    }

    /// lambda = exp(-2 pi i alpha) for a root candidate alpha.
    static UnityRoot from_root(const Rat& alpha) { return from_residue(alpha); }

    Int order() const { return N; }
    bool is_one() const { return N == 1; }
    bool annihilates(std::size_t m) const { return Int(m) % N == 0; } // lambda^m = 1

    Rat residue() const { return Rat(k, N); }
};

class IntersectionLattice {
public:
    std::vector<Flat> flats; // sorted by (codim, lex on containing sets)

    const Arrangement& arrangement() const { return arr_; }
    std::size_t d() const { return arr_.d(); }

    static IntersectionLattice build(const Arrangement& arr);

    const Flat& ambient() const { return flats[0]; }

    int flat_by_mask(std::uint64_t mask) const {
        auto it = by_mask_.find(mask);
        return it == by_mask_.end() ? -1 : static_cast<int>(it->second);
    }

    /// Join of two flats: the edge L1 cap L2 (smallest flat whose closure
    /// contains both).
    std::size_t join(std::size_t i, std::size_t j) const;

    /// Whole-arrangement Poincare polynomial sum mu(X) (-t)^codim(X).
    std::vector<Int> poincare() const { return interval_poincare(full_mask()); }

    /// Poincare polynomial of the localization at the flat with the given
    /// mask: the interval below it carries exactly the sub-arrangement of
    /// hyperplanes through the edge.
    std::vector<Int> interval_poincare(std::uint64_t top_mask) const;

    std::uint64_t full_mask() const {
        return arr_.d() == 64 ? ~0ull : ((1ull << arr_.d()) - 1);
    }

private:
    Arrangement arr_;
    std::map<std::uint64_t, std::size_t> by_mask_;
};

namespace detail {

// Compare closures as sorted index sequences.
inline bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
    while (a && b) {
        std::uint64_t la = a & ~(a - 1), lb = b & ~(b - 1);
        if (la != lb) return la < lb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

// Exact division by (1+t); the dividend of a nonempty central arrangement
// always vanishes at t = -1.
inline std::vector<Int> divide_by_one_plus_t(const std::vector<Int>& p) {
    std::vector<Int> q(p.size() > 0 ? p.size() - 1 : 0, Int(0));
    Int carry = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        q[i] = p[i] - carry;
        carry = q[i];
    }
    check_internal(p.empty() || p.back() == carry, "polynomial not divisible by (1+t)");
    return q;
}

inline Int eval_at_minus_one(const std::vector<Int>& p) {
    Int v = 0;
    for (std::size_t i = 0; i < p.size(); ++i) v += (i % 2 ? -p[i] : p[i]);
    return v;
}

} // namespace detail

inline std::vector<Int> IntersectionLattice::interval_poincare(std::uint64_t top_mask) const {
    std::size_t maxc = 0;
    for (const auto& f : flats)
        if ((f.mask & ~top_mask) == 0) maxc = std::max(maxc, f.codim);
    std::vector<Int> p(maxc + 1, Int(0));
    for (const auto& f : flats)
        if ((f.mask & ~top_mask) == 0) p[f.codim] += (f.codim % 2 ? -f.mobius : f.mobius);
    return p;
}

inline std::size_t IntersectionLattice::join(std::size_t i, std::size_t j) const {
    std::uint64_t u = flats[i].mask | flats[j].mask;
    int best = -1;
    for (std::size_t t = 0; t < flats.size(); ++t) {
        if ((u & ~flats[t].mask) != 0) continue;
        if (best < 0 || flats[t].codim < flats[static_cast<std::size_t>(best)].codim) best = static_cast<int>(t);
    }
    check_internal(best >= 0, "lattice join not found");
    return static_cast<std::size_t>(best);
}

inline IntersectionLattice IntersectionLattice::build(const Arrangement& arr) {
    if (arr.d() > 64) fail(errc::input_error, "at most 64 hyperplanes supported");
    IntersectionLattice lat;
    lat.arr_ = arr;

    auto closure_mask = [&](const Subspace& s) {
        std::uint64_t m = 0;
        for (std::size_t i = 0; i < arr.d(); ++i) {
            bool vanishes = true;
            for (std::size_t r = 0; r < s.dim() && vanishes; ++r) {
                Rat acc = 0;
                for (std::size_t j = 0; j < arr.n; ++j) acc += arr.forms[i][j] * s.basis(r, j);
                if (acc != 0) vanishes = false;
            }
            if (vanishes) m |= 1ull << i;
        }
        return m;
    };

    std::map<std::uint64_t, Subspace> level, next;
    Subspace ambient = Subspace::full(arr.n);
    level[0] = ambient;
    lat.flats.push_back(Flat{0, 0, ambient, 1, false});

    while (!level.empty()) {
        next.clear();
        for (const auto& [mask, space] : level) {
            for (std::size_t i = 0; i < arr.d(); ++i) {
                if (mask >> i & 1) continue;
                // Intersect with hyperplane i: kernel of the form restricted
                // to the edge, mapped back to ambient coordinates.
                RatMatrix restr(1, space.dim());
                for (std::size_t r = 0; r < space.dim(); ++r) {
                    Rat acc = 0;
                    for (std::size_t j = 0; j < arr.n; ++j) acc += arr.forms[i][j] * space.basis(r, j);
                    restr(0, r) = acc;
                }
                RatMatrix ker = kernel_basis(restr); // (dim-1) x dim; empty at the origin
                Subspace sub = Subspace::span(arr.n, ker * space.basis);
                std::uint64_t cm = closure_mask(sub);
                next.emplace(cm, std::move(sub));
            }
        }
        for (const auto& [mask, space] : next)
            lat.flats.push_back(Flat{mask, arr.n - space.dim(), space, 0, false});
        level = next;
        if (!level.empty() && level.begin()->second.dim() == 0) break;
    }

    std::sort(lat.flats.begin(), lat.flats.end(), [](const Flat& a, const Flat& b) {
        if (a.codim != b.codim) return a.codim < b.codim;
        return detail::mask_lex_less(a.mask, b.mask);
    });
    for (std::size_t i = 0; i < lat.flats.size(); ++i) lat.by_mask_[lat.flats[i].mask] = i;

    // Mobius values by the defining recursion from the bottom.
    for (std::size_t i = 1; i < lat.flats.size(); ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < i; ++j)
            if ((lat.flats[j].mask & ~lat.flats[i].mask) == 0 && lat.flats[j].mask != lat.flats[i].mask)
                acc += lat.flats[j].mobius;
        lat.flats[i].mobius = -acc;
    }

    // Dense edges: nonvanishing Euler characteristic of the localized
    // complement, computed on the interval below the edge.
    for (auto& f : lat.flats) {
        if (f.codim == 0) continue;
        auto pi = lat.interval_poincare(f.mask);
        f.dense = detail::eval_at_minus_one(detail::divide_by_one_plus_t(pi)) != 0;
    }
    return lat;
}

/// Betti numbers of the projective complement U.
inline std::vector<Int> betti_of_U(const IntersectionLattice& lat) {
    return detail::divide_by_one_plus_t(lat.poincare());
}

/// Euler characteristic of U = P^{n-1} minus the projective arrangement.
inline Int euler_complement(const IntersectionLattice& lat) {
    return detail::eval_at_minus_one(betti_of_U(lat));
}

inline Int euler_complement(const Arrangement& arr) {
    return euler_complement(IntersectionLattice::build(arr));
}

/// chi(U) != 0 is equivalent to indecomposability of the (essentialized)
/// arrangement.
inline bool is_indecomposable(const IntersectionLattice& lat) { return euler_complement(lat) != 0; }
inline bool is_indecomposable(const Arrangement& arr) { return euler_complement(arr) != 0; }

/// Dense edges with multiplicity divisible by the order of lambda.
inline std::vector<std::size_t> de_lambda(const IntersectionLattice& lat, const UnityRoot& lambda) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < lat.flats.size(); ++i)
        if (lat.flats[i].dense && lambda.annihilates(lat.flats[i].m())) out.push_back(i);
    return out;
}

namespace detail {

// Exact maximum clique, branch and bound with degree ordering. The graphs
// here have well under a hundred vertices.
class MaxClique {
public:
    explicit MaxClique(const std::vector<std::vector<bool>>& adj) : adj_(adj) {}

    std::size_t run() {
        std::size_t n = adj_.size();
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return degree(a) > degree(b);
        });
        best_ = 0;
        extend({}, order);
        return best_;
    }

private:
    std::size_t degree(std::size_t v) const {
        std::size_t c = 0;
        for (bool b : adj_[v]) c += b;
        return c;
    }

    void extend(std::vector<std::size_t> clique, std::vector<std::size_t> cand) {
        if (clique.size() > best_) best_ = clique.size();
        while (!cand.empty()) {
            if (clique.size() + cand.size() <= best_) return;
            std::size_t v = cand.front();
            cand.erase(cand.begin());
            std::vector<std::size_t> nc;
            for (std::size_t u : cand)
                if (adj_[v][u]) nc.push_back(u);
            clique.push_back(v);
            extend(clique, nc);
            clique.pop_back();
        }
    }

    const std::vector<std::vector<bool>>& adj_;
    std::size_t best_ = 0;
};

} // namespace detail

/// Strong adjacency on dense lambda-edges: nested edges, or edges whose
/// join is a nondense edge.
inline bool strongly_adjacent(const IntersectionLattice& lat, std::size_t i, std::size_t j) {
    const Flat& a = lat.flats[i];
    const Flat& b = lat.flats[j];
    if ((a.mask & ~b.mask) == 0 || (b.mask & ~a.mask) == 0) return true;
    return !lat.flats[lat.join(i, j)].dense;
}

/// m(lambda): maximum size of a pairwise strongly adjacent subset of the
/// dense lambda-edges.
inline std::size_t m_of_lambda(const IntersectionLattice& lat, const UnityRoot& lambda) {
    auto verts = de_lambda(lat, lambda);
    std::size_t n = verts.size();
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            adj[i][j] = adj[j][i] = strongly_adjacent(lat, verts[i], verts[j]);
    return detail::MaxClique(adj).run();
}

inline std::size_t m_of_lambda(const Arrangement& arr, const UnityRoot& lambda) {
    return m_of_lambda(IntersectionLattice::build(arr), lambda);
}

/// Counts of i-fold points of the projective line arrangement (n = 3):
/// nu[i] over all of Z, nu_prime[i] over points off the pivot line.
struct PointMultiplicities {
    std::map<std::size_t, std::size_t> nu;
    std::map<std::size_t, std::size_t> nu_prime;

    std::size_t count(std::size_t i) const {
        auto it = nu.find(i);
        return it == nu.end() ? 0 : it->second;
    }
    std::size_t count_prime(std::size_t i) const {
        auto it = nu_prime.find(i);
        return it == nu_prime.end() ? 0 : it->second;
    }
    std::size_t max_multiplicity() const { return nu.empty() ? 0 : nu.rbegin()->first; }
};

inline PointMultiplicities point_multiplicities(const IntersectionLattice& lat, std::size_t pivot) {
    const Arrangement& arr = lat.arrangement();
    if (arr.n != 3) fail(errc::wrong_dimension, "point multiplicities need a rank-3 arrangement");
    if (pivot < 1 || pivot > arr.d()) fail(errc::input_error, "pivot index out of range");
    PointMultiplicities pm;
    for (const auto& f : lat.flats) {
        if (f.codim != 2) continue;
        std::size_t m = f.m();
        pm.nu[m]++;
        if (!(f.mask >> (pivot - 1) & 1)) pm.nu_prime[m]++;
    }
    return pm;
}

/// Transversal slice at an edge: the hyperplanes through the edge, viewed in
/// the quotient by the edge. A central arrangement of m(edge) hyperplanes in
/// codim(edge) variables.
inline Arrangement slice_at_edge(const Arrangement& arr, const Flat& edge) {
    check_internal(edge.codim >= 1 && edge.space.dim() >= 1, "slice needs a proper nonzero edge");
    Arrangement local;
    local.n = arr.n;
    for (std::size_t i = 0; i < arr.d(); ++i)
        if (edge.mask >> i & 1) local.forms.push_back(arr.forms[i]);
    local.name = arr.name.empty() ? "" : arr.name + ":slice";
    Arrangement ess = essentialize(local);
    check_internal(ess.n == edge.codim, "slice rank must equal edge codimension");
    return ess;
}

} // namespace bsa
