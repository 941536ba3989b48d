#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "bsa/aomoto.hpp"

namespace bsa {

/// A choice of k and an index set I of size k-1 (avoiding the pivot), with
/// the induced weights: 1 - k/d on I and the pivot, -k/d elsewhere. These
/// sum to zero and have residue class -k/d throughout.
struct WeightChoice {
    Int k;
    std::vector<std::size_t> I; // sorted 1-based original indices
    std::size_t pivot = 0;
    WeightVector alpha;

    bool in_I(std::size_t orig) const {
        return std::binary_search(I.begin(), I.end(), orig);
    }
};

inline WeightChoice weights_for_I(std::size_t d, Int k, std::vector<std::size_t> I,
                                  std::size_t pivot) {
    if (k < 1 || k > Int(d)) fail(errc::bad_cardinality, "k must lie in [1, d]");
    if (Int(I.size()) != k - 1)
        fail(errc::bad_cardinality, "index set must have k-1 elements, got " + std::to_string(I.size()));
    std::sort(I.begin(), I.end());
    for (std::size_t i = 0; i < I.size(); ++i) {
        if (I[i] < 1 || I[i] > d || I[i] == pivot)
            fail(errc::bad_cardinality, "index set must avoid the pivot and stay in [1, d]");
        if (i && I[i] == I[i - 1]) fail(errc::bad_cardinality, "index set has a repeat");
    }
    WeightChoice ch;
    ch.k = k;
    ch.I = std::move(I);
    ch.pivot = pivot;
    Rat lo = -Rat(k, Int(d)), hi = lo + 1;
    ch.alpha.alpha.assign(d, lo);
    ch.alpha.alpha[pivot - 1] = hi;
    for (auto i : ch.I) ch.alpha.alpha[i - 1] = hi;
    check_internal(ch.alpha.sum() == 0, "weight choice does not sum to zero");
    return ch;
}

struct VIResult {
    std::size_t dim_VIprime = 0;
    std::size_t dim_VI = 0;
    std::size_t dim_Htop = 0;         // dim H^{n-1} of the complex at these weights
    std::size_t dim_dA1_cap_VIprime = 0; // exact defect dim V(I)' - dim V(I)
    bool certified_equality = false;  // lemma45 equality case verified
};

/// dim V(I)' inside the top graded piece and dim of its image in the top
/// cohomology, both by exact rank computation.
inline VIResult compute_VI(const AomotoAlgebra& A, const IntersectionLattice& lat,
                           const WeightChoice& ch) {
    if (!resonance_check(lat, ch.alpha).ok)
        fail(errc::resonant_weights, "weight choice violates the resonance condition");
    std::size_t top = A.top_degree();
    std::size_t dt = A.dims[top];

    std::vector<std::size_t> aff_positions;
    for (std::size_t t = 0; t < A.orig_index.size(); ++t)
        if (ch.in_I(A.orig_index[t])) aff_positions.push_back(t);

    RatMatrix vrows(0, dt);
    if (aff_positions.size() >= top) {
        for (const auto& sub : detail::subsets_of_size(aff_positions.size(), top)) {
            std::uint64_t mask = 0;
            for (auto q : sub) mask |= 1ull << aff_positions[q];
            vrows.append_row(A.coords(top, mask));
        }
    }
    VIResult r;
    r.dim_VIprime = rank(vrows);

    RatMatrix D = A.differential(top - 1, ch.alpha); // dt x dims[top-1]
    RatMatrix dtr = D.transpose();
    std::size_t rkD = rank(dtr);
    RatMatrix all = dtr;
    for (std::size_t i = 0; i < vrows.rows(); ++i) all.append_row(vrows.row(i));
    std::size_t rk_all = rank(all);
    r.dim_VI = rk_all - rkD;
    r.dim_Htop = dt - rkD;
    r.dim_dA1_cap_VIprime = r.dim_VIprime + rkD - rk_all;
    return r;
}

enum class ComponentKind { good, bad, neither };

struct ConnectivityReport {
    std::vector<std::vector<std::size_t>> components; // original indices, sorted
    std::vector<ComponentKind> kind;
    std::size_t c = 0; // number of good components
};

namespace detail {

struct AffinePoint {
    Rat x, y;
    bool operator<(const AffinePoint& o) const { return x < o.x || (x == o.x && y < o.y); }
    bool operator==(const AffinePoint& o) const { return x == o.x && y == o.y; }
};

inline std::optional<AffinePoint> line_intersection(const AffineForm& a, const AffineForm& b) {
    Rat dt = a.lin[0] * b.lin[1] - a.lin[1] * b.lin[0];
    if (dt == 0) return std::nullopt; // parallel
    Rat x = (-a.c * b.lin[1] + b.c * a.lin[1]) / dt;
    Rat y = (-a.lin[0] * b.c + b.lin[0] * a.c) / dt;
    return AffinePoint{x, y};
}

inline bool on_line(const AffineForm& g, const AffinePoint& z) {
    return g.lin[0] * z.x + g.lin[1] * z.y + g.c == 0;
}

} // namespace detail

/// Connected components of I through intersection points absorbed by the
/// complementary lines, classified by how the component meets those lines:
/// good components show no smooth point of their own union there, bad ones
/// show at least two.
inline ConnectivityReport connectivity(const AomotoAlgebra& A, const IntersectionLattice& lat,
                                       const WeightChoice& ch) {
    const Arrangement& ess = lat.arrangement();
    if (ess.n != 3) fail(errc::wrong_dimension, "connectivity analysis needs a rank-3 arrangement");
    if (A.nvars != 2) fail(errc::wrong_dimension, "connectivity analysis needs an affine line arrangement");

    std::vector<std::size_t> ipos, cpos; // affine positions in I and I^c
    for (std::size_t t = 0; t < A.orig_index.size(); ++t)
        (ch.in_I(A.orig_index[t]) ? ipos : cpos).push_back(t);

    auto form = [&](std::size_t t) -> const AffineForm& { return A.aff.forms[t]; };
    auto on_complement = [&](const detail::AffinePoint& z) {
        for (auto j : cpos)
            if (detail::on_line(form(j), z)) return true;
        return false;
    };

    // Union-find over I positions by strong connectivity.
    std::map<std::size_t, std::size_t> parent;
    for (auto i : ipos) parent[i] = i;
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (std::size_t a = 0; a < ipos.size(); ++a)
        for (std::size_t b = a + 1; b < ipos.size(); ++b) {
            auto z = detail::line_intersection(form(ipos[a]), form(ipos[b]));
            if (z && on_complement(*z)) parent[find(ipos[a])] = find(ipos[b]);
        }

    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (auto i : ipos) comps[find(i)].push_back(i);

    ConnectivityReport rep;
    for (auto& [root, members] : comps) {
        std::set<detail::AffinePoint> pts;
        for (auto i : members)
            for (auto j : cpos)
                if (auto z = detail::line_intersection(form(i), form(j))) pts.insert(*z);
        std::size_t smooth = 0;
        for (const auto& z : pts) {
            std::size_t mult = 0;
            for (auto i : members)
                if (detail::on_line(form(i), z)) ++mult;
            if (mult == 1) ++smooth;
        }
        std::vector<std::size_t> orig;
        for (auto i : members) orig.push_back(A.orig_index[i]);
        std::sort(orig.begin(), orig.end());
        rep.components.push_back(orig);
        rep.kind.push_back(smooth == 0 ? ComponentKind::good
                                       : (smooth >= 2 ? ComponentKind::bad : ComponentKind::neither));
    }
    // deterministic order: by smallest member
    std::vector<std::size_t> perm(rep.components.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return rep.components[a] < rep.components[b];
    });
    ConnectivityReport sorted;
    for (auto i : perm) {
        sorted.components.push_back(rep.components[i]);
        sorted.kind.push_back(rep.kind[i]);
    }
    for (auto k : sorted.kind)
        if (k == ComponentKind::good) ++sorted.c;
    return sorted;
}

namespace detail {

// All affine triple points as index triples (original indices).
inline std::vector<std::vector<std::size_t>> affine_triples(const IntersectionLattice& lat,
                                                            std::size_t pivot) {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& f : lat.flats) {
        if (f.codim != 2 || f.m() != 3) continue;
        if (f.mask >> (pivot - 1) & 1) continue;
        out.push_back(f.containing());
    }
    return out;
}

inline std::size_t max_point_multiplicity(const IntersectionLattice& lat) {
    std::size_t m = 0;
    for (const auto& f : lat.flats)
        if (f.codim == 2) m = std::max(m, f.m());
    return m;
}

} // namespace detail

struct Lemma45Result {
    std::size_t c = 0;
    bool equality_certified = false;
    ConnectivityReport connect;
};

/// Upper bound c on dim(dA^1 cap V(I)'), so dim V(I) >= dim V(I)' - c.
/// The bound and, when certified, the equality are checked against the
/// exact ranks on every call.
inline Lemma45Result lemma45_bound(const AomotoAlgebra& A, const IntersectionLattice& lat,
                                   const WeightChoice& ch, const VIResult& vi) {
    const Arrangement& ess = lat.arrangement();
    if (ess.n != 3) fail(errc::wrong_dimension, "bound applies to rank-3 arrangements");
    if (detail::max_point_multiplicity(lat) > 3)
        fail(errc::hypothesis_failed, "a point of multiplicity above 3 is out of scope here");
    auto triples = detail::affine_triples(lat, ch.pivot);
    auto asum = [&](const std::vector<std::size_t>& t) {
        return ch.alpha.alpha[t[0] - 1] + ch.alpha.alpha[t[1] - 1] + ch.alpha.alpha[t[2] - 1];
    };
    // Triple with two complement lines meeting on an I-line must carry a
    // nonzero weight sum.
    for (const auto& t : triples) {
        std::size_t in_i = 0;
        for (auto x : t) in_i += ch.in_I(x);
        if (in_i == 1 && asum(t) == 0)
            fail(errc::hypothesis_failed,
                 "weight sum vanishes on triple point {" + std::to_string(t[0]) + "," +
                     std::to_string(t[1]) + "," + std::to_string(t[2]) + "} with one line in I");
    }

    Lemma45Result r;
    r.connect = connectivity(A, lat, ch);
    r.c = r.connect.c;
    check_internal(vi.dim_dA1_cap_VIprime <= r.c, "defect bound violated");

    // Equality case: vanishing H^1 eigenspace plus the second weight
    // condition over good components.
    auto rep = aomoto_cohomology(A, lat, ch.alpha);
    bool h1_zero = rep.dims.size() > 1 && rep.dims[1] == 0;
    bool second_ok = true;
    if (h1_zero) {
        std::map<std::size_t, std::size_t> comp_of;
        for (std::size_t ci = 0; ci < r.connect.components.size(); ++ci)
            if (r.connect.kind[ci] == ComponentKind::good)
                for (auto member : r.connect.components[ci]) comp_of[member] = ci + 1;
        for (const auto& t : triples) {
            std::vector<std::size_t> in_i, in_c;
            for (auto x : t) (ch.in_I(x) ? in_i : in_c).push_back(x);
            if (in_i.size() != 2 || in_c.size() != 1) continue;
            auto a = comp_of.find(in_i[0]), b = comp_of.find(in_i[1]);
            if (a == comp_of.end() || b == comp_of.end() || a->second != b->second) continue;
            if (asum(t) == 0) { second_ok = false; break; }
        }
    }
    r.equality_certified = h1_zero && second_ok;
    if (r.equality_certified)
        check_internal(vi.dim_dA1_cap_VIprime == r.c, "certified equality case disagrees with ranks");
    return r;
}

/// Codegree-2 completeness test: with |I^c| = 2, no bad component and
/// nonvanishing weight sums at the triples through both complement lines,
/// the image V(I) fills the whole top cohomology.
inline bool lemma47_check(const AomotoAlgebra& A, const IntersectionLattice& lat,
                          const WeightChoice& ch, const VIResult& vi) {
    const Arrangement& ess = lat.arrangement();
    std::size_t d = ess.d();
    if (Int(d) - ch.k != 2) fail(errc::wrong_codegree, "test requires d - k = 2");
    if (ess.n != 3) fail(errc::wrong_dimension, "test applies to rank-3 arrangements");
    if (detail::max_point_multiplicity(lat) > 3) return false;

    auto conn = connectivity(A, lat, ch);
    for (auto k : conn.kind)
        if (k == ComponentKind::bad) return false;

    for (const auto& t : detail::affine_triples(lat, ch.pivot)) {
        std::size_t in_i = 0;
        for (auto x : t) in_i += ch.in_I(x);
        if (in_i == 1) {
            Rat s = ch.alpha.alpha[t[0] - 1] + ch.alpha.alpha[t[1] - 1] + ch.alpha.alpha[t[2] - 1];
            if (s == 0) return false;
        }
    }
    check_internal(vi.dim_VI == vi.dim_Htop, "completeness test disagrees with exact ranks");
    return true;
}

/// Normal-crossing test for the chosen lines plus the pivot. When it holds,
/// dim V(I)' equals C(k-1, n-1) exactly.
inline bool lemma48_check(const Arrangement& ess, const std::vector<std::size_t>& I, Int k,
                          std::size_t pivot) {
    if (k < Int(ess.n)) fail(errc::bad_cardinality, "test requires k >= n");
    Arrangement sub;
    sub.n = ess.n;
    for (auto i : I) sub.forms.push_back(ess.forms[i - 1]);
    sub.forms.push_back(ess.forms[pivot - 1]);
    auto lat = IntersectionLattice::build(sub);
    for (const auto& f : lat.flats)
        if (f.codim >= 2 && f.codim <= ess.n - 1 && f.m() != f.codim) return false;
    return true;
}

inline Int binom(Int n, Int k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (Int i = 0; i < k; ++i) { r *= n - i; r /= i + 1; }
    return r;
}

/// Ranked admissible index sets for the given k: complements covering every
/// dense multiple point first, then normal-crossing choices, then the rest.
/// Deterministic lexicographic order within each tier.
inline std::vector<WeightChoice> find_admissible_I(const Arrangement& ess,
                                                   const IntersectionLattice& lat, Int k,
                                                   std::size_t pivot,
                                                   std::size_t max_choices = 100000) {
    if (ess.n != 3) fail(errc::wrong_dimension, "index-set search implemented for rank 3");
    std::size_t d = ess.d();
    if (k < 1 || k >= Int(d)) return {};
    std::size_t csize = d - static_cast<std::size_t>(k);

    std::vector<std::size_t> others; // original indices except the pivot
    for (std::size_t i = 1; i <= d; ++i)
        if (i != pivot) others.push_back(i);

    std::vector<std::uint64_t> dense_multi; // dense codim-2 flats, m >= 3
    for (const auto& f : lat.flats)
        if (f.codim == 2 && f.dense) dense_multi.push_back(f.mask);

    std::vector<std::pair<int, WeightChoice>> ranked;
    for (const auto& sub : detail::subsets_of_size(others.size(), csize)) {
        std::vector<std::size_t> comp;
        for (auto q : sub) comp.push_back(others[q]);
        std::vector<std::size_t> I;
        std::set<std::size_t> bad(comp.begin(), comp.end());
        for (auto i : others)
            if (!bad.count(i)) I.push_back(i);
        WeightChoice ch = weights_for_I(d, k, I, pivot);
        if (!resonance_check(lat, ch.alpha).ok) continue;
        std::uint64_t cover_mask = 1ull << (pivot - 1);
        for (auto j : comp) cover_mask |= 1ull << (j - 1);
        bool covers = true;
        for (auto m : dense_multi)
            if ((m & cover_mask) == 0) { covers = false; break; }
        int tier = covers ? 0 : (lemma48_check(ess, ch.I, k, pivot) ? 1 : 2);
        ranked.emplace_back(tier, std::move(ch));
        if (ranked.size() >= max_choices) break;
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<WeightChoice> out;
    for (auto& [t, ch] : ranked) out.push_back(std::move(ch));
    return out;
}

} // namespace bsa
