#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "bsa/lattice.hpp"

namespace bsa {

/// Weights alpha_1..alpha_d attached to the hyperplanes, one per form,
/// summing to zero (trivial line bundle). The weight of the decone pivot is
/// determined by the others.
struct WeightVector {
    std::vector<Rat> alpha;

    static WeightVector zero(std::size_t d) { return WeightVector{std::vector<Rat>(d, Rat(0))}; }

    Rat sum() const {
        Rat s = 0;
        for (const auto& a : alpha) s += a;
        return s;
    }
};

struct ResonanceResult {
    bool ok = true;
    std::vector<std::size_t> violating_flats; // indices into lattice.flats
};

/// Condition for the finite complex to compute twisted cohomology: no dense
/// edge may have weight sum a positive integer. The bottom edge always has
/// weight sum zero here and passes trivially.
inline ResonanceResult resonance_check(const IntersectionLattice& lat, const WeightVector& w) {
    check_internal(w.alpha.size() == lat.d(), "weight vector length mismatch");
    check_internal(w.sum() == 0, "weight vector must sum to zero");
    ResonanceResult res;
    for (std::size_t i = 0; i < lat.flats.size(); ++i) {
        const Flat& f = lat.flats[i];
        if (!f.dense || f.codim == 0) continue;
        Rat aL = 0;
        for (std::size_t h = 0; h < lat.d(); ++h)
            if (f.mask >> h & 1) aL += w.alpha[h];
        if (is_positive_integer(aL)) {
            res.ok = false;
            res.violating_flats.push_back(i);
        }
    }
    return res;
}

namespace detail {

// Sparse multivariate polynomial, just enough for expanding products of
// affine forms.
using Monomial = std::vector<int>;
using Poly = std::map<Monomial, Rat>;

inline Poly poly_of_affine_form(const AffineForm& g, std::size_t nvars) {
    Poly p;
    Monomial zero(nvars, 0);
    if (g.c != 0) p[zero] = g.c;
    for (std::size_t j = 0; j < nvars; ++j) {
        if (g.lin[j] == 0) continue;
        Monomial m(nvars, 0);
        m[static_cast<int>(j)] = 1;
        p[m] += g.lin[j];
    }
    return p;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly c;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Monomial m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            Rat& slot = c[m];
            slot += ca * cb;
            if (slot == 0) c.erase(m);
        }
    return c;
}

inline void enumerate_monomials(std::size_t nvars, int maxdeg, Monomial& cur, int used,
                                std::size_t var, std::vector<Monomial>& out) {
    if (var == nvars) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e + used <= maxdeg; ++e) {
        cur[var] = e;
        enumerate_monomials(nvars, maxdeg, cur, used + e, var + 1, out);
    }
    cur[var] = 0;
}

inline std::vector<Monomial> monomials_up_to(std::size_t nvars, int maxdeg) {
    std::vector<Monomial> out;
    Monomial cur(nvars, 0);
    enumerate_monomials(nvars, maxdeg, cur, 0, 0, out);
    return out;
}

inline Rat det(const RatMatrix& m) {
    std::size_t n = m.rows();
    RatMatrix a = m;
    Rat d = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) { a.swap_rows(col, piv); d = -d; }
        d *= a(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (a(i, col) == 0) continue;
            Rat f = a(i, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
        }
    }
    return d;
}

inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    // lexicographic on sorted index sets
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) { out.push_back(cur); return; }
        for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline std::uint64_t mask_of(const std::vector<std::size_t>& set) {
    std::uint64_t m = 0;
    for (auto i : set) m |= 1ull << i;
    return m;
}

} // namespace detail

/// The finite logarithmic-forms complex of the deconed arrangement: wedge
/// monomials in the forms dg_i/g_i, a broken-circuit monomial basis per
/// degree, and a straightening table expressing every wedge monomial in that
/// basis. Degree-p dimension equals b_p(U); this is verified against the
/// lattice at build time.
///
/// All wedge monomials are realised as honest polynomial differential forms
/// (cleared of denominators), so the relations are computed, not assumed.
class AomotoAlgebra {
public:
    AffineArrangement aff;                 // deconed arrangement, indices preserved
    std::vector<std::size_t> orig_index;   // affine position -> original 1-based index
    std::size_t nvars = 0;
    std::vector<std::size_t> dims;                           // dims[p] = b_p(U)
    std::vector<std::vector<std::uint64_t>> basis;            // per degree, masks over affine positions
    std::vector<std::map<std::uint64_t, std::vector<Rat>>> straightening; // mask -> basis coords

    std::size_t top_degree() const { return dims.size() - 1; }

    const std::vector<Rat>& coords(std::size_t p, std::uint64_t mask) const {
        auto it = straightening[p].find(mask);
        check_internal(it != straightening[p].end(), "straighten: unknown wedge monomial");
        return it->second;
    }

    /// Matrix of wedging with sum alpha_i dg_i/g_i from degree p to p+1, in
    /// basis coordinates. Weights are indexed by original hyperplane.
    RatMatrix differential(std::size_t p, const WeightVector& w) const {
        std::size_t dm = dims[p], dn = (p + 1 < dims.size()) ? dims[p + 1] : 0;
        RatMatrix D(dn, dm);
        if (dn == 0) return D;
        for (std::size_t col = 0; col < dm; ++col) {
            std::uint64_t sigma = basis[p][col];
            for (std::size_t t = 0; t < aff.forms.size(); ++t) {
                if (sigma >> t & 1) continue;
                const Rat& a = w.alpha[orig_index[t] - 1];
                if (a == 0) continue;
                // sign of moving dg_t/g_t into the sorted monomial
                int below = 0;
                for (std::size_t u = 0; u < t; ++u)
                    if (sigma >> u & 1) ++below;
                Rat s = (below % 2) ? -a : a;
                const auto& c = coords(p + 1, sigma | (1ull << t));
                for (std::size_t r = 0; r < dn; ++r)
                    if (c[r] != 0) D(r, col) += s * c[r];
            }
        }
        return D;
    }

    static AomotoAlgebra build(const Arrangement& ess, std::size_t pivot,
                               const IntersectionLattice& lat);
};

inline AomotoAlgebra AomotoAlgebra::build(const Arrangement& ess, std::size_t pivot,
                                          const IntersectionLattice& lat) {
    AomotoAlgebra A;
    A.aff = decone(ess, pivot);
    A.nvars = A.aff.nvars;
    for (std::size_t i = 1; i <= ess.d(); ++i)
        if (i != pivot) A.orig_index.push_back(i);
    std::size_t m = A.aff.forms.size(); // = d-1

    // Betti oracle from the lattice.
    std::vector<Int> betti = betti_of_U(lat);
    std::size_t top = A.nvars;
    check_internal(betti.size() == top + 1, "Betti vector has unexpected length");

    // Broken circuits: minimal dependent sets of the central forms, with the
    // pivot placed first in the order, minimum removed. Only circuits of
    // size <= rank+1 exist; we need broken circuits of size <= top.
    std::vector<std::uint64_t> broken; // masks over affine positions
    {
        auto indep = [&](const std::vector<std::size_t>& idx) {
            RatMatrix mm(idx.size(), ess.n);
            for (std::size_t r = 0; r < idx.size(); ++r)
                for (std::size_t j = 0; j < ess.n; ++j) mm(r, j) = ess.forms[idx[r]][j];
            return rank(mm) == idx.size();
        };
        // order: pivot, then remaining in input order (affine positions)
        for (std::size_t size = 2; size <= std::min(ess.n + 1, ess.d()); ++size) {
            for (const auto& sub : detail::subsets_of_size(ess.d(), size)) {
                std::vector<std::size_t> idx(sub.begin(), sub.end());
                if (indep(idx)) continue;
                bool minimal = true;
                for (std::size_t drop = 0; drop < idx.size() && minimal; ++drop) {
                    std::vector<std::size_t> pr;
                    for (std::size_t q = 0; q < idx.size(); ++q)
                        if (q != drop) pr.push_back(idx[q]);
                    if (!indep(pr)) minimal = false;
                }
                if (!minimal) continue;
                // remove the order-minimum: pivot if present, else smallest
                std::vector<std::size_t> affpos;
                bool has_pivot = false;
                for (auto i0 : idx) {
                    if (i0 + 1 == pivot) { has_pivot = true; continue; }
                    std::size_t pos = 0;
                    while (A.orig_index[pos] != i0 + 1) ++pos;
                    affpos.push_back(pos);
                }
                std::sort(affpos.begin(), affpos.end());
                if (!has_pivot) affpos.erase(affpos.begin());
                if (affpos.size() <= top) broken.push_back(detail::mask_of(affpos));
            }
        }
    }
    auto contains_broken = [&](std::uint64_t sigma) {
        for (auto b : broken)
            if ((b & ~sigma) == 0) return true;
        return false;
    };

    // Expansion of each wedge monomial as a polynomial form: clear h from
    // w_S to get (wedge of dg_i, i in S) * prod of the g_i off S.
    std::vector<detail::Poly> gpoly;
    for (const auto& g : A.aff.forms) gpoly.push_back(detail::poly_of_affine_form(g, A.nvars));

    A.dims.assign(top + 1, 0);
    A.basis.assign(top + 1, {});
    A.straightening.assign(top + 1, {});

    for (std::size_t p = 0; p <= top; ++p) {
        int maxdeg = static_cast<int>(m - p);
        auto mons = detail::monomials_up_to(A.nvars, maxdeg);
        std::map<detail::Monomial, std::size_t> mon_index;
        for (std::size_t i = 0; i < mons.size(); ++i) mon_index[mons[i]] = i;
        auto wedges = detail::subsets_of_size(A.nvars, p);
        std::size_t K = mons.size() * wedges.size();

        auto sets = detail::subsets_of_size(m, p);
        std::vector<std::uint64_t> nbc, rest;
        for (const auto& s : sets) {
            std::uint64_t mask = detail::mask_of(s);
            (contains_broken(mask) ? rest : nbc).push_back(mask);
        }
        check_internal(Int(nbc.size()) == betti[p],
                       "broken-circuit count disagrees with lattice Betti number");

        auto expand = [&](const std::vector<std::size_t>& s) {
            std::vector<Rat> v(K, Rat(0));
            detail::Poly prod;
            prod[detail::Monomial(A.nvars, 0)] = Rat(1);
            std::uint64_t mask = detail::mask_of(s);
            for (std::size_t i = 0; i < m; ++i)
                if (!(mask >> i & 1)) prod = detail::poly_mul(prod, gpoly[i]);
            for (std::size_t wj = 0; wj < wedges.size(); ++wj) {
                RatMatrix g(p, p);
                for (std::size_t r = 0; r < p; ++r)
                    for (std::size_t cidx = 0; cidx < p; ++cidx)
                        g(r, cidx) = A.aff.forms[s[r]].lin[wedges[wj][cidx]];
                Rat dt = detail::det(g);
                if (dt == 0) continue;
                for (const auto& [mon, cf] : prod)
                    v[wj * mons.size() + mon_index[mon]] = dt * cf;
            }
            return v;
        };

        std::map<std::uint64_t, std::vector<Rat>> expansion;
        for (const auto& s : sets) expansion[detail::mask_of(s)] = expand(s);

        // Verify the predicted basis is independent and solve for everything
        // else against it in one reduction.
        std::size_t b = nbc.size();
        RatMatrix M(K, b + rest.size());
        for (std::size_t c = 0; c < b; ++c) {
            const auto& v = expansion[nbc[c]];
            for (std::size_t r = 0; r < K; ++r) M(r, c) = v[r];
        }
        for (std::size_t c = 0; c < rest.size(); ++c) {
            const auto& v = expansion[rest[c]];
            for (std::size_t r = 0; r < K; ++r) M(r, b + c) = v[r];
        }
        std::size_t rk = rref_in_place(M);
        check_internal(rk == b, "wedge-monomial basis has wrong rank");
        // pivots must sit in the basis columns; then column b+c of the rref
        // carries the coordinates of monomial c.
        for (std::size_t i = 0; i < rk; ++i) {
            std::size_t col = 0;
            while (col < b + rest.size() && M(i, col) == 0) ++col;
            check_internal(col < b, "non-basis wedge monomial escapes the basis span");
        }
        A.dims[p] = b;
        A.basis[p] = nbc;
        for (std::size_t c = 0; c < b; ++c) {
            std::vector<Rat> unit(b, Rat(0));
            unit[c] = 1;
            A.straightening[p][nbc[c]] = std::move(unit);
        }
        for (std::size_t c = 0; c < rest.size(); ++c) {
            std::vector<Rat> coords(b, Rat(0));
            for (std::size_t i = 0; i < b; ++i) coords[i] = M(i, b + c);
            A.straightening[p][rest[c]] = std::move(coords);
        }
    }
    return A;
}

/// Closed-form Betti numbers (1, d-1, nu'_2 + 2 nu'_3) for rank-3
/// arrangements whose point multiplicities stay at 3 or below.
inline std::array<std::size_t, 3> betti_closed_form_n3(const IntersectionLattice& lat,
                                                       std::size_t pivot) {
    const Arrangement& arr = lat.arrangement();
    if (arr.n != 3) fail(errc::wrong_dimension, "closed form needs a rank-3 arrangement");
    auto pm = point_multiplicities(lat, pivot);
    if (pm.max_multiplicity() > 3)
        fail(errc::multiplicity_too_high,
             "a point of multiplicity " + std::to_string(pm.max_multiplicity()) +
                 " is outside the closed form's range");
    return {1, arr.d() - 1, pm.count_prime(2) + 2 * pm.count_prime(3)};
}

struct CohomologyReport {
    WeightVector weight;
    std::vector<std::size_t> dims; // dim H^p for p = 0..n-1
    bool resonance_ok = false;
    std::vector<std::size_t> violating_flats;
};

/// Cohomology of the finite complex under the given weights. Certified as
/// twisted cohomology of U only when the resonance condition holds.
inline CohomologyReport aomoto_cohomology(const AomotoAlgebra& A, const IntersectionLattice& lat,
                                          const WeightVector& w) {
    auto res = resonance_check(lat, w);
    CohomologyReport rep;
    rep.weight = w;
    rep.resonance_ok = res.ok;
    rep.violating_flats = res.violating_flats;
    std::size_t top = A.top_degree();
    std::vector<std::size_t> rk(top + 1, 0);
    for (std::size_t p = 0; p < top; ++p) rk[p] = rank(A.differential(p, w));
    rep.dims.resize(top + 1);
    for (std::size_t p = 0; p <= top; ++p) {
        std::size_t cut = (p == 0 ? 0 : rk[p - 1]) + (p == top ? 0 : rk[p]);
        rep.dims[p] = A.dims[p] - cut;
    }
    return rep;
}

struct EigenspaceDims {
    Int k;                          // class of k/d
    std::vector<std::size_t> dims;  // dim H^j(F_0)_lambda, j = 0..n-1
    WeightVector weights;           // admissible weights used
    std::size_t shifts_tried = 0;
};

/// Search for integer shifts s with alpha_i = -k/d + s_i summing to zero and
/// nonresonant; the cohomology then computes the monodromy eigenspaces of
/// the Milnor fiber at the eigenvalue exp(-2 pi i k/d).
inline std::optional<EigenspaceDims> milnor_eigenspace_dims(const AomotoAlgebra& A,
                                                            const IntersectionLattice& lat,
                                                            Int k, std::size_t budget = 10000) {
    std::size_t d = lat.d();
    check_internal(k >= 1 && k <= Int(d), "eigenvalue index out of range");
    Rat base = -Rat(k, Int(d));
    std::size_t tried = 0;

    auto attempt = [&](const std::vector<int>& s) -> std::optional<EigenspaceDims> {
        WeightVector w;
        w.alpha.resize(d);
        for (std::size_t i = 0; i < d; ++i) w.alpha[i] = base + s[i];
        if (!resonance_check(lat, w).ok) return std::nullopt;
        auto rep = aomoto_cohomology(A, lat, w);
        return EigenspaceDims{k, rep.dims, w, tried};
    };

    std::size_t kk = static_cast<std::size_t>(k);
    // 0/1 shift patterns first: indicators of k-subsets in lexicographic order.
    for (const auto& sub : detail::subsets_of_size(d, kk)) {
        if (tried++ >= budget) return std::nullopt;
        std::vector<int> s(d, 0);
        for (auto i : sub) s[i] = 1;
        if (auto r = attempt(s)) return r;
    }
    // Widen: one entry lowered to -1 with k+1 raises, then one raised to 2.
    if (kk + 1 <= d) {
        for (const auto& sub : detail::subsets_of_size(d, kk + 1)) {
            std::uint64_t mask = detail::mask_of(sub);
            for (std::size_t a = 0; a < d; ++a) {
                if (mask >> a & 1) continue;
                if (tried++ >= budget) return std::nullopt;
                std::vector<int> s(d, 0);
                for (auto i : sub) s[i] = 1;
                s[a] = -1;
                if (auto r = attempt(s)) return r;
            }
        }
    }
    if (kk >= 1) {
        for (const auto& sub : detail::subsets_of_size(d, kk - 1)) {
            for (auto b : sub) {
                if (tried++ >= budget) return std::nullopt;
                std::vector<int> s(d, 0);
                for (auto i : sub) s[i] = 1;
                s[b] = 2;
                if (auto r = attempt(s)) return r;
            }
        }
    }
    return std::nullopt;
}

} // namespace bsa
