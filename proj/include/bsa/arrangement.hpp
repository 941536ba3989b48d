#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bsa/matrix.hpp"
#include "bsa/subspace.hpp"

namespace bsa {

/// Central hyperplane arrangement in Q^n: d pairwise non-proportional
/// nonzero linear forms. The product of the forms is the reduced defining
/// equation f, deg f = d.
struct Arrangement {
    std::size_t n = 0;
    std::vector<std::vector<Rat>> forms;
    std::string name;

    std::size_t d() const { return forms.size(); }

    RatMatrix coefficient_matrix() const { return RatMatrix::from_rows(forms); }

    /// Rank of the form matrix; the arrangement is essential iff rank == n.
    std::size_t rank_of_forms() const { return rank(coefficient_matrix()); }

    bool is_essential() const { return rank_of_forms() == n; }
};

namespace detail {

// Forms are proportional iff the 2 x n matrix they span has rank <= 1.
inline bool proportional(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    RatMatrix m(2, a.size());
    for (std::size_t j = 0; j < a.size(); ++j) { m(0, j) = a[j]; m(1, j) = b[j]; }
    return rank(m) <= 1;
}

inline bool is_zero_vec(const std::vector<Rat>& v) {
    for (const auto& x : v) if (x != Rat(0)) return false;
    return true;
}

} // namespace detail

/// Validate and build an arrangement. Rejects zero forms, duplicate
/// (proportional) forms and rows of the wrong length, so the stored
/// equation is always reduced.
inline Arrangement parse_arrangement(std::size_t n, const std::vector<std::vector<Rat>>& coeff_rows,
                                     const std::string& name = "") {
    if (n == 0) fail(errc::dimension_mismatch, "ambient dimension must be positive");
    if (coeff_rows.empty()) fail(errc::input_error, "arrangement needs at least one hyperplane");
    Arrangement arr;
    arr.n = n;
    arr.name = name;
    for (std::size_t i = 0; i < coeff_rows.size(); ++i) {
        const auto& row = coeff_rows[i];
        if (row.size() != n)
            fail(errc::dimension_mismatch,
                 "form " + std::to_string(i + 1) + " has " + std::to_string(row.size()) +
                     " coefficients, expected " + std::to_string(n));
        if (detail::is_zero_vec(row))
            fail(errc::zero_form, "form " + std::to_string(i + 1) + " is identically zero");
        for (std::size_t j = 0; j < arr.forms.size(); ++j)
            if (detail::proportional(arr.forms[j], row))
                fail(errc::duplicate_hyperplane,
                     "forms " + std::to_string(j + 1) + " and " + std::to_string(i + 1) +
                         " define the same hyperplane");
        arr.forms.push_back(row);
    }
    return arr;
}

/// Quotient by the common intersection of all hyperplanes. Returns an
/// essential arrangement of rank r <= n with the same hyperplane indexing
/// (and an identical intersection lattice).
inline Arrangement essentialize(const Arrangement& arr) {
    RatMatrix m = arr.coefficient_matrix();
    auto [r, rk] = rref(m);
    if (rk == arr.n) return arr;
    // Coordinates of each form in the row-space basis r[0..rk).
    RatMatrix bt(arr.n, rk);
    for (std::size_t i = 0; i < rk; ++i)
        for (std::size_t j = 0; j < arr.n; ++j) bt(j, i) = r(i, j);
    Arrangement ess;
    ess.n = rk;
    ess.name = arr.name;
    for (const auto& f : arr.forms) {
        std::vector<Rat> c;
        bool ok = solve(bt, f, c);
        check_internal(ok, "essentialize: form not in row space");
        ess.forms.push_back(c);
    }
    return ess;
}

/// Affine arrangement on C^{n-1}: forms g_i(u) = lin . u + c.
struct AffineForm {
    std::vector<Rat> lin;
    Rat c;
};

struct AffineArrangement {
    std::size_t nvars = 0;
    std::vector<AffineForm> forms; // d-1 forms; original indices 1..d-1 preserved
    std::size_t pivot = 0;         // 1-based index of the hyperplane at infinity
};

/// Decone at the given hyperplane (1-based): choose the affine chart
/// {l_pivot = 1} so the pivot becomes the hyperplane at infinity. The other
/// forms restrict to degree-1 affine forms on C^{n-1}.
inline AffineArrangement decone(const Arrangement& arr, std::size_t pivot) {
    if (pivot < 1 || pivot > arr.d()) fail(errc::input_error, "decone: pivot index out of range");
    const auto& lp = arr.forms[pivot - 1];
    // Base point p with l_pivot(p) = 1: scaled coordinate vector at the
    // first nonzero coefficient.
    std::size_t j0 = 0;
    while (lp[j0] == Rat(0)) ++j0;
    std::vector<Rat> p(arr.n, Rat(0));
    p[j0] = Rat(1) / lp[j0];
    // Directions: canonical kernel basis of l_pivot.
    RatMatrix lpm(1, arr.n);
    for (std::size_t j = 0; j < arr.n; ++j) lpm(0, j) = lp[j];
    RatMatrix dirs = kernel_basis(lpm); // (n-1) x n
    AffineArrangement aff;
    aff.nvars = arr.n - 1;
    aff.pivot = pivot;
    for (std::size_t i = 0; i < arr.d(); ++i) {
        if (i + 1 == pivot) continue;
        AffineForm g;
        g.lin = dirs.apply(arr.forms[i]); // lin[k] = l_i(dirs row k)
        g.c = Rat(0);
        for (std::size_t j = 0; j < arr.n; ++j) g.c += arr.forms[i][j] * p[j];
        aff.forms.push_back(std::move(g));
    }
    return aff;
}

} // namespace bsa
