#pragma once

#include <cstddef>
#include <vector>

#include "bsa/matrix.hpp"

namespace bsa {

/// Linear subspace of Q^n stored by a row basis in reduced echelon form.
/// The echelon form is the canonical representative: two equal subspaces
/// compare equal member-by-member.
struct Subspace {
    std::size_t ambient = 0;
    RatMatrix basis; // dim x ambient, rref, no zero rows

    std::size_t dim() const { return basis.rows(); }

    bool operator==(const Subspace& o) const {
        return ambient == o.ambient && basis == o.basis;
    }

    static Subspace zero(std::size_t ambient) {
        Subspace s;
        s.ambient = ambient;
        s.basis = RatMatrix(0, ambient);
        return s;
    }

    static Subspace full(std::size_t ambient) {
        Subspace s;
        s.ambient = ambient;
        s.basis = RatMatrix::identity(ambient);
        return s;
    }

    /// Span of the given row vectors.
    static Subspace span(std::size_t ambient, RatMatrix rows) {
        check_internal(rows.cols() == ambient || rows.rows() == 0, "span: ambient mismatch");
        std::size_t rk = rref_in_place(rows);
        RatMatrix b(rk, ambient);
        for (std::size_t i = 0; i < rk; ++i)
            for (std::size_t j = 0; j < ambient; ++j) b(i, j) = rows(i, j);
        Subspace s;
        s.ambient = ambient;
        s.basis = std::move(b);
        return s;
    }

    bool contains(const std::vector<Rat>& v) const {
        RatMatrix m = basis;
        m.append_row(v);
        return rank(m) == dim();
    }

    bool contains(const Subspace& o) const {
        RatMatrix m = basis;
        for (std::size_t i = 0; i < o.dim(); ++i) m.append_row(o.basis.row(i));
        return rank(m) == dim();
    }
};

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient) fail(errc::dimension_mismatch, "subspace_sum: ambient dims differ");
    RatMatrix m = a.basis;
    for (std::size_t i = 0; i < b.dim(); ++i) m.append_row(b.basis.row(i));
    return Subspace::span(a.ambient, m);
}

/// Zassenhaus: row-reduce [A|A; B|0]. The rows with zero left half carry the
/// intersection in their right half.
inline Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
    if (a.ambient != b.ambient) fail(errc::dimension_mismatch, "subspace_intersection: ambient dims differ");
    std::size_t n = a.ambient;
    RatMatrix z(a.dim() + b.dim(), 2 * n);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            z(i, j) = a.basis(i, j);
            z(i, n + j) = a.basis(i, j);
        }
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) z(a.dim() + i, j) = b.basis(i, j);
    std::size_t rk = rref_in_place(z);
    RatMatrix inter(0, n);
    for (std::size_t i = 0; i < rk; ++i) {
        bool left_zero = true;
        for (std::size_t j = 0; j < n && left_zero; ++j)
            if (z(i, j) != Rat(0)) left_zero = false;
        if (!left_zero) continue;
        std::vector<Rat> r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = z(i, n + j);
        inter.append_row(r);
    }
    return Subspace::span(n, inter);
}

struct SubspaceOps {
    Subspace sum;
    Subspace intersection;
    std::size_t quotient_dim; // dim of the image of a in ambient/b
};

inline SubspaceOps subspace_ops(const Subspace& a, const Subspace& b) {
    SubspaceOps r{subspace_sum(a, b), subspace_intersection(a, b), 0};
    r.quotient_dim = a.dim() - r.intersection.dim();
    return r;
}

} // namespace bsa
