#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bsa/matrix.hpp"
#include "bsa/subspace.hpp"

using namespace bsa;

namespace {

RatMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Rat(num(rng), den(rng));
    return m;
}

} // namespace

TEST_CASE("rational parsing and canonical form") {
    Rat q = parse_rat("-4/7");
    CHECK(num(q) == -4);
    CHECK(den(q) == 7);
    CHECK(to_string(q) == "-4/7");
    CHECK(parse_rat("12") == Rat(12));
    CHECK_THROWS_AS(parse_rat("2/4"), error);   // not reduced
    CHECK_THROWS_AS(parse_rat("1/-2"), error);  // sign on denominator
    CHECK_THROWS_AS(parse_rat("1.5"), error);
    CHECK_THROWS_AS(parse_rat(""), error);
    CHECK_THROWS_AS(parse_rat("1/0"), error);

    // arithmetic stays reduced with positive denominator
    Rat a = Rat(6, 4);
    CHECK(num(a) == 3);
    CHECK(den(a) == 2);
    CHECK(floor_rat(Rat(7, 2)) == 3);
    CHECK(floor_rat(Rat(-7, 2)) == -4);
    CHECK(ceil_rat(Rat(7, 2)) == 4);
    CHECK(is_positive_integer(Rat(3)));
    CHECK(!is_positive_integer(Rat(0)));
    CHECK(!is_positive_integer(Rat(5, 2)));
}

TEST_CASE("rref on the pinned examples") {
    RatMatrix id = RatMatrix::identity(2);
    auto [r1, rank1] = rref(id);
    CHECK(r1 == id);
    CHECK(rank1 == 2);

    RatMatrix z(3, 4);
    auto [r2, rank2] = rref(z);
    CHECK(r2 == z);
    CHECK(rank2 == 0);

    RatMatrix m{{Rat(1), Rat(2)}, {Rat(2), Rat(4)}};
    auto [r3, rank3] = rref(m);
    CHECK(rank3 == 1);
    RatMatrix expect{{Rat(1), Rat(2)}, {Rat(0), Rat(0)}};
    CHECK(r3 == expect);
}

TEST_CASE("rref is idempotent and rank-nullity holds") {
    std::mt19937_64 rng(20240811);
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 1 + t % 5, c = 1 + (t * 7) % 6;
        RatMatrix m = random_matrix(rng, r, c);
        auto [e, rk] = rref(m);
        auto [e2, rk2] = rref(e);
        CHECK(e2 == e);
        CHECK(rk2 == rk);
        RatMatrix k = kernel_basis(m);
        CHECK(k.rows() + rk == c);
        for (std::size_t i = 0; i < k.rows(); ++i) {
            auto prod = m.apply(k.row(i));
            for (const auto& x : prod) CHECK(x == 0);
        }
    }
}

TEST_CASE("kernel bases on the pinned examples") {
    CHECK(kernel_basis(RatMatrix::identity(3)).rows() == 0);
    CHECK(kernel_basis(RatMatrix(2, 3)).rows() == 3);

    RatMatrix m(1, 3);
    m(0, 0) = 1;
    m(0, 1) = 1;
    RatMatrix k = kernel_basis(m);
    CHECK(k.rows() == 2);
    Subspace ker = Subspace::span(3, k);
    CHECK(ker.contains({Rat(1), Rat(-1), Rat(0)}));
}

TEST_CASE("subspaces have one canonical representative") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        RatMatrix b = random_matrix(rng, 3, 5);
        Subspace s = Subspace::span(5, b);
        // shuffle the generators by an invertible mix of rows
        RatMatrix mix(3, 5);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                mix(i, j) = b(i, j) + (i > 0 ? b(i - 1, j) * Rat(t + 1) : Rat(0));
        Subspace s2 = Subspace::span(5, mix);
        CHECK(s == s2);
    }
}

TEST_CASE("subspace sum, intersection and quotient dimensions") {
    Subspace a = Subspace::span(2, RatMatrix{{Rat(1), Rat(0)}});
    Subspace b = Subspace::span(2, RatMatrix{{Rat(0), Rat(1)}});
    auto ops = subspace_ops(a, b);
    CHECK(ops.sum.dim() == 2);
    CHECK(ops.intersection.dim() == 0);
    CHECK(ops.quotient_dim == 1);

    auto same = subspace_ops(a, a);
    CHECK(same.sum == a);
    CHECK(same.intersection == a);
    CHECK(same.quotient_dim == 0);

    CHECK_THROWS_AS(subspace_ops(a, Subspace::span(3, RatMatrix{{Rat(1), Rat(0), Rat(0)}})), error);

    std::mt19937_64 rng(99);
    for (int t = 0; t < 25; ++t) {
        Subspace u = Subspace::span(4, random_matrix(rng, 3, 4));
        Subspace v = Subspace::span(4, random_matrix(rng, 2, 4));
        auto o = subspace_ops(u, v);
        CHECK(o.sum.dim() + o.intersection.dim() == u.dim() + v.dim());
        CHECK(o.sum.contains(u));
        CHECK(o.sum.contains(v));
        CHECK(u.contains(o.intersection));
        CHECK(v.contains(o.intersection));
    }
}
