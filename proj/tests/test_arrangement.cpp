#include <catch2/catch_amalgamated.hpp>

#include "bsa/corpus.hpp"
#include "bsa/lattice.hpp"

using namespace bsa;

namespace {

std::vector<Rat> rv(std::initializer_list<int> xs) {
    std::vector<Rat> v;
    for (int x : xs) v.push_back(Rat(x));
    return v;
}

bool same_affine_line(const AffineForm& g, std::vector<Rat> lin, Rat c) {
    // proportional (lin, c) vectors cut out the same line
    RatMatrix m(2, g.lin.size() + 1);
    for (std::size_t j = 0; j < g.lin.size(); ++j) {
        m(0, j) = g.lin[j];
        m(1, j) = lin[j];
    }
    m(0, g.lin.size()) = g.c;
    m(1, g.lin.size()) = c;
    return rank(m) == 1;
}

} // namespace

TEST_CASE("arrangement validation") {
    auto ok = parse_arrangement(2, {rv({1, 0}), rv({0, 1}), rv({1, 1})});
    CHECK(ok.d() == 3);

    CHECK_THROWS_MATCHES(parse_arrangement(2, {rv({1, 0}), rv({2, 0})}), error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("DUPLICATE_HYPERPLANE")));
    CHECK_THROWS_MATCHES(parse_arrangement(2, {rv({1, 0}), rv({0, 0})}), error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::StartsWith("ZERO_FORM")));
    CHECK_THROWS_MATCHES(parse_arrangement(3, {rv({1, 0})}), error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::StartsWith("DIMENSION_MISMATCH")));

    auto ex = corpus_arrangement("saito-4-12-i");
    CHECK(ex.d() == 6);
    CHECK(ex.n == 3);
    CHECK(ex.is_essential());
}

TEST_CASE("essentialization quotients out the common center") {
    // pull-back of the coordinate cross into three variables
    auto pulled = parse_arrangement(3, {rv({1, 0, 0}), rv({0, 1, 0})});
    CHECK(!pulled.is_essential());
    auto ess = essentialize(pulled);
    CHECK(ess.n == 2);
    CHECK(ess.d() == 2);
    CHECK(ess.is_essential());
    // same lattice data
    CHECK(euler_complement(ess) == euler_complement(pulled));
}

TEST_CASE("decone recovers the affine equation of the d = 6 example") {
    auto arr = corpus_arrangement("saito-4-12-i");
    auto aff = decone(arr, 6);
    REQUIRE(aff.nvars == 2);
    REQUIRE(aff.forms.size() == 5);
    CHECK(same_affine_line(aff.forms[0], {Rat(1), Rat(0)}, Rat(-1))); // x - 1
    CHECK(same_affine_line(aff.forms[1], {Rat(1), Rat(0)}, Rat(1)));  // x + 1
    CHECK(same_affine_line(aff.forms[2], {Rat(0), Rat(1)}, Rat(-1))); // y - 1
    CHECK(same_affine_line(aff.forms[3], {Rat(0), Rat(1)}, Rat(1)));  // y + 1
    CHECK(same_affine_line(aff.forms[4], {Rat(1), Rat(1)}, Rat(0)));  // x + y
}

TEST_CASE("decone of a small triangle") {
    auto arr = parse_arrangement(2, {rv({1, 0}), rv({0, 1}), rv({1, 1})});
    auto aff = decone(arr, 3);
    CHECK(aff.nvars == 1);
    CHECK(aff.forms.size() == 2); // two affine points on a line
    CHECK_THROWS_AS(decone(arr, 4), error);
}

TEST_CASE("slices at edges are the transversal arrangements") {
    auto arr = corpus_arrangement("saito-4-12-i");
    auto lat = IntersectionLattice::build(arr);
    bool saw_triple = false, saw_double = false;
    for (const auto& f : lat.flats) {
        if (f.codim != 2) continue;
        auto slice = slice_at_edge(arr, f);
        CHECK(slice.n == 2);
        CHECK(slice.d() == f.m()); // slice degree equals the edge multiplicity
        auto slat = IntersectionLattice::build(slice);
        // the slice lattice matches the interval below the edge
        CHECK(slat.poincare() == lat.interval_poincare(f.mask));
        if (f.m() == 3) saw_triple = true;
        if (f.m() == 2) saw_double = true;
    }
    CHECK(saw_triple);
    CHECK(saw_double);
}
