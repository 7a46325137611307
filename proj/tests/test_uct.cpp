#include "doctest.h"

#include <random>

#include "homkk/uct.hpp"

using namespace homkk;

namespace {

GradedGroup mixed_group() {
    // Z/4 (+) Z/2 in even parity, Z/2 (+) Z in odd parity
    return GradedGroup::direct_sum({GradedGroup::cyclic(4, kEven), GradedGroup::cyclic(2, kEven),
                                    GradedGroup::cyclic(2, kOdd), GradedGroup::cyclic(0, kOdd)});
}

ExtElement random_odd_part(std::mt19937_64& rng, const GradedGroup& g, const GradedGroup& h,
                            int degree) {
    ExtPresentation pres(g, h, degree);
    std::vector<Int> coords(pres.num_gens());
    for (auto& v : coords) v = static_cast<long>(rng() % 9) - 4;
    return pres.decode(coords);
}

bool uct_equal(const UctClass& a, const UctClass& b) {
    if (!maps_equal(a.even, b.even)) return false;
    ExtPresentation pres(a.odd.source, a.odd.target, a.odd.degree);
    return pres.classes_equal(a.odd, b.odd);
}

}  // namespace

TEST_CASE("uct composition basics") {
    GradedGroup g = mixed_group();
    std::mt19937_64 rng(9);
    ExtElement e = random_odd_part(rng, g, g, 1);

    UctClass id = UctClass::identity(g);
    UctClass t = {GradedMap::identity(g), e};

    SUBCASE("(id,0) . (id,e) = (id,e)") {
        CHECK(uct_equal(uct_compose(id, t), t));
        CHECK(uct_equal(uct_compose(t, id), t));
    }
    SUBCASE("product of two pure Ext terms vanishes") {
        UctClass s1 = {GradedMap::zero(g, g), random_odd_part(rng, g, g, 1)};
        UctClass s2 = {GradedMap::zero(g, g), random_odd_part(rng, g, g, 1)};
        UctClass prod = uct_compose(s1, s2);
        CHECK(map_is_zero(prod.even));
        ExtPresentation pres(g, g, 1);
        CHECK(pres.is_zero_class(prod.odd));
    }
    SUBCASE("odd part of a composite is f0 g1 + f1 g0") {
        UctClass f = {GradedMap::identity(g), random_odd_part(rng, g, g, 1)};
        UctClass h = {GradedMap::identity(g), random_odd_part(rng, g, g, 1)};
        UctClass prod = uct_compose(f, h);
        ExtElement expect = ext_add(push_ext(h.odd, f.even), pull_ext(f.odd, h.even));
        ExtPresentation pres(g, g, 1);
        CHECK(pres.classes_equal(prod.odd, expect));
    }
}

TEST_CASE("uct composition is associative") {
    GradedGroup g = mixed_group();
    std::mt19937_64 rng(77);
    for (int it = 0; it < 5; ++it) {
        UctClass a = {GradedMap::identity(g), random_odd_part(rng, g, g, 1)};
        UctClass b = {GradedMap::identity(g), random_odd_part(rng, g, g, 1)};
        UctClass c = {GradedMap::identity(g), random_odd_part(rng, g, g, 1)};
        CHECK(uct_equal(uct_compose(uct_compose(a, b), c), uct_compose(a, uct_compose(b, c))));
    }
}

TEST_CASE("uct inversion") {
    GradedGroup g = mixed_group();
    std::mt19937_64 rng(123);

    SUBCASE("(id, e) inverts to (id, -e)") {
        ExtElement e = random_odd_part(rng, g, g, 1);
        UctClass t = {GradedMap::identity(g), e};
        auto inv = uct_invert(t);
        REQUIRE(inv);
        ExtPresentation pres(g, g, 1);
        CHECK(pres.classes_equal(inv->odd, ext_negate(e)));
        CHECK(uct_is_identity(uct_compose(t, *inv)));
        CHECK(uct_is_identity(uct_compose(*inv, t)));
    }
    SUBCASE("(id, 0) is its own inverse") {
        UctClass id = UctClass::identity(g);
        auto inv = uct_invert(id);
        REQUIRE(inv);
        CHECK(uct_is_identity(*inv));
    }
    SUBCASE("mult by 2 on Z/3 inverts to itself") {
        GradedGroup z3 = GradedGroup::cyclic(3);
        IntMatrix two(1, 1);
        two(0, 0) = 2;
        UctClass t = UctClass::from_even(GradedMap(z3, z3, 0, {two, IntMatrix(0, 0)}));
        auto inv = uct_invert(t);
        REQUIRE(inv);
        CHECK(maps_equal(inv->even, t.even));  // 2 * 2 = 4 = 1 mod 3
        CHECK(uct_is_identity(uct_compose(t, *inv)));
    }
    SUBCASE("non-invertible even part yields nothing") {
        UctClass t = UctClass::from_even(GradedMap::zero(g, g));
        CHECK(!uct_invert(t));
    }
}
