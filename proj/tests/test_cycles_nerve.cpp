#include <catch2/catch.hpp>

#include "cuberips/cycles.hpp"

using namespace cuberips;

namespace {

Vmask mask_of(std::initializer_list<int> verts) {
    Vmask m = 0;
    for (int v : verts) m |= Vmask{1} << v;
    return m;
}

Complex tetra_boundary() {
    return make_complex(4, {mask_of({0, 1, 2}), mask_of({0, 1, 3}), mask_of({0, 2, 3}),
                            mask_of({1, 2, 3})},
                        Origin::explicit_);
}

}  // namespace

TEST_CASE("chains and boundaries", "[cycles]") {
    Chain bd = boundary_of_simplex(mask_of({0, 1, 2}));
    CHECK(bd.dim == 1);
    CHECK(bd.coef(mask_of({1, 2})) == 1);
    CHECK(bd.coef(mask_of({0, 2})) == -1);
    CHECK(bd.coef(mask_of({0, 1})) == 1);
    CHECK(is_cycle(bd));
    CHECK(boundary(bd).empty());  // dd = 0 at the chain level
}

TEST_CASE("is_boundary with witnesses", "[cycles]") {
    // the boundary of a 3-simplex bounds inside the full simplex
    Complex full = make_complex(4, {mask_of({0, 1, 2, 3})}, Origin::explicit_);
    Chain c = boundary_of_simplex(mask_of({0, 1, 2, 3}));
    auto res = is_boundary(c, full);
    CHECK(res.value);
    REQUIRE(res.witness.has_value());
    CHECK(boundary(*res.witness) == c);

    // the same cycle is fundamental in the boundary complex
    auto res2 = is_boundary(c, tetra_boundary());
    CHECK_FALSE(res2.value);

    // non-cycles are rejected
    Chain notcycle;
    notcycle.dim = 1;
    notcycle.add(mask_of({0, 1}), 1);
    CHECK_THROWS_AS(is_boundary(notcycle, full), std::invalid_argument);

    // order-2 class on the 6-vertex projective plane: z does not bound, 2z does
    Complex rp2 = make_complex(
        6,
        {mask_of({0, 1, 4}), mask_of({0, 1, 5}), mask_of({0, 2, 3}), mask_of({0, 2, 5}),
         mask_of({0, 3, 4}), mask_of({1, 2, 3}), mask_of({1, 2, 4}), mask_of({1, 3, 5}),
         mask_of({2, 4, 5}), mask_of({3, 4, 5})},
        Origin::explicit_);
    Chain z;
    z.dim = 1;
    z.add(mask_of({0, 1}), 1);
    z.add(mask_of({1, 2}), 1);
    z.add(mask_of({0, 2}), -1);
    CHECK_FALSE(is_boundary(z, rp2).value);
    Chain z2;
    z2.dim = 1;
    for (auto& [s, v] : z.terms) z2.add(s, 2 * v);
    auto twice = is_boundary(z2, rp2);
    CHECK(twice.value);
    REQUIRE(twice.witness.has_value());
    CHECK(boundary(*twice.witness) == z2);
}

TEST_CASE("pushing cycles into the boundary subcomplex", "[cycles]") {
    CyclePusher pusher(5);
    Complex d5 = vr_complex(5, 3);

    // a cycle already supported in the boundary union is returned unchanged
    SubcubeSpec half(5, {{1, 0}});
    Vmask inside = embed_simplex(mask_of({0, 1, 2, 3, 4, 5}), half);  // 6 vertices, 1st place constant
    REQUIRE(diameter(inside) <= 3);
    Chain already = boundary_of_simplex(inside);
    auto res0 = pusher.push(already);
    CHECK(res0.iterations == 0);
    CHECK(res0.pushed == already);
    CHECK(res0.correction.empty());

    // the boundary of an off-boundary 5-simplex is pushed off all places
    auto faces = enumerate_faces(d5, 6);
    Vmask tau = 0;
    for (Vmask f : faces)
        if (popcount(f) == 6 && covers_all_places(f, 5)) { tau = f; break; }
    REQUIRE(tau != 0);
    Chain c = boundary_of_simplex(tau);
    REQUIRE_FALSE(mu_support(c, 5).empty());
    auto res = pusher.push(c);
    CHECK(mu_support(res.pushed, 5).empty());
    CHECK(boundary(res.correction) == (c - res.pushed));
    auto check = is_boundary(c - res.pushed, d5);
    CHECK(check.value);
    REQUIRE(check.witness.has_value());
    CHECK(boundary(*check.witness) == (c - res.pushed));

    // hypothesis guards
    Chain toobig;
    toobig.dim = 5;
    CHECK_THROWS_AS(pusher.push(toobig), std::invalid_argument);
    CHECK_THROWS_AS(CyclePusher(4), std::invalid_argument);
}

TEST_CASE("seeded cycle pushes keep shrinking the off-boundary support", "[cycles]") {
    CyclePusher pusher(5);
    Complex d5 = vr_complex(5, 3);
    auto faces = enumerate_faces(d5, 6);
    std::vector<Vmask> pool;
    for (Vmask f : faces)
        if (popcount(f) == 6 && covers_all_places(f, 5)) pool.push_back(f);
    SplitMix64 rng(0);
    int made = 0;
    while (made < 5) {
        Chain c;
        c.dim = 4;
        int k = 1 + static_cast<int>(rng.below(4));
        for (int t = 0; t < k; ++t) {
            std::int64_t coef = rng.range(-3, 3);
            if (coef == 0) coef = 1;
            Chain bd = boundary_of_simplex(pool[rng.below(pool.size())]);
            for (auto& [s, v] : bd.terms) c.add(s, coef * v);
        }
        size_t mu0 = mu_support(c, 5).size();
        if (mu0 == 0) continue;
        auto res = pusher.push(c);
        CHECK(mu_support(res.pushed, 5).empty());
        CHECK(static_cast<size_t>(res.iterations) <= mu0);  // strict shrink per iteration
        CHECK(boundary(res.correction) == (c - res.pushed));
        ++made;
    }
}

TEST_CASE("nerve of covers", "[nerve]") {
    // two disjoint complexes: two isolated vertices
    Complex a = make_complex(8, {mask_of({0, 1})}, Origin::explicit_);
    Complex b = make_complex(8, {mask_of({4, 5})}, Origin::explicit_);
    Complex nv = nerve({a, b});
    CHECK(nv.facets == std::vector<Vmask>{mask_of({0}), mask_of({1})});
    auto rep = reduced_homology(nv, -1, Engine::plain);
    CHECK(rep.betti(0) == 1);

    // the full boundary cover of Delta_4: the nerve is the boundary of the
    // 4-dimensional cross-polytope
    auto cover = boundary_cover(4, 3);
    Complex cross = nerve(cover);
    CHECK(cross.facets.size() == 16);
    auto rep2 = reduced_homology(cross, -1, Engine::plain);
    CHECK(rep2.nonzero_dims() == std::vector<int>{3});
    CHECK(rep2.betti(3) == 1);

    // dropping one side of a coordinate leaves a cone over that vertex
    cover.pop_back();  // removes (4, 1)
    Complex coned = nerve(cover);
    auto rep3 = reduced_homology(coned, -1, Engine::plain);
    CHECK(rep3.nonzero_dims().empty());

    CHECK_THROWS_AS(nerve({}), std::invalid_argument);
}

TEST_CASE("W-family vanishing checks", "[wfamily]") {
    // boundary of Delta_5 sits in W_5^4 and has trivial homology below dim 4
    std::vector<SubcubeSpec> members;
    for (int i = 1; i <= 5; ++i)
        for (int e = 0; e <= 1; ++e) members.push_back(SubcubeSpec(5, {{i, e}}));
    auto rep = check_W_vanishing(make_cover_family(5, members));
    CHECK(rep.m == 4);
    CHECK(rep.checked_dims == std::vector<int>{0, 1, 2, 3});
    CHECK(rep.all_vanish);

    // a valid member of W_4^3 vanishes through dimension 2
    auto f43 = make_cover_family(
        4, {SubcubeSpec(4, {{1, 0}}), SubcubeSpec(4, {{2, 0}}), SubcubeSpec(4, {{2, 1}})});
    auto rep43 = check_W_vanishing(f43);
    CHECK(rep43.checked_dims == std::vector<int>{0, 1, 2});
    CHECK(rep43.all_vanish);

    // invalid families are rejected
    auto parallel = make_cover_family(5, {SubcubeSpec(5, {{1, 0}}), SubcubeSpec(5, {{1, 1}})});
    CHECK_THROWS_AS(check_W_vanishing(parallel), std::invalid_argument);

    // a handful of seeded valid families in W_5^4
    SplitMix64 rng(9);
    int made = 0;
    while (made < 5) {
        std::vector<SubcubeSpec> sample;
        for (int i = 1; i <= 5; ++i)
            for (int e = 0; e <= 1; ++e)
                if (rng.below(2)) sample.push_back(SubcubeSpec(5, {{i, e}}));
        if (sample.empty()) continue;
        auto fam = make_cover_family(5, sample);
        if (!validate_W(fam)) continue;
        CHECK(check_W_vanishing(fam).all_vanish);
        ++made;
    }
}
