#include <catch2/catch.hpp>

#include "cuberips/hypercube.hpp"
#include "cuberips/util.hpp"

using namespace cuberips;

namespace {
Vertex V(const std::string& s) { return vertex_from_string(s); }
}

TEST_CASE("flip matches the coordinate-complement definition", "[hypercube]") {
    CHECK(flip(V("00000"), {}) == V("00000"));
    CHECK(flip(V("00000"), {1, 2}) == V("11000"));
    CHECK(flip(V("10110"), {1, 3, 5}) == V("00011"));
    CHECK_THROWS_AS(flip(V("000"), {4}), std::invalid_argument);
    CHECK_THROWS_AS(flip(V("000"), {0}), std::invalid_argument);

    SplitMix64 rng(1);
    for (int t = 0; t < 200; ++t) {
        int n = 1 + static_cast<int>(rng.below(20));
        Vertex v(static_cast<std::uint32_t>(rng.below(1u << n)), n);
        std::set<int> coords;
        for (int i = 1; i <= n; ++i)
            if (rng.below(2)) coords.insert(i);
        Vertex w = flip(v, coords);
        CHECK(flip(w, coords) == v);                                  // involutive
        CHECK(distance(v, w) == static_cast<int>(coords.size()));     // d(v, v^S) = |S|
    }
}

TEST_CASE("distance is the Hamming metric", "[hypercube]") {
    CHECK(distance(V("01011"), V("01011")) == 0);
    CHECK(distance(V("00000"), V("11100")) == 3);
    CHECK_THROWS_AS(distance(V("000"), V("0000")), std::invalid_argument);

    // metric axioms, exhaustive for n = 4
    int n = 4;
    for (std::uint32_t a = 0; a < 16; ++a)
        for (std::uint32_t b = 0; b < 16; ++b) {
            Vertex va(a, n), vb(b, n);
            CHECK(distance(va, vb) == distance(vb, va));
            CHECK((distance(va, vb) == 0) == (a == b));
            for (std::uint32_t c = 0; c < 16; ++c)
                CHECK(distance(va, Vertex(c, n)) <= distance(va, vb) + distance(vb, Vertex(c, n)));
        }
}

TEST_CASE("neighborhoods", "[hypercube]") {
    auto nb = neighborhood(V("000"), false);
    CHECK(nb.size() == 3);
    CHECK(std::set<Vertex>(nb.begin(), nb.end()) ==
          std::set<Vertex>{V("100"), V("010"), V("001")});
    auto closed = neighborhood(V("00"), true);
    CHECK(std::set<Vertex>(closed.begin(), closed.end()) ==
          std::set<Vertex>{V("00"), V("10"), V("01")});
    for (int n = 1; n <= 8; ++n)
        CHECK(neighborhood(Vertex(0, n), false).size() == static_cast<size_t>(n));
}

TEST_CASE("k_set is the diagonal tetrahedron", "[hypercube]") {
    auto k = k_set(V("000"), 1, 2, 3);
    CHECK(std::set<Vertex>(k.begin(), k.end()) ==
          std::set<Vertex>{V("000"), V("110"), V("011"), V("101")});
    auto k4 = k_set(V("0000"), 1, 2, 3);
    CHECK(std::set<Vertex>(k4.begin(), k4.end()) ==
          std::set<Vertex>{V("0000"), V("1100"), V("0110"), V("1010")});
    for (size_t i = 0; i < k.size(); ++i)
        for (size_t j = i + 1; j < k.size(); ++j)
            CHECK(distance(k[i], k[j]) == 2);
    CHECK_THROWS_AS(k_set(V("000"), 1, 1, 2), std::invalid_argument);
}

TEST_CASE("subcube vertex sets", "[hypercube]") {
    auto vs = subcube_vertices(SubcubeSpec(3, {{1, 0}}));
    CHECK(std::set<Vertex>(vs.begin(), vs.end()) ==
          std::set<Vertex>{V("000"), V("001"), V("010"), V("011")});
    CHECK(subcube_vertices(SubcubeSpec(5, {{2, 1}, {4, 0}})).size() == 8);
    CHECK(subcube_vertices(SubcubeSpec(4, {})).size() == 16);
    CHECK_THROWS_AS(SubcubeSpec(3, {{1, 0}, {1, 1}}), std::invalid_argument);

    // induced subgraph is a hypercube of the right dimension: degree check
    SubcubeSpec spec(5, {{2, 1}, {4, 0}});
    auto sub = subcube_vertices(spec);
    for (const Vertex& v : sub) {
        int deg = 0;
        for (const Vertex& w : sub)
            if (distance(v, w) == 1) ++deg;
        CHECK(deg == spec.subcube_dim());
    }
}

TEST_CASE("retract_vertex projects onto the subcube", "[hypercube]") {
    SubcubeSpec spec(5, {{1, 0}, {3, 0}});
    CHECK(retract_vertex(V("11111"), spec) == V("01011"));
    CHECK(retract_vertex(V("01010"), spec) == V("01010"));  // identity on the subcube
    CHECK_THROWS_AS(retract_vertex(V("0000"), spec), std::invalid_argument);

    // idempotent + 1-Lipschitz on 1000 random pairs in I_6
    SplitMix64 rng(2);
    SubcubeSpec spec6(6, {{2, 1}, {5, 0}});
    for (int t = 0; t < 1000; ++t) {
        Vertex v(static_cast<std::uint32_t>(rng.below(64)), 6);
        Vertex w(static_cast<std::uint32_t>(rng.below(64)), 6);
        Vertex rv = retract_vertex(v, spec6), rw = retract_vertex(w, spec6);
        CHECK(retract_vertex(rv, spec6) == rv);
        CHECK(distance(rv, rw) <= distance(v, w));
        CHECK(spec6.contains(rv));
    }

    // composing single-coordinate projections in either order agrees
    SubcubeSpec first(6, {{2, 1}}), second(6, {{5, 0}});
    for (std::uint32_t b = 0; b < 64; ++b) {
        Vertex v(b, 6);
        Vertex both = retract_vertex(v, spec6);
        CHECK(retract_vertex(retract_vertex(v, first), second) == both);
        CHECK(retract_vertex(retract_vertex(v, second), first) == both);
    }
}

TEST_CASE("vertex and subcube text formats round-trip", "[hypercube]") {
    for (const char* s : {"0", "1", "01101", "11111111110000000000"}) {
        Vertex v = vertex_from_string(s);
        CHECK(vertex_to_string(v) == s);
    }
    CHECK_THROWS_AS(vertex_from_string("01x"), std::invalid_argument);
    SubcubeSpec spec = subcube_from_string("2=1,4=0", 5);
    CHECK(spec.fixed == std::vector<std::pair<int, int>>{{2, 1}, {4, 0}});
    CHECK(subcube_to_string(spec) == "2=1,4=0");
}
