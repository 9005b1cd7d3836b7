#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ov/origami.hpp"
#include "test_util.hpp"

using namespace ov::origami;

namespace {

Origami trivial() { return new_origami(1, Perm(1), Perm(1)); }

// Paper numbering: top square 1, bottom row 2,3,4.
Origami l23_paper() { return parse_origami("4; (2 3 4); (2 1)"); }

Origami d_origami() { return parse_origami("5; (1 2 3); (1 4 5)(2 3)"); }

Origami conjugate(const Origami& o, const Perm& s) {
    // s^-1 * sigma * s under left-to-right composition is simultaneous
    // conjugation; any fixed convention works for the invariance test.
    Perm si = s.inverse();
    return Origami{o.d, si.compose(o.sigma_a).compose(s), si.compose(o.sigma_b).compose(s)};
}

}  // namespace

TEST_CASE("new_origami validation") {
    CHECK(trivial().d == 1);
    CHECK(l23_paper().d == 4);
    CHECK(d_origami().d == 5);

    // non-transitive pair: diagnostic carries the orbit partition
    try {
        new_origami(4, Perm::from_cycles("(1 2)", 4), Perm::from_cycles("(2 1)", 4));
        FAIL("expected non-transitive rejection");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("orbits") != std::string::npos);
        CHECK(std::string(e.what()).find("{3}") != std::string::npos);
    }

    CHECK_THROWS_AS(new_origami(3, Perm(2), Perm(3)), std::invalid_argument);
    CHECK_THROWS_AS(Perm(std::vector<int>{0, 0, 1}), std::invalid_argument);
}

TEST_CASE("canonical form: trivial fixed point, L(2,3) brute force over S4") {
    CHECK(canonical_form(trivial()).form.d == 1);
    CHECK(canonical_form(trivial()).key == std::vector<int>{0, 0});

    const Origami l = l23_paper();
    const CanonicalForm ref = canonical_form(l);
    std::vector<int> img(4);
    std::iota(img.begin(), img.end(), 0);
    int count = 0;
    do {
        Perm s{std::vector<int>(img)};
        CHECK(canonical_form(conjugate(l, s)) == ref);
        ++count;
    } while (std::next_permutation(img.begin(), img.end()));
    CHECK(count == 24);

    CHECK_FALSE(canonical_form(l) == canonical_form(d_origami()));
}

TEST_CASE("canonical form conjugation invariance, 200 random origamis") {
    std::mt19937 rng(20260809);
    std::uniform_int_distribution<int> deg(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
        Origami o = ov::test::random_origami(rng, deg(rng));
        CanonicalForm ref = canonical_form(o);
        for (int k = 0; k < 20; ++k) {
            Perm s = ov::test::random_perm(rng, o.d);
            CHECK(canonical_form(conjugate(o, s)) == ref);
        }
    }
}

TEST_CASE("vertex structure of the worked examples") {
    CHECK(vertex_structure(trivial()) == std::vector<int>{1});
    CHECK(vertex_structure(l23_paper()) == std::vector<int>{1, 3});
    CHECK(vertex_structure(d_origami()) == std::vector<int>{1, 2, 2});
}

TEST_CASE("surface genus") {
    CHECK(surface_genus(trivial()) == 1);
    CHECK(surface_genus(l23_paper()) == 2);
    CHECK(surface_genus(d_origami()) == 2);
}

TEST_CASE("ramification points over infinity") {
    CHECK(ramification_points(trivial()) == 0);
    CHECK(ramification_points(d_origami()) == 2);
    // The single order-3 cone point; the second vertex class of L(2,3) is an
    // unramified preimage (cycle length 1).
    CHECK(ramification_points(l23_paper()) == 1);
}

TEST_CASE("vertex structure invariants on random origamis") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> deg(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
        Origami o = ov::test::random_origami(rng, deg(rng));
        auto vs = vertex_structure(o);
        CHECK(std::accumulate(vs.begin(), vs.end(), 0) == o.d);
        CHECK((o.d - static_cast<int>(vs.size())) % 2 == 0);
        CHECK(surface_genus(o) >= 1);
    }
}

TEST_CASE("parsing: cycles, images, round trip, errors") {
    Origami t = parse_origami("1; (); ()");
    CHECK(t.d == 1);

    Origami d5 = parse_origami("5; (1 2 3); (1 4 5)(2 3)");
    CHECK(d5.sigma_b.apply(0) == 3);

    Origami oneline = parse_origami("4; [2,3,4,1]; [1,2,3,4]");
    CHECK(oneline.sigma_a.cycle_string() == "(1 2 3 4)");

    Origami v = parse_origami("4; (1 2)(3 4); (1 3)(2 4)");
    CHECK(v.d == 4);

    for (const Origami& o : {t, d5, v}) {
        Origami round = parse_origami(origami_to_text(o));
        CHECK(round.sigma_a == o.sigma_a);
        CHECK(round.sigma_b == o.sigma_b);
    }

    CHECK_THROWS_AS(parse_origami("4; (1 2 5); ()"), std::invalid_argument);
    CHECK_THROWS_AS(parse_origami("garbage"), std::invalid_argument);
    CHECK_THROWS_AS(parse_origami("4; (1 2)(2 3); ()"), std::invalid_argument);
}

TEST_CASE("dot export mentions both edge kinds") {
    std::string dot = origami_to_dot(l23_paper());
    CHECK(dot.find("style=dashed") != std::string::npos);
    CHECK(dot.find("label=\"x\"") != std::string::npos);
}
