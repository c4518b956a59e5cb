#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "treeramsey/ramsey.hpp"

using namespace treeramsey;

TEST_CASE("lower_bound formula") {
    TreeProfile edge{2, 1, 1, 1, 2};
    CHECK(lower_bound(edge, edge) == 2);

    TreeProfile p4{4, 2, 2, 2, 2};
    CHECK(lower_bound(p4, p4) == 5);

    TreeProfile t13{13, 8, 5, 0, 0};
    TreeProfile s13{11, 8, 3, 0, 0};
    CHECK(lower_bound(t13, s13) == 15);

    CHECK_THROWS(lower_bound(edge, p4)); // needs |T| >= |S|
}

TEST_CASE("avoiding colouring search: base cases") {
    Tree e(2, {{0, 1}});
    auto r1 = avoiding_colouring_search(e, e, 1);
    CHECK(r1.exhausted);
    CHECK(r1.colouring.has_value());

    auto r2 = avoiding_colouring_search(e, e, 2);
    CHECK(r2.exhausted);
    CHECK_FALSE(r2.colouring.has_value()); // the single edge is red or blue

    auto p4 = Tree::path(4);
    auto r3 = avoiding_colouring_search(p4, p4, 4);
    CHECK(r3.exhausted);
    REQUIRE(r3.colouring.has_value());
    auto rep = verify_avoids(*r3.colouring, p4, p4);
    CHECK_FALSE(rep.redT);
    CHECK_FALSE(rep.blueS);

    auto r4 = avoiding_colouring_search(p4, p4, 5);
    CHECK(r4.exhausted);
    CHECK_FALSE(r4.colouring.has_value());
}

TEST_CASE("budget exhaustion reports not-exhausted") {
    auto p5 = Tree::path(5);
    auto r = avoiding_colouring_search(p5, p5, 6, 10);
    CHECK_FALSE(r.exhausted);
    auto rr = ramsey_exact(p5, p5, 8, 10);
    CHECK(rr.unknown);
}

TEST_CASE("ramsey_exact small values and certificates") {
    Tree e(2, {{0, 1}});
    auto re = ramsey_exact(e, e, 4);
    CHECK(re.R == 2);

    auto p4 = Tree::path(4);
    auto r = ramsey_exact(p4, p4, 8);
    REQUIRE(r.R.has_value());
    CHECK(*r.R == 5);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->N == 4);
    auto verdict = decide_arrows(r.certificate->colouring, p4, p4);
    CHECK(verdict.verdict == ArrowVerdict::Neither);

    auto star = ramsey_exact(Tree::star(3), Tree::star(3), 5);
    CHECK(star.R == 3);

    auto mixed = ramsey_exact(Tree::path(4), Tree::star(3), 6);
    CHECK(mixed.R == 4);
}

TEST_CASE("search is deterministic") {
    auto p4 = Tree::path(4);
    auto a = avoiding_colouring_search(p4, p4, 4);
    auto b = avoiding_colouring_search(p4, p4, 4);
    CHECK(a.nodes == b.nodes);
    CHECK(*a.colouring == *b.colouring);
}

TEST_CASE("parallel verdicts match single-threaded ones") {
    auto p5 = Tree::path(5);
    auto seq = avoiding_colouring_search(p5, p5, 6);
    auto par = avoiding_colouring_search(p5, p5, 6, kDefaultNodeBudget, 4);
    CHECK(seq.exhausted == par.exhausted);
    CHECK(seq.colouring.has_value() == par.colouring.has_value());

    auto seq5 = ramsey_exact(p5, p5, 7);
    auto par5 = ramsey_exact(p5, p5, 7, kDefaultNodeBudget, 4);
    CHECK(seq5.R == par5.R);
    CHECK(seq5.R == 6);
}

TEST_CASE("known values table is self-consistent") {
    for (auto& kv : known_values()) {
        CAPTURE(kv.provenance);
        auto r = ramsey_exact(kv.t, kv.s, kv.value + 1);
        REQUIRE(r.R.has_value());
        CHECK(*r.R == kv.value);
    }
}

TEST_CASE("prop 1.2 is a lower bound across the small catalogue sample") {
    // Full |T|,|S| <= 5 is the acceptance suite; a slice here keeps the unit
    // run quick.
    auto cat = small_tree_catalogue(2, 4);
    for (auto& t : cat)
        for (auto& s : cat) {
            if (t.size() < s.size()) continue;
            auto rbar = lower_bound(profile(t), profile(s));
            auto r = ramsey_exact(t, s, rbar + 4);
            REQUIRE(r.R.has_value());
            CHECK(*r.R >= rbar);
        }
}
