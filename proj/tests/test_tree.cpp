#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "treeramsey/tree.hpp"

#include <random>
#include <set>

using namespace treeramsey;

namespace {

// Independent check that a decomposition really is two induced subtrees
// sharing exactly one vertex and covering everything.
bool decomposition_ok(const Tree& t, const TreeDecomposition& d) {
    std::set<int> p1(d.part1.begin(), d.part1.end());
    std::set<int> p2(d.part2.begin(), d.part2.end());
    std::set<int> inter;
    for (int v : p1)
        if (p2.count(v)) inter.insert(v);
    if (inter.size() != 1 || *inter.begin() != d.sharedVertex) return false;
    if (int(p1.size() + p2.size()) != t.size() + 1) return false;
    for (auto part : {&d.part1, &d.part2}) {
        // induced subgraph must be a tree: edges == size-1 and connected
        std::set<int> verts(part->begin(), part->end());
        int edges = 0;
        for (auto& [u, v] : t.edges())
            if (verts.count(u) && verts.count(v)) ++edges;
        if (edges != int(verts.size()) - 1) return false;
        std::set<int> seen{*part->begin()};
        std::vector<int> stack{*part->begin()};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : t.neighbours(u))
                if (verts.count(w) && !seen.count(w)) { seen.insert(w); stack.push_back(w); }
        }
        if (seen.size() != verts.size()) return false;
    }
    return true;
}

bool paths_disjoint_and_bare(const Tree& t, const std::vector<std::vector<int>>& paths, int k) {
    std::set<int> used;
    for (auto& p : paths) {
        if (int(p.size()) != k + 1) return false;
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            if (!t.has_edge(p[i], p[i + 1])) return false;
        for (std::size_t i = 1; i + 1 < p.size(); ++i)
            if (t.degree(p[i]) != 2) return false;
        for (int v : p)
            if (!used.insert(v).second) return false;
    }
    return true;
}

} // namespace

TEST_CASE("profile basics") {
    CHECK(profile(Tree(2, {{0, 1}})) == TreeProfile{2, 1, 1, 1, 2});
    CHECK(profile(Tree::path(5)) == TreeProfile{5, 3, 2, 2, 2});
    auto p = profile(Tree::star(5)); // K_{1,4}
    CHECK(p.t1 == 4);
    CHECK(p.t2 == 1);
    CHECK(p.maxDegree == 4);
    CHECK(p.leafCount == 4);
}

TEST_CASE("tree validation rejects junk") {
    CHECK_THROWS(Tree(3, {{0, 1}}));
    CHECK_THROWS(Tree(3, {{0, 1}, {0, 3}}));
    CHECK_THROWS(Tree(4, {{0, 1}, {2, 3}, {0, 1}}));
}

TEST_CASE("make_caterpillar realises profiles within the degree bound") {
    CHECK(make_caterpillar(1, 1).size() == 2);
    auto star = make_caterpillar(3, 1);
    CHECK(profile(star).t1 == 3);
    CHECK(profile(star).maxDegree == 3);

    auto c = make_caterpillar(5, 3);
    auto p = profile(c);
    CHECK(p.n == 8);
    CHECK(p.t1 == 5);
    CHECK(p.t2 == 3);
    CHECK(p.maxDegree <= 3); // ceil(9/3)

    for (int t2 = 1; t2 <= 30; ++t2)
        for (int t1 = t2; t1 <= 30; ++t1) {
            auto t = make_caterpillar(t1, t2);
            auto q = profile(t);
            CHECK(q.t1 == t1);
            CHECK(q.t2 == t2);
            CHECK(q.maxDegree <= (t1 + t2 + 1 + t2 - 1) / t2);
        }
    CHECK_THROWS(make_caterpillar(2, 3));
}

TEST_CASE("pad_large_class grows the smaller class") {
    auto star = Tree::star(5); // K_{1,4}
    CHECK(pad_large_class(star, 0).size() == 5);

    auto padded = pad_large_class(star, 3);
    auto p = profile(padded);
    CHECK(p.n == 8);
    CHECK(p.t1 == 4);
    CHECK(p.t2 == 4);
    CHECK(p.maxDegree == 4);

    // a path has a single leaf per class, so k=2 is not available
    CHECK_THROWS(pad_large_class(Tree::path(4), 2));
    auto one = pad_large_class(Tree::path(4), 1);
    CHECK(profile(one).n == 5);
}

TEST_CASE("bare_paths finds vertex-disjoint degree-2 runs") {
    auto onPath9 = bare_paths(Tree::path(9), 4);
    CHECK(paths_disjoint_and_bare(Tree::path(9), onPath9, 4));
    CHECK(onPath9.size() == 1); // two disjoint 5-vertex paths cannot fit in 9 vertices

    CHECK(bare_paths(Tree::path(20), 4).size() == 4);
    CHECK(bare_paths(Tree::star(6), 4).empty());

    auto spider = Tree::spider(3, 5);
    auto legs = bare_paths(spider, 4);
    CHECK(legs.size() == 3);
    CHECK(paths_disjoint_and_bare(spider, legs, 4));
}

TEST_CASE("paths-vs-leaves dichotomy") {
    auto w1 = verify_paths_leaf_dichotomy(Tree::path(20), 4, 3);
    CHECK_FALSE(w1.leafBranch);
    CHECK(w1.paths.size() == 4);

    auto w2 = verify_paths_leaf_dichotomy(Tree::star(10), 2, 5);
    CHECK(w2.leafBranch);
    CHECK(w2.leaves.size() == 9);

    auto w3 = verify_paths_leaf_dichotomy(Tree::path(4), 1, 1);
    CHECK(w3.leafBranch);
}

TEST_CASE("decompose_balanced stays inside the window") {
    auto d0 = decompose_balanced(Tree(2, {{0, 1}}));
    CHECK(decomposition_ok(Tree(2, {{0, 1}}), d0));

    auto mid = decompose_balanced(Tree::path(9));
    CHECK(decomposition_ok(Tree::path(9), mid));
    CHECK(mid.part1.size() == 5);
    CHECK(mid.part2.size() == 5);

    auto st = decompose_balanced(Tree::star(9));
    CHECK(decomposition_ok(Tree::star(9), st));
    CHECK(st.part1.size() == 5);
    CHECK(st.part2.size() == 5);
}

TEST_CASE("decompose_bipartite_skew windows") {
    // broom: path of 10 with 30 leaves at the far end
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < 10; ++i) e.emplace_back(i, i + 1);
    for (int i = 10; i < 40; ++i) e.emplace_back(9, i);
    Tree broom(40, std::move(e));
    Rational mu(1, 100);
    auto d = decompose_bipartite_skew(broom, mu);
    REQUIRE(d.has_value());
    CHECK(decomposition_ok(broom, *d));
    auto side = broom.bipartition();
    int big = profile(broom).t1;
    int c0 = 0;
    for (int s : side) c0 += (s == 0);
    int bigSide = (c0 == big) ? 0 : 1;
    int skew = 0;
    for (int v : d->part1) skew += (side[v] == bigSide) ? 1 : -1;
    CHECK(Rational(skew) >= Rational(10) * mu * 40);
    CHECK(Rational(skew) <= Rational(25) * mu * 40);

    CHECK_FALSE(decompose_bipartite_skew(Tree::path(10), mu).has_value());

    auto ds = decompose_bipartite_skew(Tree::star(41), mu);
    REQUIRE(ds.has_value());
    int k = int(ds->part1.size()) - 1;
    CHECK(k - 1 >= 5);
    CHECK(k - 1 <= 10);
}

TEST_CASE("cut_with_small_boundary") {
    Rational eps(1, 100);
    auto cut = cut_with_small_boundary(Tree::path(30), eps);
    REQUIRE(cut.has_value());
    CHECK(cut->boundary.size() <= 2);
    CHECK(Rational(int(cut->setA.size())) <= (Rational(2, 3) - eps) * 30);
    CHECK(Rational(int(cut->setB.size())) <= (Rational(2, 3) - eps) * 30);

    // any returned cut passes the structural verifier
    auto st = cut_with_small_boundary(Tree::star(6), eps);
    if (st) {
        std::set<int> A(st->setA.begin(), st->setA.end());
        for (auto& [u, v] : Tree::star(6).edges()) {
            bool ua = A.count(u), va = A.count(v);
            if (ua != va) {
                int inside = ua ? u : v;
                CHECK(std::count(st->boundary.begin(), st->boundary.end(), inside) == 1);
            }
        }
        if (st->boundary.size() == 2)
            CHECK_FALSE(Tree::star(6).has_edge(st->boundary[0], st->boundary[1]));
    }
    CHECK_THROWS(cut_with_small_boundary(Tree::path(10), Rational(1, 2)));
}

TEST_CASE("perfect ternary trees") {
    CHECK(make_perfect_ternary(0).size() == 1);
    auto t1 = make_perfect_ternary(1);
    CHECK(t1.size() == 4);
    CHECK(profile(t1).maxDegree == 3);
    auto t2 = make_perfect_ternary(2);
    CHECK(t2.size() == 13);
    CHECK(profile(t2).leafCount == 9);
    CHECK(ternary_leaves(2).size() == 9);
}

TEST_CASE("glue_trees composes sizes") {
    auto base = make_perfect_ternary(1);
    CHECK(glue_trees(base, {}, {}).size() == 4);

    std::vector<std::pair<Tree, int>> glued;
    for (int i = 0; i < 3; ++i) glued.emplace_back(Tree::path(4), 0);
    auto big = glue_trees(base, ternary_leaves(1), glued);
    CHECK(big.size() == 13);

    std::vector<std::pair<Tree, int>> singles;
    for (int i = 0; i < 3; ++i) singles.emplace_back(Tree(1, {}), 0);
    CHECK(glue_trees(base, ternary_leaves(1), singles).size() == 4);

    CHECK_THROWS(glue_trees(base, {0}, {{Tree::path(2), 0}})); // 0 is the root, not a leaf
}

TEST_CASE("glue onto ternary leaves matches the closed size formula") {
    for (int C = 1; C <= 3; ++C) {
        for (int r : {1, 2, 4}) {
            auto leaves = ternary_leaves(C);
            std::vector<std::pair<Tree, int>> glued;
            for (std::size_t i = 0; i < leaves.size(); ++i) glued.emplace_back(Tree::path(r), 0);
            auto t = glue_trees(make_perfect_ternary(C), leaves, glued);
            long pow3 = 1;
            for (int i = 0; i < C; ++i) pow3 *= 3;
            CHECK(t.size() == (3 * pow3 - 1) / 2 + pow3 * (r - 1));
        }
    }
}

TEST_CASE("random trees: leaf bound and dichotomy never fail") {
    std::mt19937_64 rng(20240817);
    for (int iter = 0; iter < 500; ++iter) {
        int n = 2 + int(rng() % 39);
        auto t = random_tree(n, rng);
        auto p = profile(t);
        CHECK(p.leafCount >= p.t1 - p.t2 + 1);

        auto d = decompose_balanced(t);
        CHECK(decomposition_ok(t, d));
        int lo = (n + 2) / 3, hi = (2 * n + 2) / 3;
        CHECK(int(d.part1.size()) >= lo);
        CHECK(int(d.part1.size()) <= hi);
        CHECK(int(d.part2.size()) >= lo);
        CHECK(int(d.part2.size()) <= hi);
    }
    for (int iter = 0; iter < 300; ++iter) {
        int n = 2 + int(rng() % 59);
        int k = 1 + int(rng() % 5);
        int ell = 1 + int(rng() % n);
        auto t = random_tree(n, rng);
        CHECK_NOTHROW(verify_paths_leaf_dichotomy(t, k, ell));
        auto paths = bare_paths(t, k);
        CHECK(paths_disjoint_and_bare(t, paths, k));
    }
}

TEST_CASE("canonical codes separate the small catalogue") {
    auto cat = small_tree_catalogue(1, 7);
    // 1,1,1,2,3,6,11 isomorphism classes for n=1..7
    CHECK(cat.size() == 1 + 1 + 1 + 2 + 3 + 6 + 11);
    CHECK(canonical_code(Tree::path(5)) != canonical_code(Tree::star(5)));
    CHECK(canonical_code(Tree::path(5)) == canonical_code(Tree(5, {{4, 2}, {2, 0}, {0, 1}, {1, 3}})));
}

TEST_CASE("edge orbit representatives") {
    auto reps = edge_orbit_reps(Tree::path(6));
    CHECK(reps.size() == 3); // five path edges fold into three orbits
    CHECK(edge_orbit_reps(Tree::star(7)).size() == 1);
}
