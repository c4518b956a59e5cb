#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "treeramsey/extremal.hpp"

#include <random>

using namespace treeramsey;

namespace {

BitMatrix complete(int n) {
    BitMatrix m(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) m.add_edge(u, v);
    return m;
}

// K_N minus sparse noise: every vertex loses at most maxLoss random edges,
// except the vertices in the first lowCount positions, which drop to roughly
// lowDegree neighbours. Margins are the caller's business.
BitMatrix noisy_complete(int N, int maxLoss, int lowCount, int lowDegree, std::mt19937_64& rng) {
    BitMatrix m = complete(N);
    std::vector<int> budget(N, maxLoss);
    int tries = 4 * N * std::max(1, maxLoss);
    while (tries-- > 0) {
        int u = int(rng() % N), v = int(rng() % N);
        if (u == v || u < lowCount || v < lowCount) continue;
        if (!m.test(u, v) || budget[u] == 0 || budget[v] == 0) continue;
        m.remove_edge(u, v);
        --budget[u];
        --budget[v];
    }
    for (int w = 0; w < lowCount; ++w) {
        std::vector<int> nbrs = m.row(w).to_vector();
        for (std::size_t i = 0; i + 1 < nbrs.size(); ++i)
            std::swap(nbrs[i], nbrs[i + rng() % (nbrs.size() - i)]);
        for (std::size_t i = lowDegree; i < nbrs.size(); ++i) {
            if (nbrs[i] < lowCount) continue; // keep low vertices off each other
            m.remove_edge(w, nbrs[i]);
        }
    }
    return m;
}

EmbedderConfig desk_config() {
    EmbedderConfig cfg;
    cfg.mu = Rational(1, 200);
    cfg.xi = Rational(1, 2);
    cfg.c = 2;
    cfg.retryBudget = 20;
    cfg.seed = 71;
    return cfg;
}

} // namespace

TEST_CASE("embed_bare_paths on a complete host") {
    auto cfg = desk_config();
    int n = 400;
    auto host = complete(n);
    auto res = embed_bare_paths(host, Tree::path(n), {0, 5}, cfg);
    REQUIRE_MESSAGE(res.ok(), res.failure);
    CHECK(res.embedding->map[0] == 5);
}

TEST_CASE("embed_bare_paths survives sparse noise and low-degree repairs") {
    auto cfg = desk_config();
    int n = 400;
    std::mt19937_64 rng(2024);
    // mu*n = 2: low set of 1 vertex, losses at most 1 per ordinary vertex
    auto host = noisy_complete(n, 1, 1, 2 * 100, rng); // xi*n / ... min degree 200 >= xi*n = 200
    auto res = embed_bare_paths(host, Tree::path(n), {0, n / 2}, cfg);
    REQUIRE_MESSAGE(res.ok(), res.failure);
    CHECK(verify_embedding(host, Tree::path(n), *res.embedding));
}

TEST_CASE("embed_bare_paths hypothesis failures carry stage tags") {
    auto cfg = desk_config();
    auto host = complete(300);
    auto star = Tree::star(300);
    auto res = embed_bare_paths(host, star, {0, 0}, cfg);
    CHECK_FALSE(res.ok());
    CHECK(res.failure == "hypothesis:tree-max-degree");

    auto spiderRes = embed_bare_paths(host, Tree::spider(100, 2), {0, 0}, cfg);
    CHECK_FALSE(spiderRes.ok());
    CHECK(spiderRes.failure == "hypothesis:bare-paths"); // legs of length 2 are too short
}

TEST_CASE("embed_many_leaves on complete and noisy hosts") {
    auto cfg = desk_config();
    auto host = complete(50);
    auto star = Tree::star(40);
    auto res = embed_many_leaves(host, star, {0, 3}, cfg);
    REQUIRE_MESSAGE(res.ok(), res.failure);
    CHECK(res.embedding->map[0] == 3);

    std::mt19937_64 rng(99);
    int n = 201;
    auto spider = Tree::spider(100, 2);
    auto noisy = noisy_complete(300, 1, 0, 0, rng);
    auto res2 = embed_many_leaves(noisy, spider, {0, 7}, cfg);
    REQUIRE_MESSAGE(res2.ok(), res2.failure);
    CHECK(verify_embedding(noisy, spider, *res2.embedding));
    CHECK(spider.size() == n);
}

TEST_CASE("embed_many_leaves rejects a weak anchor") {
    auto cfg = desk_config();
    int N = 300;
    std::mt19937_64 rng(5);
    // vertex 0 has degree far below xi*n
    auto host = noisy_complete(N, 1, 1, 20, rng);
    auto res = embed_many_leaves(host, Tree::spider(80, 2), {0, 0}, cfg);
    CHECK_FALSE(res.ok());
    CHECK(res.failure == "hypothesis:anchor-degree");
}

TEST_CASE("determinism per seed") {
    auto cfg = desk_config();
    auto host = complete(80);
    auto spider = Tree::spider(30, 2);
    auto a = embed_many_leaves(host, spider, {0, 1}, cfg);
    auto b = embed_many_leaves(host, spider, {0, 1}, cfg);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a.embedding->map == b.embedding->map);
}

namespace {

// complete bipartite host on a+b vertices: U1 = [0,a), U2 = [a,a+b)
std::pair<BitMatrix, std::pair<std::vector<int>, std::vector<int>>> complete_bipartite(int a, int b) {
    BitMatrix m(a + b);
    std::vector<int> U1, U2;
    for (int u = 0; u < a; ++u) U1.push_back(u);
    for (int v = a; v < a + b; ++v) U2.push_back(v);
    for (int u : U1)
        for (int v : U2) m.add_edge(u, v);
    return {m, {U1, U2}};
}

} // namespace

TEST_CASE("bipartite bare paths embedder") {
    auto cfg = desk_config();
    int n = 300; // even path: classes 150/150
    auto [host, sides] = complete_bipartite(160, 155);
    auto path = Tree::path(n);
    auto side = path.bipartition();
    int side1 = side[0]; // class of vertex 0 (both classes are size 150)
    auto res = embed_bipartite_bare_paths(host, sides.first, sides.second, path, side1,
                                          {0, sides.first[0]}, cfg);
    REQUIRE_MESSAGE(res.ok(), res.failure);

    // side-size rejection
    auto tiny = complete_bipartite(100, 155);
    auto bad = embed_bipartite_bare_paths(tiny.first, tiny.second.first, tiny.second.second, path,
                                          side1, {0, 0}, cfg);
    CHECK_FALSE(bad.ok());
    CHECK(bad.failure == "hypothesis:side-sizes");
}

TEST_CASE("bipartite leaves embedder") {
    auto cfg = desk_config();
    // broom with many leaves on the small side
    int spine = 41, brooms = 80;
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < spine; ++i) e.emplace_back(i, i + 1);
    for (int i = 0; i < brooms; ++i) e.emplace_back(spine - 1, spine + i);
    Tree broom(spine + brooms, std::move(e));
    auto p = profile(broom);
    CHECK(p.t1 == 100);

    auto [host, sides] = complete_bipartite(130, 25);
    auto side = broom.bipartition();
    int c0 = 0;
    for (int s : side) c0 += (s == 0);
    int bigClass = (c0 == p.t1) ? 0 : 1;
    auto res = embed_bipartite_leaves(host, sides.first, sides.second, broom, bigClass, cfg);
    REQUIRE_MESSAGE(res.ok(), res.failure);

    auto small = complete_bipartite(130, 15);
    auto bad =
        embed_bipartite_leaves(small.first, small.second.first, small.second.second, broom,
                               bigClass, cfg);
    CHECK_FALSE(bad.ok());
    CHECK(bad.failure == "hypothesis:side-sizes");
}

TEST_CASE("bipartite dispatcher") {
    auto cfg = desk_config();
    auto cat = make_caterpillar(150, 100);
    auto p = profile(cat);
    auto [host, sides] = complete_bipartite(210, 110);
    auto side = cat.bipartition();
    int c0 = 0;
    for (int s : side) c0 += (s == 0);
    int bigClass = (c0 == p.t1) ? 0 : 1;
    auto res = embed_bipartite_any(host, sides.first, sides.second, cat, bigClass, cfg);
    REQUIRE_MESSAGE(res.ok(), res.failure);

    auto narrow = complete_bipartite(150, 110);
    auto bad = embed_bipartite_any(narrow.first, narrow.second.first, narrow.second.second, cat,
                                   bigClass, cfg);
    CHECK_FALSE(bad.ok());
    CHECK(bad.failure == "hypothesis:size-window");
}

namespace {

TwoColouring pad_with_vertex(const TwoColouring& g, const std::vector<int>& redTo) {
    TwoColouring out(g.size() + 1);
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
            if (g.is_red(u, v)) out.set_red(u, v);
    for (int v : redTo) out.set_red(g.size(), v);
    return out;
}

} // namespace

TEST_CASE("type 1 strategy: inside branch on padded B1") {
    auto cfg = desk_config();
    auto T = make_caterpillar(8, 2);
    auto S = make_caterpillar(5, 4);
    ConstructionParams p{ConstructionKind::B1, 8, 2, 5, 4};
    auto base = make_construction(p); // red cliques 9 and 3
    std::vector<int> u1(9), u2{9, 10, 11};
    for (int i = 0; i < 9; ++i) u1[i] = i;
    auto g = pad_with_vertex(base, u1); // vertex 12 red-complete to U1

    ExtremalWitness w;
    w.type = 1;
    w.mu = Rational(1, 4);
    w.U1 = u1;
    w.U2 = u2;
    REQUIRE(verify_extremal(g, w, T, S));
    auto res = extremal_strategy(g, T, S, w, cfg);
    REQUIRE_MESSAGE(res.ok(), (res.branch + " / " + res.failure));
    CHECK(res.branch == "type1:inside");
    CHECK(*res.colour == Colour::Red);
}

TEST_CASE("type 1 strategy: across branch with a blue-complete extra vertex") {
    auto cfg = desk_config();
    auto T = make_caterpillar(8, 2);
    auto S = make_caterpillar(5, 4);
    ConstructionParams p{ConstructionKind::B1, 8, 2, 5, 4};
    auto base = make_construction(p);
    auto g = pad_with_vertex(base, {}); // vertex 12 blue to everything

    ExtremalWitness w;
    w.type = 1;
    w.mu = Rational(1, 4);
    for (int i = 0; i < 9; ++i) w.U1.push_back(i);
    w.U2 = {9, 10, 11};
    REQUIRE(verify_extremal(g, w, T, S));
    auto res = extremal_strategy(g, T, S, w, cfg);
    REQUIRE_MESSAGE(res.ok(), (res.branch + " / " + res.failure));
    CHECK(res.branch == "type1:across");
    CHECK(*res.colour == Colour::Blue);
}

TEST_CASE("type 2 strategy: inside branch on padded B2") {
    auto cfg = desk_config();
    auto T = make_caterpillar(6, 4);
    auto S = make_caterpillar(6, 5);
    ConstructionParams p{ConstructionKind::B2, 6, 4, 6, 5};
    auto baseRedInverted = make_construction(p); // blue cliques 10 and 3, red between
    // the pad vertex is blue-complete to the big blue clique U1 = [0,10)
    TwoColouring g(baseRedInverted.size() + 1);
    for (int u = 0; u < baseRedInverted.size(); ++u)
        for (int v = u + 1; v < baseRedInverted.size(); ++v)
            if (baseRedInverted.is_red(u, v)) g.set_red(u, v);
    for (int v = 10; v < baseRedInverted.size(); ++v) g.set_red(baseRedInverted.size(), v);

    ExtremalWitness w;
    w.type = 2;
    w.mu = Rational(1, 4);
    for (int i = 0; i < 10; ++i) w.U1.push_back(i);
    w.U2 = {10, 11, 12};
    REQUIRE(verify_extremal(g, w, T, S));
    auto res = extremal_strategy(g, T, S, w, cfg);
    REQUIRE_MESSAGE(res.ok(), (res.branch + " / " + res.failure));
    CHECK(res.branch == "type2:inside");
    CHECK(*res.colour == Colour::Blue);
}

TEST_CASE("type 3 strategy: one-outside branch") {
    auto cfg = desk_config();
    auto T = make_caterpillar(6, 4);
    auto S = make_caterpillar(6, 5);
    ConstructionParams p{ConstructionKind::B3, 6, 4, 6, 5};
    auto base = make_construction(p); // blue cliques of size 5, red between
    auto g = pad_with_vertex(base, {}); // w = 10, blue-complete

    ExtremalWitness w;
    w.type = 3;
    w.mu = Rational(1, 5);
    w.U1 = {0, 1, 2, 3, 4};
    w.U2 = {5, 6, 7, 8, 9};
    REQUIRE(verify_extremal(g, w, T, S));
    auto res = extremal_strategy(g, T, S, w, cfg);
    REQUIRE_MESSAGE(res.ok(), (res.branch + " / " + res.failure));
    CHECK(res.branch == "type3:one-outside");
    CHECK(*res.colour == Colour::Blue);
}

TEST_CASE("type 4 strategy: one-outside branch") {
    auto cfg = desk_config();
    auto T = make_caterpillar(5, 4);
    auto S = make_caterpillar(6, 5);
    ConstructionParams p{ConstructionKind::B4, 5, 4, 6, 5};
    auto base = make_construction(p); // red cliques of size 5, blue between
    std::vector<int> everyone(base.size());
    for (int i = 0; i < base.size(); ++i) everyone[i] = i;
    auto g = pad_with_vertex(base, everyone); // w red-complete to both cliques

    ExtremalWitness w;
    w.type = 4;
    w.mu = Rational(1, 5);
    w.U1 = {0, 1, 2, 3, 4};
    w.U2 = {5, 6, 7, 8, 9};
    REQUIRE(verify_extremal(g, w, T, S));
    auto res = extremal_strategy(g, T, S, w, cfg);
    REQUIRE_MESSAGE(res.ok(), (res.branch + " / " + res.failure));
    CHECK(res.branch == "type4:one-outside");
    CHECK(*res.colour == Colour::Red);
}

TEST_CASE("strategy rejects a bad witness") {
    auto cfg = desk_config();
    auto T = make_caterpillar(6, 4);
    auto S = make_caterpillar(6, 5);
    ConstructionParams p{ConstructionKind::B3, 6, 4, 6, 5};
    auto g = make_construction(p);
    ExtremalWitness w;
    w.type = 3;
    w.mu = Rational(1, 100); // far too tight for the exact construction
    w.U1 = {0, 1, 2, 3, 4};
    w.U2 = {5, 6, 7, 8, 9};
    CHECK_FALSE(verify_extremal(g, w, T, S));
    CHECK_THROWS_AS(extremal_strategy(g, T, S, w, cfg), std::invalid_argument);
}
