#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "treeramsey/embed.hpp"

#include <algorithm>
#include <random>

using namespace treeramsey;

namespace {

BitMatrix complete(int n) {
    BitMatrix m(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) m.add_edge(u, v);
    return m;
}

// Oracle: try every injective placement of the pattern vertices.
bool permutation_oracle(const BitMatrix& host, const Tree& pattern) {
    if (pattern.size() > host.size()) return false;
    std::vector<int> hosts(host.size());
    for (int i = 0; i < host.size(); ++i) hosts[i] = i;
    std::vector<int> map(pattern.size(), -1);
    std::vector<char> used(host.size(), 0);
    std::function<bool(int)> place = [&](int p) -> bool {
        if (p == pattern.size()) return true;
        for (int h = 0; h < host.size(); ++h) {
            if (used[h]) continue;
            bool ok = true;
            for (int w : pattern.neighbours(p))
                if (w < p && !host.test(map[w], h)) { ok = false; break; }
            if (!ok) continue;
            map[p] = h;
            used[h] = 1;
            if (place(p + 1)) return true;
            used[h] = 0;
            map[p] = -1;
        }
        return false;
    };
    return place(0);
}

BitMatrix random_host(int n, double p, std::mt19937_64& rng) {
    BitMatrix m(n);
    std::uniform_real_distribution<double> coin(0, 1);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng) < p) m.add_edge(u, v);
    return m;
}

} // namespace

TEST_CASE("contains_tree basics") {
    auto k3 = complete(3);
    auto hit = contains_tree(k3, Tree::path(3));
    CHECK(hit.found());
    CHECK(verify_embedding(k3, Tree::path(3), *hit.embedding));

    BitMatrix matching(4);
    matching.add_edge(0, 1);
    matching.add_edge(2, 3);
    CHECK(contains_tree(matching, Tree::path(3)).status == SearchStatus::Absent);
}

TEST_CASE("anchored searches force assignments") {
    auto k4 = complete(4);
    auto res = contains_tree(k4, Tree::path(4), kDefaultNodeBudget, {{0, 2}, {1, 3}});
    REQUIRE(res.found());
    CHECK(res.embedding->map[0] == 2);
    CHECK(res.embedding->map[1] == 3);

    BitMatrix path(3);
    path.add_edge(0, 1);
    path.add_edge(1, 2);
    // anchor the middle of a 3-path onto a leaf of the host path: impossible
    auto bad = contains_tree(path, Tree::path(3), kDefaultNodeBudget, {{1, 0}});
    CHECK(bad.status == SearchStatus::Absent);
}

TEST_CASE("budget exhaustion is Unknown, not Absent") {
    auto host = complete(12);
    auto res = contains_tree(host, Tree::path(12), 3);
    CHECK(res.status == SearchStatus::Unknown);
}

TEST_CASE("contains_mono and decide_arrows") {
    TwoColouring allRed(5);
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) allRed.set_red(u, v);
    CHECK(contains_mono(allRed, Tree::path(5), Colour::Red).found());
    CHECK(contains_mono(allRed, Tree::path(2), Colour::Blue).status == SearchStatus::Absent);

    TwoColouring k2(2);
    k2.set_red(0, 1);
    auto v = decide_arrows(k2, Tree(2, {{0, 1}}), Tree(2, {{0, 1}}));
    CHECK(v.verdict == ArrowVerdict::RedT);

    auto unknown = decide_arrows(complete(1).size() ? allRed : allRed, Tree::path(5), Tree::path(5), 2);
    CHECK(unknown.verdict != ArrowVerdict::Neither);
}

TEST_CASE("oracle equivalence on random pairs") {
    std::mt19937_64 rng(123321);
    std::uniform_real_distribution<double> coin(0, 1);
    auto patterns = small_tree_catalogue(2, 6);
    for (int iter = 0; iter < 500; ++iter) {
        int n = 2 + int(rng() % 6); // host up to 7
        auto host = random_host(n, 0.2 + 0.6 * coin(rng), rng);
        auto& pat = patterns[rng() % patterns.size()];
        auto mine = contains_tree(host, pat);
        REQUIRE(mine.status != SearchStatus::Unknown);
        CHECK(mine.found() == permutation_oracle(host, pat));
        if (mine.found()) CHECK(verify_embedding(host, pat, *mine.embedding));
    }
}

TEST_CASE("determinism") {
    std::mt19937_64 rng(42);
    auto host = random_host(7, 0.5, rng);
    auto a = contains_tree(host, Tree::path(5));
    auto b = contains_tree(host, Tree::path(5));
    CHECK(a.status == b.status);
    CHECK(a.nodes == b.nodes);
    if (a.found()) CHECK(a.embedding->map == b.embedding->map);
}
