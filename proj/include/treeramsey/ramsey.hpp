#pragma once

// The four-construction lower bound formula, exhaustive avoiding-colouring
// search over K_N, and exact small Ramsey numbers with machine-checkable
// certificates.

#include "treeramsey/colouring.hpp"
#include "treeramsey/embed.hpp"
#include "treeramsey/tree.hpp"

#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace treeramsey {

// max{n+tau2, nu+min(t2,nu), min(2*t1,2*nu), 2*tau1} - 1, for n >= nu.
inline int lower_bound(const TreeProfile& pT, const TreeProfile& pS) {
    if (pT.n < pS.n) throw std::invalid_argument("lower_bound needs |T| >= |S|; swap the pair");
    int n = pT.n, nu = pS.n;
    int best = n + pS.t2;
    best = std::max(best, nu + std::min(pT.t2, nu));
    best = std::max(best, std::min(2 * pT.t1, 2 * nu));
    best = std::max(best, 2 * pS.t1);
    return best - 1;
}

struct Certificate {
    int N = 0;
    TwoColouring colouring;
    bool redTAbsent = false;
    bool blueSAbsent = false;
    std::string provenance; // "exact" or "oracle"
};

struct ColouringSearchResult {
    std::optional<TwoColouring> colouring; // an avoiding colouring when one exists
    bool exhausted = false;                // negative answers are only valid when true
    std::uint64_t nodes = 0;               // edge assignments explored
};

namespace detail {

// One worker owns a branch of the search fixed by the red degree d of vertex
// 0 (symmetry: vertex 0's red neighbours can be assumed to be 1..d).
struct ColouringSearch {
    const Tree& T;
    const Tree& S;
    int N;
    std::atomic<std::uint64_t>& nodes;
    std::uint64_t budget;
    std::atomic<int>& bestFound; // smallest d that already has an avoider
    int myDegree;

    std::vector<std::pair<int, int>> patternEdgesT, patternEdgesS;
    // Assigned edges only; the complement of red is not blue until the end.
    BitMatrix red, blue;
    std::vector<std::pair<int, int>> order; // edges (u,v), u < v, vertex-incremental
    bool unknown = false;

    ColouringSearch(const Tree& t, const Tree& s, int n, std::atomic<std::uint64_t>& nd,
                    std::uint64_t b, std::atomic<int>& bf, int d)
        : T(t), S(s), N(n), nodes(nd), budget(b), bestFound(bf), myDegree(d), red(n), blue(n) {
        patternEdgesT = edge_orbit_reps(T);
        patternEdgesS = edge_orbit_reps(S);
        for (int v = 1; v < N; ++v)
            for (int u = 0; u < v; ++u) order.emplace_back(u, v);
    }

    TwoColouring snapshot() const {
        TwoColouring g(N);
        for (int v = 1; v < N; ++v)
            for (int u = 0; u < v; ++u)
                if (red.test(u, v)) g.set_red(u, v);
        return g;
    }

    // A new monochromatic edge can only create copies through itself.
    bool creates_copy(Colour c, int u, int v) {
        const Tree& pat = (c == Colour::Red) ? T : S;
        if (pat.size() < 2) return true;
        auto& reps = (c == Colour::Red) ? patternEdgesT : patternEdgesS;
        const BitMatrix& host = (c == Colour::Red) ? red : blue;
        for (auto& [a, b] : reps) {
            if (contains_tree(host, pat, ~std::uint64_t{0}, {{a, u}, {b, v}}).found()) return true;
            if (contains_tree(host, pat, ~std::uint64_t{0}, {{a, v}, {b, u}}).found()) return true;
        }
        return false;
    }

    bool assign(std::size_t idx, Colour c) {
        auto [u, v] = order[idx];
        if (++nodes > budget) {
            unknown = true;
            return false;
        }
        BitMatrix& mine = (c == Colour::Red) ? red : blue;
        mine.add_edge(u, v);
        bool bad = creates_copy(c, u, v);
        bool ok = !bad && dfs(idx + 1);
        if (!ok) mine.remove_edge(u, v);
        return ok;
    }

    bool dfs(std::size_t idx) {
        int best = bestFound.load(std::memory_order_relaxed);
        if (best >= 0 && best < myDegree) return false; // a smaller branch already won
        if (unknown) return false;
        if (idx == order.size()) return true;
        auto [u, v] = order[idx];
        if (u == 0) {
            // vertex 0's red neighbourhood is fixed to 1..myDegree
            return assign(idx, v <= myDegree ? Colour::Red : Colour::Blue);
        }
        if (assign(idx, Colour::Red)) return true;
        if (unknown) return false;
        return assign(idx, Colour::Blue);
    }
};

} // namespace detail

// Complete backtracking search for a colouring of K_N with no red T and no
// blue S. Edges are assigned vertex by vertex with a monochromatic subtree
// check through every new edge; vertex 0's red neighbourhood is normalised to
// a prefix, and with jobs > 1 the branches per red degree run in parallel.
inline ColouringSearchResult avoiding_colouring_search(const Tree& T, const Tree& S, int N,
                                                       std::uint64_t budget = kDefaultNodeBudget,
                                                       int jobs = 1) {
    ColouringSearchResult res;
    if (N <= 0) throw std::invalid_argument("N must be positive");
    if (T.size() < 2 || S.size() < 2)
        throw std::invalid_argument("single-vertex patterns embed everywhere; no search needed");
    if (N == 1) {
        res.colouring = TwoColouring(1);
        res.exhausted = true;
        return res;
    }

    std::atomic<std::uint64_t> nodes{0};
    std::atomic<int> bestFound{-1};
    int branches = N; // d in [0, N-1]
    std::vector<std::optional<TwoColouring>> found(branches);
    std::vector<char> unknowns(branches, 0);

    auto runBranch = [&](int d) {
        detail::ColouringSearch search(T, S, N, nodes, budget, bestFound, d);
        if (search.dfs(0)) {
            found[d] = search.snapshot();
            int cur = bestFound.load();
            while ((cur < 0 || d < cur) && !bestFound.compare_exchange_weak(cur, d)) {}
        }
        unknowns[d] = search.unknown;
    };

    if (jobs <= 1) {
        for (int d = 0; d < branches; ++d) {
            runBranch(d);
            if (found[d]) break; // smallest d wins; later branches unnecessary
        }
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        int workers = std::min(jobs, branches);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                while (true) {
                    int d = next.fetch_add(1);
                    if (d >= branches) return;
                    runBranch(d);
                }
            });
        for (auto& th : pool) th.join();
    }

    res.nodes = nodes.load();
    for (int d = 0; d < branches; ++d)
        if (found[d]) {
            res.colouring = found[d];
            res.exhausted = true;
            return res;
        }
    for (char u : unknowns)
        if (u) return res; // not exhausted
    res.exhausted = true;
    return res;
}

struct RamseyResult {
    std::optional<int> R;
    std::optional<Certificate> certificate; // avoiding colouring at R-1
    bool unknown = false;
    std::uint64_t nodes = 0;
};

// Smallest N <= Nmax such that no avoiding colouring of K_N exists. Values
// are only reported when every level up to the answer was exhausted.
inline RamseyResult ramsey_exact(const Tree& T, const Tree& S, int Nmax,
                                 std::uint64_t budget = kDefaultNodeBudget, int jobs = 1) {
    RamseyResult out;
    std::optional<Certificate> last;
    for (int N = 1; N <= Nmax; ++N) {
        auto res = avoiding_colouring_search(T, S, N, budget, jobs);
        out.nodes += res.nodes;
        if (!res.exhausted) {
            out.unknown = true;
            return out;
        }
        if (res.colouring) {
            Certificate cert;
            cert.N = N;
            cert.colouring = *res.colouring;
            cert.redTAbsent = cert.blueSAbsent = true;
            cert.provenance = "exact";
            last = std::move(cert);
            continue;
        }
        out.R = N;
        out.certificate = std::move(last);
        return out;
    }
    out.unknown = true; // R exceeds Nmax
    return out;
}

struct KnownRamseyValue {
    Tree t;
    Tree s;
    int value;
    std::string provenance;
};

// Curated classical values: path pairs from the closed formula, star pairs
// and the mixed pair from exhaustive search. The star values at these sizes
// disagree with the even/even clause of the star formula as usually quoted
// with vertex counts; brute force is what this table records.
inline std::vector<KnownRamseyValue> known_values() {
    std::vector<KnownRamseyValue> out;
    auto path = [](int k) { return Tree::path(k); };
    auto star = [](int k) { return Tree::star(k); };
    out.push_back({path(4), path(4), 5, "path formula"});
    out.push_back({path(5), path(4), 6, "path formula"});
    out.push_back({path(5), path(5), 6, "path formula"});
    out.push_back({path(6), path(6), 8, "path formula"});
    out.push_back({star(3), star(3), 3, "brute force"});
    out.push_back({star(4), star(3), 5, "brute force"});
    out.push_back({star(4), star(4), 6, "brute force"});
    out.push_back({path(4), star(3), 4, "brute force"});
    return out;
}

} // namespace treeramsey
