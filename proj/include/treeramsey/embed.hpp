#pragma once

// Exact tree-containment search: complete backtracking over a BFS-ordered
// pattern with degree, component-capacity and bipartite class pruning.
// Absence means the space was exhausted; running out of node budget is the
// separate Unknown verdict.

#include "treeramsey/bitset.hpp"
#include "treeramsey/colouring.hpp"
#include "treeramsey/tree.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace treeramsey {

struct Embedding {
    std::vector<int> map; // pattern vertex -> host vertex
};

enum class SearchStatus { Found, Absent, Unknown };

struct SearchOutcome {
    SearchStatus status = SearchStatus::Absent;
    std::optional<Embedding> embedding;
    std::uint64_t nodes = 0;

    bool found() const { return status == SearchStatus::Found; }
};

constexpr std::uint64_t kDefaultNodeBudget = 50'000'000;

// Independent edge-by-edge verifier; every embedding returned by the search
// has to pass this before the caller sees it.
inline bool verify_embedding(const BitMatrix& host, const Tree& pattern, const Embedding& emb) {
    if (int(emb.map.size()) != pattern.size()) return false;
    std::vector<char> used(host.size(), 0);
    for (int h : emb.map) {
        if (h < 0 || h >= host.size() || used[h]) return false;
        used[h] = 1;
    }
    for (auto& [u, v] : pattern.edges())
        if (!host.test(emb.map[u], emb.map[v])) return false;
    return true;
}

namespace detail {

struct TreeSearch {
    const BitMatrix& host;
    const Tree& pattern;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exhausted_budget = false;

    std::vector<int> order;      // pattern vertices, BFS from the root
    std::vector<int> parentIdx;  // index into order of the BFS parent
    std::vector<int> anchorOf;   // pattern vertex -> forced host vertex or -1
    std::vector<int> hostByDegree;
    std::vector<int> compId, compSize;
    std::vector<int> hostSide;   // 2-colouring of host, empty if not bipartite
    std::vector<int> map;        // pattern vertex -> host vertex or -1
    BitRow used;

    TreeSearch(const BitMatrix& h, const Tree& p, std::uint64_t b)
        : host(h), pattern(p), budget(b), used(h.size()) {
        hostByDegree.resize(host.size());
        for (int v = 0; v < host.size(); ++v) hostByDegree[v] = v;
        std::sort(hostByDegree.begin(), hostByDegree.end(),
                  [&](int a, int c) { return host.degree(a) > host.degree(c); });
        host.components(compId, compSize);
        compute_host_side();
    }

    void compute_host_side() {
        hostSide.assign(host.size(), -1);
        for (int s = 0; s < host.size(); ++s) {
            if (hostSide[s] >= 0) continue;
            hostSide[s] = 0;
            std::vector<int> queue{s};
            for (std::size_t i = 0; i < queue.size(); ++i) {
                int u = queue[i];
                bool ok = true;
                host.row(u).for_each([&](int w) {
                    if (hostSide[w] < 0) {
                        hostSide[w] = 1 - hostSide[u];
                        queue.push_back(w);
                    } else if (hostSide[w] == hostSide[u]) {
                        ok = false;
                    }
                });
                if (!ok) {
                    hostSide.clear();
                    return;
                }
            }
        }
    }

    void order_pattern(int root) {
        order.assign(1, root);
        parentIdx.assign(pattern.size(), -1);
        std::vector<int> posOf(pattern.size(), -1);
        posOf[root] = 0;
        for (std::size_t i = 0; i < order.size(); ++i) {
            int u = order[i];
            for (int w : pattern.neighbours(u)) {
                if (posOf[w] >= 0) continue;
                posOf[w] = int(order.size());
                parentIdx[w] = int(i);
                order.push_back(w);
            }
        }
    }

    // Class counts of the pattern relative to the root side.
    std::pair<int, int> pattern_side_counts(int root) const {
        auto side = pattern.bipartition();
        int rootSide = side[root];
        int same = 0;
        for (int v = 0; v < pattern.size(); ++v)
            if (side[v] == rootSide) ++same;
        return {same, pattern.size() - same};
    }

    bool root_feasible(int h, int sameCount, int otherCount) const {
        if (compSize[compId[h]] < pattern.size()) return false;
        if (hostSide.empty()) return true;
        int cid = compId[h];
        int inSide = 0, total = 0;
        for (int v = 0; v < host.size(); ++v) {
            if (compId[v] != cid) continue;
            ++total;
            if (hostSide[v] == hostSide[h]) ++inSide;
        }
        return sameCount <= inSide && otherCount <= total - inSide;
    }

    bool extend(std::size_t idx) {
        if (idx == order.size()) return true;
        if (nodes >= budget) {
            exhausted_budget = true;
            return false;
        }
        int p = order[idx];
        int parent = map[order[parentIdx[p]]];
        int needDeg = pattern.degree(p);
        const BitRow& nbrs = host.row(parent);
        int forced = anchorOf[p];
        for (int h : hostByDegree) {
            if (host.degree(h) < needDeg) break; // sorted by degree
            if (!nbrs.test(h) || used.test(h)) continue;
            if (forced >= 0 && h != forced) continue;
            ++nodes;
            if (nodes >= budget) { exhausted_budget = true; return false; }
            map[p] = h;
            used.set(h);
            if (extend(idx + 1)) return true;
            used.reset(h);
            map[p] = -1;
            if (exhausted_budget) return false;
        }
        return false;
    }

    SearchOutcome run(const std::vector<std::pair<int, int>>& anchors) {
        SearchOutcome out;
        if (pattern.size() > host.size()) return out;
        anchorOf.assign(pattern.size(), -1);
        for (auto& [pv, hv] : anchors) {
            if (pv < 0 || pv >= pattern.size() || hv < 0 || hv >= host.size()) return out;
            anchorOf[pv] = hv;
        }
        int root = anchors.empty() ? 0 : anchors[0].first;
        if (anchors.empty()) {
            for (int v = 1; v < pattern.size(); ++v)
                if (pattern.degree(v) > pattern.degree(root)) root = v;
        }
        order_pattern(root);
        auto [same, other] = pattern_side_counts(root);

        std::vector<int> rootCands;
        if (anchorOf[root] >= 0) {
            rootCands.push_back(anchorOf[root]);
        } else {
            // Twin reduction: host vertices with identical neighbourhoods (open
            // or closed) are exchangeable, so one representative suffices.
            std::vector<char> skip(host.size(), 0);
            for (int u = 0; u < host.size(); ++u) {
                if (skip[u]) continue;
                for (int v = u + 1; v < host.size(); ++v) {
                    if (skip[v]) continue;
                    BitRow ru = host.row(u), rv = host.row(v);
                    if (host.test(u, v)) {
                        ru.reset(v);
                        rv.reset(u);
                    }
                    if (ru == rv) skip[v] = 1;
                }
            }
            for (int h : hostByDegree)
                if (!skip[h]) rootCands.push_back(h);
        }

        map.assign(pattern.size(), -1);
        for (int h : rootCands) {
            if (host.degree(h) < pattern.degree(root)) continue;
            if (!root_feasible(h, same, other)) continue;
            if (anchorOf[root] >= 0 && h != anchorOf[root]) continue;
            ++nodes;
            if (nodes >= budget) { exhausted_budget = true; break; }
            map[root] = h;
            used.set(h);
            if (extend(1)) {
                Embedding emb{map};
                out.nodes = nodes;
                if (!verify_embedding(host, pattern, emb)) {
                    out.status = SearchStatus::Unknown; // internal inconsistency
                    return out;
                }
                out.status = SearchStatus::Found;
                out.embedding = std::move(emb);
                return out;
            }
            used.reset(h);
            map[root] = -1;
            if (exhausted_budget) break;
        }
        out.nodes = nodes;
        out.status = exhausted_budget ? SearchStatus::Unknown : SearchStatus::Absent;
        return out;
    }
};

} // namespace detail

// Does the host graph contain a copy of the pattern tree? Anchors force
// pattern->host assignments (used for incremental edge checks).
inline SearchOutcome contains_tree(const BitMatrix& host, const Tree& pattern,
                                   std::uint64_t budget = kDefaultNodeBudget,
                                   const std::vector<std::pair<int, int>>& anchors = {}) {
    detail::TreeSearch search(host, pattern, budget);
    return search.run(anchors);
}

inline SearchOutcome contains_mono(const TwoColouring& g, const Tree& pattern, Colour colour,
                                   std::uint64_t budget = kDefaultNodeBudget) {
    BitMatrix m = g.graph(colour);
    return contains_tree(m, pattern, budget);
}

enum class ArrowVerdict { RedT, BlueS, Neither, Unknown };

inline const char* to_string(ArrowVerdict v) {
    switch (v) {
        case ArrowVerdict::RedT: return "red-T";
        case ArrowVerdict::BlueS: return "blue-S";
        case ArrowVerdict::Neither: return "neither";
        case ArrowVerdict::Unknown: return "unknown";
    }
    return "?";
}

struct ArrowResult {
    ArrowVerdict verdict = ArrowVerdict::Unknown;
    std::optional<Embedding> embedding;
    std::uint64_t nodes = 0;
};

// Does the colouring contain a red copy of T or a blue copy of S?
inline ArrowResult decide_arrows(const TwoColouring& g, const Tree& T, const Tree& S,
                                 std::uint64_t budget = kDefaultNodeBudget) {
    ArrowResult res;
    auto red = contains_mono(g, T, Colour::Red, budget);
    res.nodes += red.nodes;
    if (red.found()) {
        res.verdict = ArrowVerdict::RedT;
        res.embedding = red.embedding;
        return res;
    }
    auto blue = contains_mono(g, S, Colour::Blue, budget);
    res.nodes += blue.nodes;
    if (blue.found()) {
        res.verdict = ArrowVerdict::BlueS;
        res.embedding = blue.embedding;
        return res;
    }
    res.verdict = (red.status == SearchStatus::Absent && blue.status == SearchStatus::Absent)
                      ? ArrowVerdict::Neither
                      : ArrowVerdict::Unknown;
    return res;
}

struct AvoidReport {
    bool redT = false;          // red copy of T present
    bool blueS = false;         // blue copy of S present
    bool exhaustive = false;    // both negative verdicts are exhaustive
    std::optional<Embedding> redEmbedding;
    std::optional<Embedding> blueEmbedding;
};

inline AvoidReport verify_avoids(const TwoColouring& g, const Tree& T, const Tree& S,
                                 std::uint64_t budget = kDefaultNodeBudget) {
    AvoidReport rep;
    auto red = contains_mono(g, T, Colour::Red, budget);
    auto blue = contains_mono(g, S, Colour::Blue, budget);
    rep.redT = red.found();
    rep.blueS = blue.found();
    rep.redEmbedding = red.embedding;
    rep.blueEmbedding = blue.embedding;
    rep.exhaustive = (red.status != SearchStatus::Unknown) && (blue.status != SearchStatus::Unknown);
    return rep;
}

} // namespace treeramsey
