#pragma once

// Tree embedding into almost-complete hosts: the bare-path and many-leaves
// embedders, their bipartite variants, and the four extremal-colouring
// strategies that dispatch between them. Probabilistic success guarantees are
// replaced by seeded retry-and-verify; every failure carries a stage tag.

#include "treeramsey/colouring.hpp"
#include "treeramsey/embed.hpp"
#include "treeramsey/matching.hpp"
#include "treeramsey/rational.hpp"
#include "treeramsey/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace treeramsey {

struct EmbedderConfig {
    Rational mu = Rational(1, 200);
    Rational xi = Rational(1, 2); // desk-scale default; mu <= xi/100 is the checked relation
    Rational c = Rational(1, 4);  // degree budget factor: max degree <= c*n/log n
    int retryBudget = 20;
    std::uint64_t seed = 1;

    // Threshold divisors as configuration, overridable per run.
    long barePathFactor = 10;   // bare paths required: barePathFactor * mu * n
    long leafHypDivisor = 1000; // leaf hypothesis: xi * n / leafHypDivisor
    long reservoirDivisor = 20; // bipartite leaf reservoir |W1| = n / reservoirDivisor

    void validate() const {
        if (!(mu > 0)) throw std::invalid_argument("mu must be positive");
        if (mu * 100 > xi) throw std::invalid_argument("mu must be at most xi/100");
        if (retryBudget < 1) throw std::invalid_argument("retryBudget must be at least 1");
    }
};

struct EmbedResult {
    std::optional<Embedding> embedding;
    std::string failure; // empty on success; "hypothesis:…", "step:…", "retries"

    bool ok() const { return embedding.has_value(); }
};

namespace detail {

inline EmbedResult fail(std::string tag) {
    EmbedResult r;
    r.failure = std::move(tag);
    return r;
}

inline BitRow full_mask(int n) {
    BitRow r(n);
    for (int i = 0; i < n; ++i) r.set(i);
    return r;
}

inline BitRow mask_of(int n, const std::vector<int>& verts) {
    BitRow r(n);
    for (int v : verts) r.set(v);
    return r;
}

inline int pick_from(const BitRow& pool, const BitMatrix& host, std::mt19937_64* rng) {
    if (rng) {
        auto v = pool.to_vector();
        if (v.empty()) return -1;
        return v[(*rng)() % v.size()];
    }
    int best = -1, bestDeg = -1;
    pool.for_each([&](int h) {
        if (host.degree(h) > bestDeg) { best = h; bestDeg = host.degree(h); }
    });
    return best;
}

// Greedy parent-to-child embedding of the alive part of a forest. allowed(p)
// masks the host vertices admissible for pattern vertex p; anchors are
// placed first. Deterministic picks prefer high host degree; with an rng the
// pick is uniform over the pool.
inline bool greedy_embed_forest(const BitMatrix& host, const Tree& tree,
                                const std::vector<char>& alive,
                                const std::vector<std::pair<int, int>>& anchors,
                                const std::function<BitRow(int)>& allowed, std::mt19937_64* rng,
                                std::vector<int>& map, BitRow& used) {
    int n = tree.size();
    std::vector<int> queue;
    std::vector<char> done(n, 0);

    auto place = [&](int p, int h) {
        map[p] = h;
        used.set(h);
        done[p] = 1;
        queue.push_back(p);
    };

    for (auto& [p, h] : anchors) {
        if (!alive[p] || used.test(h) || !allowed(p).test(h)) return false;
        place(p, h);
    }

    auto run_queue = [&]() -> bool {
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int p = queue[i];
            for (int child : tree.neighbours(p)) {
                if (!alive[child] || done[child]) continue;
                BitRow pool = host.row(map[p]);
                pool &= allowed(child);
                pool.and_not(used);
                int h = pick_from(pool, host, rng);
                if (h < 0) return false;
                place(child, h);
            }
        }
        return true;
    };
    if (!run_queue()) return false;

    // Remaining alive components have free roots.
    for (int p = 0; p < n; ++p) {
        if (!alive[p] || done[p]) continue;
        BitRow pool = allowed(p);
        pool.and_not(used);
        int h = pick_from(pool, host, rng);
        if (h < 0) return false;
        std::size_t tail = queue.size();
        place(p, h);
        (void)tail;
        if (!run_queue()) return false;
    }
    return true;
}

// Constructive Dirac: rotation-extension Hamilton cycle on the induced
// subgraph. Returns the cycle in induced labels re-expressed in the caller's
// vertex names, or nothing (callers treat that as a stage failure).
inline std::optional<std::vector<int>> hamilton_cycle(const BitMatrix& host,
                                                      const std::vector<int>& verts) {
    int k = int(verts.size());
    if (k == 0) return std::vector<int>{};
    if (k == 1) return std::nullopt;
    BitMatrix g = host.induced(verts);
    for (int v = 0; v < k; ++v)
        if (2 * g.degree(v) < k) return std::nullopt; // Dirac precondition

    std::vector<int> path{0};
    std::vector<char> onPath(k, 0);
    onPath[0] = 1;

    auto extend = [&]() {
        bool grew = true;
        while (grew) {
            grew = false;
            for (int side = 0; side < 2; ++side) {
                int end = side ? path.front() : path.back();
                int nxt = -1;
                g.row(end).for_each([&](int w) {
                    if (nxt < 0 && !onPath[w]) nxt = w;
                });
                if (nxt >= 0) {
                    if (side) path.insert(path.begin(), nxt);
                    else path.push_back(nxt);
                    onPath[nxt] = 1;
                    grew = true;
                }
            }
        }
    };

    // Close the current (maximal) path into a cycle via a crossing pair.
    auto close = [&]() -> bool {
        int m = int(path.size());
        if (g.test(path.front(), path.back())) return true;
        for (int i = 0; i + 1 < m; ++i) {
            if (g.test(path[0], path[i + 1]) && g.test(path[i], path[m - 1])) {
                std::reverse(path.begin() + i + 1, path.end());
                return true;
            }
        }
        return false;
    };

    for (int guard = 0; guard <= k; ++guard) {
        extend();
        if (!close()) return std::nullopt;
        if (int(path.size()) == k) {
            std::vector<int> out;
            for (int v : path) out.push_back(verts[v]);
            return out;
        }
        // absorb a vertex adjacent to the cycle
        int attach = -1, outside = -1;
        for (int v = 0; v < k && attach < 0; ++v) {
            if (onPath[v]) continue;
            for (int i = 0; i < int(path.size()); ++i)
                if (g.test(v, path[i])) { attach = i; outside = v; break; }
        }
        if (attach < 0) return std::nullopt;
        // re-open the cycle so that path[attach] is an endpoint, then extend
        std::rotate(path.begin(), path.begin() + (attach + 1) % path.size(), path.end());
        path.push_back(outside);
        onPath[outside] = 1;
    }
    return std::nullopt;
}

struct PathSlots {
    // per bare path: pattern endpoints and the 3 interior pattern vertices
    std::vector<std::array<int, 2>> ends;
    std::vector<std::array<int, 3>> interior;
};

// Hall matching between path slots and host gadget triples; on success the
// interiors are written into map.
inline bool close_bare_paths(const BitMatrix& host, const PathSlots& slots,
                             const std::vector<std::array<int, 3>>& gadgets,
                             std::vector<int>& map) {
    int l = int(slots.ends.size());
    if (int(gadgets.size()) != l) return false;
    if (l == 0) return true;
    BipartiteGraph K{l, l, {}};
    for (int i = 0; i < l; ++i) {
        int u = map[slots.ends[i][0]], v = map[slots.ends[i][1]];
        for (int j = 0; j < l; ++j)
            if (host.test(u, gadgets[j][0]) && host.test(v, gadgets[j][2]))
                K.edges.emplace_back(i, j);
    }
    Matching m = max_matching(K);
    if (m.size() != l) return false;
    for (int i = 0; i < l; ++i) {
        auto& g = gadgets[m.matchA[i]];
        map[slots.interior[i][0]] = g[0];
        map[slots.interior[i][1]] = g[1];
        map[slots.interior[i][2]] = g[2];
    }
    return true;
}

} // namespace detail

// Spanning-style embedding of a tree with many bare paths of length 4 into an
// almost-complete host: repair the low-degree set through length-2 paths,
// embed the trimmed forest greedily, harvest interior triples from a Hamilton
// cycle of the residue, and close the paths through a Hall matching.
inline EmbedResult embed_bare_paths(const BitMatrix& host, const Tree& tree,
                                    std::pair<int, int> anchor, const EmbedderConfig& cfg) {
    cfg.validate();
    int n = tree.size(), H = host.size();
    if (H < n) return detail::fail("hypothesis:host-size");
    Rational muN = cfg.mu * n;
    if (Rational(tree.max_degree()) > muN) return detail::fail("hypothesis:tree-max-degree");
    for (int v = 0; v < H; ++v)
        if (Rational(host.degree(v)) < cfg.xi * n) return detail::fail("hypothesis:host-min-degree");

    // "degree at least |H| - mu*n" is read as missing at most mu*n of the
    // other vertices, so a complete host qualifies for every mu.
    std::vector<int> W;
    for (int v = 0; v < H; ++v)
        if (Rational(host.degree(v)) < Rational(H - 1) - muN) W.push_back(v);
    if (Rational(int(W.size())) > muN) return detail::fail("hypothesis:low-degree-set");

    long need = ceil_to_long(Rational(cfg.barePathFactor) * cfg.mu * n);
    auto all = bare_paths(tree, 4);
    std::vector<std::vector<int>> paths;
    for (auto& p : all) {
        if (std::find(p.begin(), p.end(), anchor.first) != p.end()) continue;
        paths.push_back(p);
        if (long(paths.size()) == need) break;
    }
    if (long(paths.size()) < need) return detail::fail("hypothesis:bare-paths");
    int l = int(paths.size());

    std::vector<char> alive(n, 1);
    detail::PathSlots slots;
    for (auto& p : paths) {
        slots.ends.push_back({p[0], p[4]});
        slots.interior.push_back({p[1], p[2], p[3]});
        alive[p[1]] = alive[p[2]] = alive[p[3]] = 0;
    }

    BitRow used(H);
    std::vector<char> inW(H, 0);
    for (int v : W) inW[v] = 1;

    // repair gadgets x-w-y for every low-degree vertex except the anchor image
    std::vector<std::array<int, 3>> gadgets;
    for (int w : W) {
        if (w == anchor.second) continue;
        int x = -1, y = -1;
        host.row(w).for_each([&](int cand) {
            if (inW[cand] || used.test(cand) || cand == anchor.second) return;
            if (x < 0) x = cand;
            else if (y < 0) y = cand;
        });
        if (y < 0) return detail::fail("step:repair");
        used.set(x);
        used.set(y);
        used.set(w);
        gadgets.push_back({x, w, y});
    }
    int m = int(gadgets.size());
    if (m > l) return detail::fail("step:repair");

    std::vector<int> map(n, -1);
    BitRow allowedRow = detail::full_mask(H);
    allowedRow.and_not(detail::mask_of(H, W));
    if (anchor.second >= 0) allowedRow.set(anchor.second);
    auto allowed = [&](int) { return allowedRow; };
    if (!detail::greedy_embed_forest(host, tree, alive, {{anchor.first, anchor.second}}, allowed,
                                     nullptr, map, used))
        return detail::fail("step:greedy");

    // harvest the remaining interior triples from a Hamilton cycle of the residue
    if (l > m) {
        std::vector<int> residue;
        for (int v = 0; v < H; ++v)
            if (!used.test(v) && !inW[v]) residue.push_back(v);
        if (int(residue.size()) < 3 * (l - m)) return detail::fail("step:residue-size");
        auto cycle = detail::hamilton_cycle(host, residue);
        if (!cycle) return detail::fail("step:hamilton");
        for (int j = 0; j < l - m; ++j)
            gadgets.push_back({(*cycle)[3 * j], (*cycle)[3 * j + 1], (*cycle)[3 * j + 2]});
    }

    if (!detail::close_bare_paths(host, slots, gadgets, map))
        return detail::fail("step:link-matching");

    Embedding emb{map};
    if (!verify_embedding(host, tree, emb)) return detail::fail("step:verify");
    EmbedResult res;
    res.embedding = std::move(emb);
    return res;
}

// Embedding of a tree with many leaves: randomized BFS greedy on T-L followed
// by a star packing of the leaves, retried with derived seeds.
inline EmbedResult embed_many_leaves(const BitMatrix& host, const Tree& tree,
                                     std::pair<int, int> anchor, const EmbedderConfig& cfg) {
    cfg.validate();
    int n = tree.size(), H = host.size();
    if (H < n) return detail::fail("hypothesis:host-size");
    Rational muN = cfg.mu * n;
    for (int v = 0; v < H; ++v)
        if (v != anchor.second && Rational(host.degree(v)) < Rational(H - 1) - muN)
            return detail::fail("hypothesis:host-degrees");
    if (Rational(host.degree(anchor.second)) < cfg.xi * n)
        return detail::fail("hypothesis:anchor-degree");
    if (n > 2 && Rational(tree.max_degree()) >
                     cfg.c * n / Rational(long(std::ceil(std::log(double(n)))), 1))
        return detail::fail("hypothesis:tree-max-degree");
    long leafNeed = std::max<long>(1, ceil_to_long(cfg.xi * n / cfg.leafHypDivisor));
    auto allLeaves = tree.leaves();
    if (long(allLeaves.size()) < leafNeed) return detail::fail("hypothesis:leaves");

    std::vector<char> eligible(n, 1);
    eligible[anchor.first] = 0;
    for (int w : tree.neighbours(anchor.first)) eligible[w] = 0;
    std::vector<int> L;
    for (int v : allLeaves)
        if (eligible[v]) L.push_back(v);
    if (L.empty()) return detail::fail("hypothesis:leaves");

    std::vector<char> alive(n, 1);
    for (int v : L) alive[v] = 0;

    BitRow allowedRow = detail::full_mask(H);
    auto allowed = [&](int) { return allowedRow; };

    for (int attempt = 0; attempt < cfg.retryBudget; ++attempt) {
        std::mt19937_64 rng(cfg.seed + std::uint64_t(attempt));
        std::vector<int> map(n, -1);
        BitRow used(H);
        if (!detail::greedy_embed_forest(host, tree, alive, {{anchor.first, anchor.second}},
                                         allowed, &rng, map, used))
            continue;

        // leaves go to the leftover vertices through a star packing
        std::vector<int> parents;
        std::vector<int> parentIdx(n, -1);
        std::vector<int> demands;
        for (int v : L) {
            int p = tree.neighbours(v)[0];
            if (parentIdx[p] < 0) {
                parentIdx[p] = int(parents.size());
                parents.push_back(p);
                demands.push_back(0);
            }
            ++demands[parentIdx[p]];
        }
        std::vector<int> leftover;
        for (int v = 0; v < H; ++v)
            if (!used.test(v)) leftover.push_back(v);
        BipartiteGraph K{int(parents.size()), int(leftover.size()), {}};
        for (int a = 0; a < K.sideA; ++a)
            for (int b = 0; b < K.sideB; ++b)
                if (host.test(map[parents[a]], leftover[b])) K.edges.emplace_back(a, b);
        auto packing = star_packing(K, demands);
        if (!packing.stars) continue;

        for (int a = 0; a < K.sideA; ++a) {
            auto& star = (*packing.stars)[a];
            std::size_t next = 0;
            int p = parents[a];
            for (int v : L)
                if (tree.neighbours(v)[0] == p) map[v] = leftover[star.leaves[next++]];
        }
        Embedding emb{map};
        if (!verify_embedding(host, tree, emb)) continue;
        EmbedResult res;
        res.embedding = std::move(emb);
        return res;
    }
    return detail::fail("retries");
}

// ---------------------------------------------------------------------------
// Bipartite variants. U1/U2 are host vertex lists; side1Class names the tree
// bipartition class that must land in U1.

namespace detail {

struct BipartiteSides {
    BitRow u1Mask, u2Mask;
    std::vector<int> patSide; // 0 -> U1, 1 -> U2
    std::vector<int> V1, V2;  // pattern vertices per side
};

inline BipartiteSides bipartite_sides(const BitMatrix& host, const std::vector<int>& U1,
                                      const std::vector<int>& U2, const Tree& tree,
                                      int side1Class) {
    BipartiteSides s;
    s.u1Mask = mask_of(host.size(), U1);
    s.u2Mask = mask_of(host.size(), U2);
    auto side = tree.bipartition();
    s.patSide.resize(tree.size());
    for (int v = 0; v < tree.size(); ++v) {
        s.patSide[v] = (side[v] == side1Class) ? 0 : 1;
        (s.patSide[v] == 0 ? s.V1 : s.V2).push_back(v);
    }
    return s;
}

} // namespace detail

// Bipartite bare-path embedder: classes map into their own host sides, and
// the low-degree part of U2 is covered by bare-path centres only.
inline EmbedResult embed_bipartite_bare_paths(const BitMatrix& host, const std::vector<int>& U1,
                                              const std::vector<int>& U2, const Tree& tree,
                                              int side1Class, std::pair<int, int> anchor,
                                              const EmbedderConfig& cfg) {
    cfg.validate();
    int n = tree.size(), H = host.size();
    auto S = detail::bipartite_sides(host, U1, U2, tree, side1Class);
    if (int(S.V1.size()) > int(U1.size()) || int(S.V2.size()) > int(U2.size()))
        return detail::fail("hypothesis:side-sizes");
    Rational muN = cfg.mu * n;

    for (int v : U1)
        if (Rational(host.row(v).count_and(S.u2Mask)) < Rational(int(U2.size())) - muN)
            return detail::fail("hypothesis:u1-degrees");
    std::vector<int> W2;
    for (int v : U2) {
        Rational d(host.row(v).count_and(S.u1Mask));
        if (d < cfg.xi * n) return detail::fail("hypothesis:u2-min-degree");
        if (d < Rational(int(U1.size())) - muN) W2.push_back(v);
    }
    if (Rational(int(W2.size())) > muN) return detail::fail("hypothesis:low-degree-set");

    long need = ceil_to_long(Rational(cfg.barePathFactor) * cfg.mu * n);
    auto all = bare_paths(tree, 4);
    std::vector<std::vector<int>> paths;
    for (auto& p : all) {
        if (S.patSide[p[0]] != 1) continue; // endpoints must sit in V2
        if (std::find(p.begin(), p.end(), anchor.first) != p.end()) continue;
        paths.push_back(p);
        if (long(paths.size()) == need) break;
    }
    if (long(paths.size()) < need) {
        // a length-5 bare path always contains a length-4 subpath with both
        // endpoints in V2; re-derive from the longer chains
        paths.clear();
        for (auto& p : bare_paths(tree, 5)) {
            std::vector<int> q(S.patSide[p[0]] == 1 ? p.begin() : p.begin() + 1,
                               S.patSide[p[0]] == 1 ? p.end() - 1 : p.end());
            if (std::find(q.begin(), q.end(), anchor.first) != q.end()) continue;
            paths.push_back(std::move(q));
            if (long(paths.size()) == need) break;
        }
    }
    if (long(paths.size()) < need) return detail::fail("hypothesis:bare-paths");
    int l = int(paths.size());

    std::vector<char> alive(n, 1);
    detail::PathSlots slots;
    for (auto& p : paths) {
        slots.ends.push_back({p[0], p[4]});
        slots.interior.push_back({p[1], p[2], p[3]});
        alive[p[1]] = alive[p[2]] = alive[p[3]] = 0;
    }

    BitRow used(H);
    std::vector<char> inW2(H, 0);
    for (int v : W2) inW2[v] = 1;

    // low-degree U2 vertices become gadget centres x-w-y with x,y in U1
    std::vector<std::array<int, 3>> gadgets;
    for (int w : W2) {
        if (w == anchor.second) continue;
        int x = -1, y = -1;
        host.row(w).for_each([&](int cand) {
            if (!S.u1Mask.test(cand) || used.test(cand) || cand == anchor.second) return;
            if (x < 0) x = cand;
            else if (y < 0) y = cand;
        });
        if (y < 0) return detail::fail("step:repair");
        used.set(x);
        used.set(y);
        used.set(w);
        gadgets.push_back({x, w, y});
    }
    int m = int(gadgets.size());
    if (m > l) return detail::fail("step:repair");

    BitRow u2Clean = S.u2Mask;
    u2Clean.and_not(detail::mask_of(H, W2));
    if (anchor.second >= 0 && S.u2Mask.test(anchor.second)) u2Clean.set(anchor.second);
    auto allowed = [&](int p) { return S.patSide[p] == 0 ? S.u1Mask : u2Clean; };
    std::vector<int> map(n, -1);
    std::vector<std::pair<int, int>> anchors;
    if (anchor.first >= 0) anchors.push_back(anchor);
    if (!detail::greedy_embed_forest(host, tree, alive, anchors, allowed, nullptr, map, used))
        return detail::fail("step:greedy");

    // remaining gadgets: centre in clean U2 leftovers, flanks in U1 leftovers
    for (int j = m; j < l; ++j) {
        int centre = -1;
        BitRow pool = u2Clean;
        pool.and_not(used);
        pool.for_each([&](int cand) {
            if (centre < 0) centre = cand;
        });
        if (centre < 0) return detail::fail("step:gadgets");
        int x = -1, y = -1;
        BitRow flank = host.row(centre);
        flank &= S.u1Mask;
        flank.and_not(used);
        flank.for_each([&](int cand) {
            if (x < 0) x = cand;
            else if (y < 0) y = cand;
        });
        if (y < 0) return detail::fail("step:gadgets");
        used.set(centre);
        used.set(x);
        used.set(y);
        gadgets.push_back({x, centre, y});
    }

    if (!detail::close_bare_paths(host, slots, gadgets, map))
        return detail::fail("step:link-matching");

    Embedding emb{map};
    if (!verify_embedding(host, tree, emb)) return detail::fail("step:verify");
    for (int v = 0; v < n; ++v)
        if (!(S.patSide[v] == 0 ? S.u1Mask : S.u2Mask).test(map[v]))
            return detail::fail("step:verify-sides");
    std::vector<char> isCentre(n, 0);
    for (auto& in : slots.interior) isCentre[in[1]] = 1;
    for (int v = 0; v < n; ++v)
        if (inW2[map[v]] && !isCentre[v]) return detail::fail("step:verify-w2");
    EmbedResult res;
    res.embedding = std::move(emb);
    return res;
}

// Bipartite many-leaves embedder: with slack in U2 a plain greedy avoids the
// low-degree set; otherwise T-L is embedded with leaf parents steered into a
// random U1 reservoir and the V2 leaves are star-packed into what remains.
inline EmbedResult embed_bipartite_leaves(const BitMatrix& host, const std::vector<int>& U1,
                                          const std::vector<int>& U2, const Tree& tree,
                                          int side1Class, const EmbedderConfig& cfg) {
    cfg.validate();
    int n = tree.size(), H = host.size();
    auto S = detail::bipartite_sides(host, U1, U2, tree, side1Class);
    if (int(S.V1.size()) > int(U1.size())) return detail::fail("hypothesis:side-sizes");
    if (int(S.V2.size()) > int(U2.size())) return detail::fail("hypothesis:side-sizes");
    Rational muN = cfg.mu * n;

    for (int v : U1)
        if (Rational(host.row(v).count_and(S.u2Mask)) < Rational(int(U2.size())) - muN)
            return detail::fail("hypothesis:u1-degrees");
    std::vector<int> W2;
    for (int v : U2) {
        Rational d(host.row(v).count_and(S.u1Mask));
        if (d < cfg.xi * Rational(int(U1.size()))) return detail::fail("hypothesis:u2-min-degree");
        if (d < Rational(int(U1.size())) - muN) W2.push_back(v);
    }
    if (Rational(int(W2.size())) > muN) return detail::fail("hypothesis:low-degree-set");

    std::vector<char> aliveAll(n, 1);
    std::vector<int> map(n, -1);

    // enough slack: greedy straight into the clean part of U2
    if (Rational(int(U2.size())) >= Rational(int(S.V2.size())) + 2 * muN) {
        BitRow u2Clean = S.u2Mask;
        u2Clean.and_not(detail::mask_of(H, W2));
        auto allowed = [&](int p) { return S.patSide[p] == 0 ? S.u1Mask : u2Clean; };
        for (int attempt = 0; attempt < cfg.retryBudget; ++attempt) {
            std::mt19937_64 rng(cfg.seed + std::uint64_t(attempt));
            std::fill(map.begin(), map.end(), -1);
            BitRow used(H);
            if (!detail::greedy_embed_forest(host, tree, aliveAll, {}, allowed, &rng, map, used))
                continue;
            Embedding emb{map};
            if (!verify_embedding(host, tree, emb)) continue;
            EmbedResult res;
            res.embedding = std::move(emb);
            return res;
        }
        return detail::fail("retries");
    }

    long leafNeed = std::max<long>(1, ceil_to_long(cfg.xi * n / (cfg.leafHypDivisor * 100)));
    std::vector<int> L;
    for (int v : tree.leaves())
        if (S.patSide[v] == 1) L.push_back(v);
    if (long(L.size()) < leafNeed) return detail::fail("hypothesis:leaves");

    std::vector<char> alive(n, 1);
    for (int v : L) alive[v] = 0;
    std::vector<char> isParent(n, 0);
    for (int v : L) isParent[tree.neighbours(v)[0]] = 1;

    for (int attempt = 0; attempt < cfg.retryBudget; ++attempt) {
        std::mt19937_64 rng(cfg.seed + std::uint64_t(attempt));
        // random reservoir W1 inside U1
        std::vector<int> u1 = U1;
        for (std::size_t i = 0; i + 1 < u1.size(); ++i)
            std::swap(u1[i], u1[i + rng() % (u1.size() - i)]);
        long w1Size = std::min<long>(long(u1.size()),
                                     std::max<long>(1, ceil_to_long(Rational(n, cfg.reservoirDivisor))));
        BitRow w1Mask(H);
        for (long i = 0; i < w1Size; ++i) w1Mask.set(u1[i]);
        BitRow u1Free = S.u1Mask;
        u1Free.and_not(w1Mask);
        BitRow u2Clean = S.u2Mask;
        u2Clean.and_not(detail::mask_of(H, W2));

        auto allowed = [&](int p) -> BitRow {
            if (S.patSide[p] == 1) return u2Clean;
            return isParent[p] ? w1Mask : u1Free;
        };
        std::fill(map.begin(), map.end(), -1);
        BitRow used(H);
        if (!detail::greedy_embed_forest(host, tree, alive, {}, allowed, &rng, map, used))
            continue;

        std::vector<int> parents;
        std::vector<int> parentIdx(n, -1);
        std::vector<int> demands;
        for (int v : L) {
            int p = tree.neighbours(v)[0];
            if (parentIdx[p] < 0) {
                parentIdx[p] = int(parents.size());
                parents.push_back(p);
                demands.push_back(0);
            }
            ++demands[parentIdx[p]];
        }
        std::vector<int> leftover;
        for (int v : U2)
            if (!used.test(v)) leftover.push_back(v);
        BipartiteGraph K{int(parents.size()), int(leftover.size()), {}};
        for (int a = 0; a < K.sideA; ++a)
            for (int b = 0; b < K.sideB; ++b)
                if (host.test(map[parents[a]], leftover[b])) K.edges.emplace_back(a, b);
        auto packing = star_packing(K, demands);
        if (!packing.stars) continue;
        for (int a = 0; a < K.sideA; ++a) {
            auto& star = (*packing.stars)[a];
            std::size_t next = 0;
            int p = parents[a];
            for (int v : L)
                if (tree.neighbours(v)[0] == p) map[v] = leftover[star.leaves[next++]];
        }
        Embedding emb{map};
        if (!verify_embedding(host, tree, emb)) continue;
        bool sidesOk = true;
        for (int v = 0; v < n; ++v)
            if (!(S.patSide[v] == 0 ? S.u1Mask : S.u2Mask).test(map[v])) sidesOk = false;
        if (!sidesOk) continue;
        // only leaves of L are allowed on the low-degree set
        std::vector<char> inL(n, 0);
        for (int v : L) inL[v] = 1;
        std::vector<char> w2flag(H, 0);
        for (int v : W2) w2flag[v] = 1;
        bool w2Ok = true;
        for (int v = 0; v < n; ++v)
            if (w2flag[map[v]] && !inL[v]) w2Ok = false;
        if (!w2Ok) continue;
        EmbedResult res;
        res.embedding = std::move(emb);
        return res;
    }
    return detail::fail("retries");
}

// Dispatcher: peel the U1-side leaves off, embed the core through the
// bare-path or leaf route depending on which structure the core has, then
// greedily reattach the peeled leaves inside U1.
inline EmbedResult embed_bipartite_any(const BitMatrix& host, const std::vector<int>& U1,
                                       const std::vector<int>& U2, const Tree& tree,
                                       int side1Class, const EmbedderConfig& cfg) {
    cfg.validate();
    int n = tree.size();
    auto S = detail::bipartite_sides(host, U1, U2, tree, side1Class);
    // size window: n/4 <= |V1| + n/5 <= |U1| and n/100 <= |V2| <= |U2|
    if (Rational(int(S.V1.size())) + Rational(n, 5) < Rational(n, 4))
        return detail::fail("hypothesis:size-window");
    if (Rational(int(U1.size())) < Rational(int(S.V1.size())) + Rational(n, 5))
        return detail::fail("hypothesis:size-window");
    if (Rational(int(S.V2.size())) < Rational(n, 100) || int(S.V2.size()) > int(U2.size()))
        return detail::fail("hypothesis:size-window");

    // Leaves in V1 get reattached after the core embedding.
    std::vector<int> L1;
    for (int v : tree.leaves())
        if (S.patSide[v] == 0) L1.push_back(v);
    std::vector<char> inL1(n, 0);
    for (int v : L1) inL1[v] = 1;

    // Core = T - L1 as an explicit tree on remapped labels.
    std::vector<int> coreOf(n, -1), coreBack;
    for (int v = 0; v < n; ++v)
        if (!inL1[v]) {
            coreOf[v] = int(coreBack.size());
            coreBack.push_back(v);
        }
    std::vector<std::pair<int, int>> coreEdges;
    for (auto& [u, v] : tree.edges())
        if (!inL1[u] && !inL1[v]) coreEdges.emplace_back(coreOf[u], coreOf[v]);
    if (coreBack.empty()) return detail::fail("hypothesis:degenerate-core");
    Tree core(int(coreBack.size()), std::move(coreEdges));
    int coreSide1 = -1;
    {
        // express side1 in the core's own bipartition labels
        auto cSide = core.bipartition();
        coreSide1 = (S.patSide[coreBack[0]] == 0) ? cSide[0] : 1 - cSide[0];
    }

    long pathCount = long(bare_paths(core, 5).size());
    EmbedResult coreRes;
    if (Rational(pathCount) >= Rational(n, cfg.leafHypDivisor)) {
        // shorten each length-5 path to the length-4 subpath with V2 endpoints
        coreRes = embed_bipartite_bare_paths(host, U1, U2, core, coreSide1, {-1, -1}, cfg);
    } else {
        coreRes = embed_bipartite_leaves(host, U1, U2, core, coreSide1, cfg);
    }
    if (!coreRes.ok()) {
        if (!coreRes.failure.empty() && coreRes.failure.rfind("hypothesis:", 0) == 0)
            return detail::fail("step:core-" + coreRes.failure);
        return detail::fail("step:core:" + coreRes.failure);
    }

    std::vector<int> map(n, -1);
    BitRow used(host.size());
    for (int cv = 0; cv < core.size(); ++cv) {
        map[coreBack[cv]] = coreRes.embedding->map[cv];
        used.set(coreRes.embedding->map[cv]);
    }
    for (int v : L1) {
        int parent = tree.neighbours(v)[0];
        BitRow pool = host.row(map[parent]);
        pool &= S.u1Mask;
        pool.and_not(used);
        int h = detail::pick_from(pool, host, nullptr);
        if (h < 0) return detail::fail("step:attach-leaves");
        map[v] = h;
        used.set(h);
    }
    Embedding emb{map};
    if (!verify_embedding(host, tree, emb)) return detail::fail("step:verify");
    for (int v = 0; v < n; ++v)
        if (!(S.patSide[v] == 0 ? S.u1Mask : S.u2Mask).test(map[v]))
            return detail::fail("step:verify-sides");
    EmbedResult res;
    res.embedding = std::move(emb);
    return res;
}

// ---------------------------------------------------------------------------
// Extremal strategies: given a verified Type 1-4 witness, run the matching
// case analysis and return a verified monochromatic embedding.

struct StrategyResult {
    std::optional<Colour> colour;
    std::optional<Embedding> embedding;
    std::string branch;  // which case fired, e.g. "type3:one-outside"
    std::string failure; // empty on success

    bool ok() const { return embedding.has_value(); }
};

namespace detail {

struct LocalHost {
    BitMatrix adj;
    std::vector<int> toGlobal;
    std::vector<int> toLocal; // -1 outside
};

inline LocalHost extract(const TwoColouring& g, Colour c, const std::vector<int>& verts) {
    LocalHost h;
    h.toGlobal = verts;
    h.toLocal.assign(g.size(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) h.toLocal[verts[i]] = int(i);
    h.adj = BitMatrix(int(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            if (g.has(c, verts[i], verts[j])) h.adj.add_edge(int(i), int(j));
    return h;
}

inline bool verify_mono(const TwoColouring& g, const Tree& tree, const std::vector<int>& map,
                        Colour c) {
    std::vector<char> used(g.size(), 0);
    for (int h : map) {
        if (h < 0 || h >= g.size() || used[h]) return false;
        used[h] = 1;
    }
    for (auto& [u, v] : tree.edges())
        if (!g.has(c, map[u], map[v])) return false;
    return true;
}

inline StrategyResult strategy_fail(std::string branch, std::string why) {
    StrategyResult r;
    r.branch = std::move(branch);
    r.failure = std::move(why);
    return r;
}

inline StrategyResult strategy_done(const TwoColouring& g, const Tree& tree,
                                    std::vector<int> map, Colour c, std::string branch) {
    if (!verify_mono(g, tree, map, c)) return strategy_fail(std::move(branch), "step:verify");
    StrategyResult r;
    r.branch = std::move(branch);
    r.colour = c;
    r.embedding = Embedding{std::move(map)};
    return r;
}

// Monochromatic copy of a tree inside an induced host: the bare-path route
// when the tree has enough disjoint bare paths and fits that route's degree
// hypothesis, the many-leaves route otherwise, with one fallback across.
inline EmbedResult mono_into(const LocalHost& host, const Tree& tree,
                             std::pair<int, int> anchorLocal, const EmbedderConfig& cfg) {
    int n = tree.size();
    long pathCount = long(bare_paths(tree, 4).size());
    int anchorPat = anchorLocal.first;
    int anchorHost = anchorLocal.second;
    if (anchorPat < 0) {
        anchorPat = 0;
        for (int v = 1; v < n; ++v)
            if (tree.degree(v) > tree.degree(anchorPat)) anchorPat = v;
    }
    if (anchorHost < 0) {
        anchorHost = 0;
        for (int v = 1; v < host.adj.size(); ++v)
            if (host.adj.degree(v) > host.adj.degree(anchorHost)) anchorHost = v;
    }
    bool bareFirst = Rational(pathCount) >= Rational(n, 100) &&
                     Rational(tree.max_degree()) <= cfg.mu * n;
    auto first = bareFirst
                     ? embed_bare_paths(host.adj, tree, {anchorPat, anchorHost}, cfg)
                     : embed_many_leaves(host.adj, tree, {anchorPat, anchorHost}, cfg);
    if (first.ok()) return first;
    auto second = bareFirst
                      ? embed_many_leaves(host.adj, tree, {anchorPat, anchorHost}, cfg)
                      : embed_bare_paths(host.adj, tree, {anchorPat, anchorHost}, cfg);
    if (second.ok()) return second;
    return first;
}

// Subtree of t induced on the given vertices, plus the label maps.
struct SubTree {
    Tree tree = Tree(1, {});
    std::vector<int> toOriginal;
    std::vector<int> toSub;
};

inline SubTree induced_subtree(const Tree& t, const std::vector<int>& verts) {
    SubTree s;
    s.toOriginal = verts;
    s.toSub.assign(t.size(), -1);
    for (std::size_t i = 0; i < verts.size(); ++i) s.toSub[verts[i]] = int(i);
    std::vector<std::pair<int, int>> edges;
    for (auto& [u, v] : t.edges())
        if (s.toSub[u] >= 0 && s.toSub[v] >= 0) edges.emplace_back(s.toSub[u], s.toSub[v]);
    s.tree = Tree(int(verts.size()), std::move(edges));
    return s;
}

} // namespace detail

// Case analysis for the two clique-like types (1 and 2): close U1 under the
// degree threshold; with enough vertices the spanning embedder runs inside
// U1+, otherwise the other tree goes across the bipartite blue/red graph.
namespace detail {
inline StrategyResult clique_type_strategy(const TwoColouring& g, const Tree& inside,
                                           const Tree& across, Colour insideColour,
                                           const std::string& tag, const EmbedderConfig& cfg,
                                           const std::vector<int>& U1, int scaleN) {
    int n = inside.size();
    Rational xiN = cfg.xi * scaleN;
    std::vector<char> inU1(g.size(), 0);
    for (int v : U1) inU1[v] = 1;

    std::vector<int> u1Plus, u2Plus;
    for (int v = 0; v < g.size(); ++v) {
        int d = 0;
        for (int u : U1)
            if (u != v && g.has(insideColour, v, u)) ++d;
        if (Rational(d) >= Rational(int(U1.size())) - xiN) u1Plus.push_back(v);
        else u2Plus.push_back(v);
    }
    long k = long(u1Plus.size()) - n;

    if (k >= 0) {
        auto host = extract(g, insideColour, u1Plus);
        auto res = mono_into(host, inside, {-1, -1}, cfg);
        std::string branch = tag + ":inside";
        if (!res.ok()) return strategy_fail(branch, res.failure);
        std::vector<int> map(inside.size());
        for (int v = 0; v < inside.size(); ++v) map[v] = host.toGlobal[res.embedding->map[v]];
        return strategy_done(g, inside, std::move(map), insideColour, branch);
    }

    // across the bipartite graph [U1, U2+] in the other colour
    Colour other = insideColour == Colour::Red ? Colour::Blue : Colour::Red;
    std::vector<int> all = U1;
    all.insert(all.end(), u2Plus.begin(), u2Plus.end());
    auto host = extract(g, other, all);
    std::vector<int> U1loc, U2loc;
    for (std::size_t i = 0; i < all.size(); ++i)
        (i < U1.size() ? U1loc : U2loc).push_back(int(i));
    auto sideOf = across.bipartition();
    auto pa = profile(across);
    int bigClass = 0;
    {
        int c0 = 0;
        for (int s : sideOf) c0 += (s == 0);
        bigClass = (c0 == pa.t1) ? 0 : 1;
    }
    auto res = embed_bipartite_any(host.adj, U1loc, U2loc, across, bigClass, cfg);
    std::string branch = tag + ":across";
    if (!res.ok()) return strategy_fail(branch, res.failure);
    std::vector<int> map(across.size());
    for (int v = 0; v < across.size(); ++v) map[v] = host.toGlobal[res.embedding->map[v]];
    return strategy_done(g, across, std::move(map), other, branch);
}

// Case analysis for the two split types (3 and 4). denseColour is the colour
// that is dense across the two witness sets (red for type 3, blue for 4);
// crossTree embeds in that colour, sideTree in the other.
inline StrategyResult split_type_strategy(const TwoColouring& g, const Tree& crossTree,
                                          const Tree& sideTree, Colour denseColour,
                                          const std::string& tag, const EmbedderConfig& cfg,
                                          std::vector<int> U1, std::vector<int> U2, int scaleN,
                                          int cutEpsFactor) {
    Colour sideColour = denseColour == Colour::Red ? Colour::Blue : Colour::Red;
    Rational muN = cfg.mu * scaleN;

    // grow maximal disjoint supersets keyed on dense degree into the other set
    std::vector<int> u1Plus = U1, u2Plus = U2, outside;
    std::vector<char> placed(g.size(), 0);
    for (int v : U1) placed[v] = 1;
    for (int v : U2) placed[v] = 1;
    auto denseDegInto = [&](int v, const std::vector<int>& set) {
        int d = 0;
        for (int u : set)
            if (u != v && g.has(denseColour, v, u)) ++d;
        return d;
    };
    for (int v = 0; v < g.size(); ++v) {
        if (placed[v]) continue;
        if (3 * denseDegInto(v, U2) >= int(U2.size())) u1Plus.push_back(v);
        else if (3 * denseDegInto(v, U1) >= int(U1.size())) u2Plus.push_back(v);
        else outside.push_back(v);
    }
    if (u1Plus.size() < u2Plus.size()) std::swap(u1Plus, u2Plus);

    if (outside.size() >= 2) {
        // sideTree splits along a small-boundary cut over the two witness
        // sets in the side colour, boundary on the two outside vertices
        std::string branch = tag + ":two-outside";
        Rational eps = cutEpsFactor * cfg.mu;
        if (!(eps > 0) || eps >= Rational(1, 6))
            return strategy_fail(branch, "step:cut-epsilon-range");
        auto cut = cut_with_small_boundary(sideTree, eps);
        if (!cut) return strategy_fail(branch, "step:cut-decomposition");
        std::vector<char> inA(sideTree.size(), 0);
        for (int v : cut->setA) inA[v] = 1;
        BitRow u1Mask = mask_of(g.size(), U1);
        BitRow u2Mask = mask_of(g.size(), U2);
        u1Mask.set(outside[0]);
        u1Mask.set(outside[1]);
        u2Mask.set(outside[0]);
        u2Mask.set(outside[1]);
        auto hostSide = extract(g, sideColour, [&] {
            std::vector<int> all(g.size());
            for (int v = 0; v < g.size(); ++v) all[v] = v;
            return all;
        }());
        std::vector<std::pair<int, int>> anchors;
        anchors.emplace_back(cut->boundary[0], outside[0]);
        if (cut->boundary.size() == 2) anchors.emplace_back(cut->boundary[1], outside[1]);
        auto allowed = [&](int p) { return inA[p] ? u1Mask : u2Mask; };
        std::vector<int> map(sideTree.size(), -1);
        BitRow used(g.size());
        std::vector<char> alive(sideTree.size(), 1);
        if (!greedy_embed_forest(hostSide.adj, sideTree, alive, anchors, allowed, nullptr, map,
                                 used))
            return strategy_fail(branch, "step:greedy");
        return strategy_done(g, sideTree, std::move(map), sideColour, branch);
    }

    // a vertex dense into both supersets carries the skewed split of crossTree
    int heavy = -1;
    for (int v = 0; v < g.size(); ++v) {
        if (Rational(denseDegInto(v, u1Plus)) >= 20 * muN &&
            Rational(denseDegInto(v, u2Plus)) >= 20 * muN) {
            heavy = v;
            break;
        }
    }
    if (heavy >= 0) {
        std::string branch = tag + ":skew-split";
        auto skew = decompose_bipartite_skew(crossTree, cfg.mu);
        if (!skew) return strategy_fail(branch, "step:skew-decomposition");
        std::vector<char> inPart1(crossTree.size(), 0);
        for (int v : skew->part1) inPart1[v] = 1;
        auto side = crossTree.bipartition();
        auto pc = profile(crossTree);
        int bigClass;
        {
            int c0 = 0;
            for (int s : side) c0 += (s == 0);
            bigClass = (c0 == pc.t1) ? 0 : 1;
        }
        BitRow u1Mask = mask_of(g.size(), u1Plus);
        BitRow u2Mask = mask_of(g.size(), u2Plus);
        BitRow heavyMask(g.size());
        heavyMask.set(heavy);
        auto hostDense = extract(g, denseColour, [&] {
            std::vector<int> all(g.size());
            for (int v = 0; v < g.size(); ++v) all[v] = v;
            return all;
        }());
        // part2-in-big and part1-in-small go to U1+, the rest to U2+
        int shared = skew->sharedVertex;
        auto allowed = [&](int p) -> BitRow {
            if (p == shared) return heavyMask;
            bool big = side[p] == bigClass;
            bool toU1 = (inPart1[p] && !big) || (!inPart1[p] && big);
            return toU1 ? u1Mask : u2Mask;
        };
        std::vector<int> map(crossTree.size(), -1);
        BitRow used(g.size());
        std::vector<char> alive(crossTree.size(), 1);
        std::vector<std::pair<int, int>> anchors{{skew->sharedVertex, heavy}};
        if (!greedy_embed_forest(hostDense.adj, crossTree, alive, anchors, allowed, nullptr, map,
                                 used))
            return strategy_fail(branch, "step:greedy");
        return strategy_done(g, crossTree, std::move(map), denseColour, branch);
    }

    if (outside.size() == 1) {
        // sideTree splits evenly across the two supersets through the vertex
        std::string branch = tag + ":one-outside";
        int w = outside[0];
        auto dec = decompose_balanced(sideTree);
        auto sub1 = induced_subtree(sideTree, dec.part1);
        auto sub2 = induced_subtree(sideTree, dec.part2);
        std::vector<int> map(sideTree.size(), -1);
        for (int half = 0; half < 2; ++half) {
            auto& sub = half ? sub2 : sub1;
            std::vector<int> verts = half ? u2Plus : u1Plus;
            verts.push_back(w);
            auto host = extract(g, sideColour, verts);
            int anchorLocal = host.toLocal[w];
            auto res = mono_into(host, sub.tree, {sub.toSub[dec.sharedVertex], anchorLocal}, cfg);
            if (!res.ok()) return strategy_fail(branch, "half" + std::to_string(half + 1) + ":" +
                                                            res.failure);
            for (int v = 0; v < sub.tree.size(); ++v)
                map[sub.toOriginal[v]] = host.toGlobal[res.embedding->map[v]];
        }
        return strategy_done(g, sideTree, std::move(map), sideColour, branch);
    }

    // no vertex left over: crossTree goes across [U1+, U2]
    std::string branch = tag + ":across";
    std::vector<int> all = u1Plus;
    all.insert(all.end(), U2.begin(), U2.end());
    auto host = extract(g, denseColour, all);
    std::vector<int> U1loc, U2loc;
    for (std::size_t i = 0; i < all.size(); ++i)
        (i < u1Plus.size() ? U1loc : U2loc).push_back(int(i));
    auto side = crossTree.bipartition();
    auto pc = profile(crossTree);
    int bigClass;
    {
        int c0 = 0;
        for (int s : side) c0 += (s == 0);
        bigClass = (c0 == pc.t1) ? 0 : 1;
    }
    auto res = embed_bipartite_any(host.adj, U1loc, U2loc, crossTree, bigClass, cfg);
    if (!res.ok()) return strategy_fail(branch, res.failure);
    std::vector<int> map(crossTree.size());
    for (int v = 0; v < crossTree.size(); ++v) map[v] = host.toGlobal[res.embedding->map[v]];
    return strategy_done(g, crossTree, std::move(map), denseColour, branch);
}
} // namespace detail

// Runs the case analysis of the witness's type and returns a verified red-T
// or blue-S embedding; failures name the branch and stage.
inline StrategyResult extremal_strategy(const TwoColouring& g, const Tree& T, const Tree& S,
                                        const ExtremalWitness& w, const EmbedderConfig& cfg) {
    cfg.validate();
    if (!verify_extremal(g, w, T, S))
        throw std::invalid_argument("witness fails verify_extremal for its claimed type");
    auto pT = profile(T);
    auto pS = profile(S);
    if (pT.n < pS.n || pS.t2 < pT.t2 || pS.n < pT.t1)
        throw std::invalid_argument("profiles violate the extremal-case preconditions");

    switch (w.type) {
        case 1:
            return detail::clique_type_strategy(g, T, S, Colour::Red, "type1", cfg, w.U1, pT.n);
        case 2:
            return detail::clique_type_strategy(g, S, T, Colour::Blue, "type2", cfg, w.U1, pT.n);
        case 3:
            return detail::split_type_strategy(g, T, S, Colour::Red, "type3", cfg, w.U1, w.U2,
                                               pT.n, 10);
        case 4:
            return detail::split_type_strategy(g, S, T, Colour::Blue, "type4", cfg, w.U1, w.U2,
                                               pT.n, 20);
        default:
            throw std::invalid_argument("witness type must be 1..4");
    }
}

} // namespace treeramsey
