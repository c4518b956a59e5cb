#pragma once

// Tree representation and the constructive tree lemmas: profiles, caterpillar
// construction, leaf padding, bare-path collections, the paths-vs-leaves
// dichotomy, balanced and skewed decompositions, small-boundary cuts, perfect
// ternary trees and leaf gluing.

#include "treeramsey/rational.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace treeramsey {

class Tree {
public:
    // Validates on construction: n-1 edges, labels in range, connected, acyclic.
    Tree(int n, std::vector<std::pair<int, int>> edges)
        : n_(n), edges_(std::move(edges)) {
        if (n_ < 1) throw std::invalid_argument("tree needs at least one vertex");
        if (int(edges_.size()) != n_ - 1)
            throw std::invalid_argument("tree on " + std::to_string(n_) + " vertices needs " +
                                        std::to_string(n_ - 1) + " edges");
        adj_.assign(n_, {});
        for (auto& [u, v] : edges_) {
            if (u < 0 || u >= n_ || v < 0 || v >= n_ || u == v)
                throw std::invalid_argument("bad tree edge");
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        // Connectivity with n-1 edges implies acyclicity.
        std::vector<char> seen(n_, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj_[u])
                if (!seen[w]) { seen[w] = 1; ++reached; stack.push_back(w); }
        }
        if (reached != n_) throw std::invalid_argument("tree edges not connected");
    }

    static Tree path(int n) {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
        return Tree(n, std::move(e));
    }

    // Star on n vertices: centre 0 with n-1 leaves.
    static Tree star(int n) {
        std::vector<std::pair<int, int>> e;
        for (int i = 1; i < n; ++i) e.emplace_back(0, i);
        return Tree(n, std::move(e));
    }

    // legs paths of the given length (edge count) hanging off centre 0.
    static Tree spider(int legs, int len) {
        std::vector<std::pair<int, int>> e;
        int next = 1;
        for (int l = 0; l < legs; ++l) {
            int prev = 0;
            for (int i = 0; i < len; ++i) {
                e.emplace_back(prev, next);
                prev = next++;
            }
        }
        return Tree(next, std::move(e));
    }

    int size() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbours(int v) const { return adj_[v]; }
    int degree(int v) const { return int(adj_[v].size()); }
    bool is_leaf(int v) const { return adj_[v].size() == 1; }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    std::vector<int> leaves() const {
        std::vector<int> out;
        for (int v = 0; v < n_; ++v)
            if (is_leaf(v)) out.push_back(v);
        return out;
    }

    // 2-colouring by BFS from vertex 0; side(0) == 0.
    std::vector<int> bipartition() const {
        std::vector<int> side(n_, -1);
        side[0] = 0;
        std::vector<int> queue{0};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int u = queue[i];
            for (int w : adj_[u])
                if (side[w] < 0) { side[w] = 1 - side[u]; queue.push_back(w); }
        }
        return side;
    }

    bool has_edge(int u, int v) const {
        for (int w : adj_[u])
            if (w == v) return true;
        return false;
    }

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

struct TreeProfile {
    int n = 0;
    int t1 = 0;        // larger bipartition class
    int t2 = 0;        // smaller class
    int maxDegree = 0;
    int leafCount = 0;

    bool operator==(const TreeProfile&) const = default;
};

inline TreeProfile profile(const Tree& t) {
    auto side = t.bipartition();
    int c0 = int(std::count(side.begin(), side.end(), 0));
    int c1 = t.size() - c0;
    TreeProfile p;
    p.n = t.size();
    p.t1 = std::max(c0, c1);
    p.t2 = std::min(c0, c1);
    p.maxDegree = t.max_degree();
    p.leafCount = int(t.leaves().size());
    return p;
}

// Spine of 2*t2-1 vertices with t1-t2+1 extra leaves spread as evenly as
// possible over the odd spine positions; realises class sizes (t1, t2) with
// max degree at most ceil((t1+t2+1)/t2).
inline Tree make_caterpillar(int t1, int t2) {
    if (t2 < 1 || t1 < t2) throw std::invalid_argument("caterpillar needs t1 >= t2 >= 1");
    int spine = 2 * t2 - 1;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < spine; ++i) edges.emplace_back(i, i + 1);
    int extra = t1 - t2 + 1;
    int next = spine;
    int q = extra / t2, r = extra % t2;
    for (int j = 0; j < t2; ++j) {
        int host = 2 * j; // odd spine positions, 0-indexed
        int take = q + (j < r ? 1 : 0);
        for (int i = 0; i < take; ++i) edges.emplace_back(host, next++);
    }
    return Tree(next, std::move(edges));
}

namespace detail {
// Indices of the larger bipartition class (ties: the class of vertex 0).
inline std::vector<int> larger_class(const Tree& t, const std::vector<int>& side) {
    int c0 = int(std::count(side.begin(), side.end(), 0));
    int big = (2 * c0 >= t.size()) ? 0 : 1;
    std::vector<int> out;
    for (int v = 0; v < t.size(); ++v)
        if (side[v] == big) out.push_back(v);
    return out;
}
} // namespace detail

// Attach one new pendant leaf to each of k leaves of the larger bipartition
// class, growing the smaller class by k.
inline Tree pad_large_class(const Tree& t, int k) {
    if (k < 0) throw std::invalid_argument("pad count must be nonnegative");
    auto side = t.bipartition();
    std::vector<int> targets;
    for (int v : detail::larger_class(t, side))
        if (t.is_leaf(v)) targets.push_back(v);
    if (k > int(targets.size()))
        throw std::invalid_argument("not enough large-class leaves to pad");
    auto edges = t.edges();
    int next = t.size();
    for (int i = 0; i < k; ++i) edges.emplace_back(targets[i], next++);
    return Tree(next, std::move(edges));
}

// A path in a tree is bare when all internal vertices have degree exactly 2.
// Returns a greedy collection of vertex-disjoint bare paths with k edges
// (k+1 vertices) each, carved out of the maximal degree-2 chains.
inline std::vector<std::vector<int>> bare_paths(const Tree& t, int k) {
    if (k < 1) throw std::invalid_argument("bare path length must be positive");
    std::vector<std::vector<int>> out;
    if (t.size() < k + 1) return out;
    std::vector<char> used(t.size(), 0);

    // Walk each maximal chain once: start from every vertex of degree != 2,
    // follow each incident edge through degree-2 vertices.
    std::vector<std::vector<char>> walked(t.size());
    for (int v = 0; v < t.size(); ++v)
        walked[v].assign(t.neighbours(v).size(), 0);

    auto carve = [&](const std::vector<int>& chain) {
        int i = 0, m = int(chain.size());
        while (i + k < m) {
            bool free = true;
            for (int j = i; j <= i + k; ++j)
                if (used[chain[j]]) { free = false; break; }
            if (free) {
                out.emplace_back(chain.begin() + i, chain.begin() + i + k + 1);
                for (int j = i; j <= i + k; ++j) used[chain[j]] = 1;
                i += k + 1;
            } else {
                ++i;
            }
        }
    };

    bool is_path_tree = true;
    for (int v = 0; v < t.size(); ++v)
        if (t.degree(v) > 2) is_path_tree = false;

    if (is_path_tree) {
        // Whole tree is a single chain starting at either leaf.
        int start = 0;
        for (int v = 0; v < t.size(); ++v)
            if (t.degree(v) <= 1) { start = v; break; }
        std::vector<int> chain{start};
        int prev = -1, cur = start;
        while (true) {
            int nxt = -1;
            for (int w : t.neighbours(cur))
                if (w != prev) { nxt = w; break; }
            if (nxt < 0) break;
            chain.push_back(nxt);
            prev = cur;
            cur = nxt;
        }
        carve(chain);
        return out;
    }

    for (int v = 0; v < t.size(); ++v) {
        if (t.degree(v) == 2) continue;
        const auto& nbrs = t.neighbours(v);
        for (std::size_t e = 0; e < nbrs.size(); ++e) {
            if (walked[v][e]) continue;
            std::vector<int> chain{v};
            int prev = v, cur = nbrs[e];
            walked[v][e] = 1;
            while (t.degree(cur) == 2) {
                chain.push_back(cur);
                int nxt = t.neighbours(cur)[0] == prev ? t.neighbours(cur)[1]
                                                       : t.neighbours(cur)[0];
                prev = cur;
                cur = nxt;
            }
            chain.push_back(cur);
            // Mark the reverse walk from the far endpoint.
            const auto& back = t.neighbours(cur);
            for (std::size_t e2 = 0; e2 < back.size(); ++e2)
                if (back[e2] == prev) walked[cur][e2] = 1;
            carve(chain);
        }
    }
    return out;
}

struct PathsLeafWitness {
    bool leafBranch = false;
    std::vector<int> leaves;
    std::vector<std::vector<int>> paths;
};

// Every tree has either >= ell leaves or >= n/(k+1) - (2*ell-2) disjoint bare
// paths of length k; a failure of both branches falsifies the dichotomy and
// raises logic_error.
inline PathsLeafWitness verify_paths_leaf_dichotomy(const Tree& t, int k, int ell) {
    if (k < 1 || ell < 1) throw std::invalid_argument("k and ell must be positive");
    PathsLeafWitness w;
    auto lv = t.leaves();
    if (int(lv.size()) >= ell) {
        w.leafBranch = true;
        w.leaves = std::move(lv);
        return w;
    }
    w.paths = bare_paths(t, k);
    Rational required = Rational(t.size(), k + 1) - Rational(2 * ell - 2);
    if (Rational(int(w.paths.size())) >= required) return w;
    throw std::logic_error("paths-vs-leaves dichotomy failed; this falsifies the lemma");
}

struct TreeDecomposition {
    std::vector<int> part1;
    std::vector<int> part2;
    int sharedVertex = -1;
};

namespace detail {

// Components of t - v, each listed with v excluded.
inline std::vector<std::vector<int>> components_without(const Tree& t, int v) {
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(t.size(), 0);
    seen[v] = 1;
    for (int s : t.neighbours(v)) {
        if (seen[s]) continue;
        std::vector<int> comp, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int w : t.neighbours(u))
                if (!seen[w]) { seen[w] = 1; stack.push_back(w); }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

inline TreeDecomposition split_from_subset(int v, const std::vector<std::vector<int>>& comps,
                                           const std::vector<char>& pick) {
    TreeDecomposition d;
    d.sharedVertex = v;
    d.part1.push_back(v);
    d.part2.push_back(v);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        auto& dst = pick[i] ? d.part1 : d.part2;
        dst.insert(dst.end(), comps[i].begin(), comps[i].end());
    }
    std::sort(d.part1.begin(), d.part1.end());
    std::sort(d.part2.begin(), d.part2.end());
    return d;
}

} // namespace detail

// Split into two subtrees sharing one vertex, both with size in
// [ceil(n/3), ceil(2n/3)]; among the valid splits the most balanced one wins.
inline TreeDecomposition decompose_balanced(const Tree& t) {
    if (t.size() < 2) throw std::invalid_argument("decompose_balanced needs n >= 2");
    int n = t.size();
    int lo = (n + 2) / 3, hi = (2 * n + 2) / 3;
    std::optional<TreeDecomposition> best;
    int bestImbalance = n + 1;
    for (int v = 0; v < n; ++v) {
        auto comps = detail::components_without(t, v);
        int m = int(comps.size());
        // Subset-sum over component sizes; part1 = v + chosen components.
        std::vector<int> from(n + 1, -2); // component index used to reach sum, -2 unreachable
        from[0] = -1;
        for (int i = 0; i < m; ++i) {
            int c = int(comps[i].size());
            for (int s = n - c; s >= 0; --s)
                if (from[s] != -2 && from[s + c] == -2) from[s + c] = i;
        }
        for (int s = 0; s <= n; ++s) {
            if (from[s] == -2) continue;
            int size1 = s + 1, size2 = n - s;
            if (size1 < lo || size1 > hi || size2 < lo || size2 > hi) continue;
            int imbalance = std::abs(size1 - size2);
            if (imbalance >= bestImbalance) continue;
            std::vector<char> pick(m, 0);
            int cur = s;
            while (cur > 0) {
                int i = from[cur];
                pick[i] = 1;
                cur -= int(comps[i].size());
            }
            best = detail::split_from_subset(v, comps, pick);
            bestImbalance = imbalance;
        }
        if (bestImbalance <= 1) break;
    }
    if (!best) throw std::logic_error("no balanced decomposition found; this falsifies the lemma");
    return *best;
}

// Split into two subtrees sharing one vertex such that part1 over-represents
// the larger bipartition class by an amount in [10*mu*n, 25*mu*n]. Exhaustive
// over split vertices and component subsets; absent at many small sizes.
inline std::optional<TreeDecomposition> decompose_bipartite_skew(const Tree& t, const Rational& mu) {
    if (mu <= 0 || mu >= 1) throw std::invalid_argument("mu must be in (0,1)");
    auto p = profile(t);
    if (Rational(10) * p.t1 < Rational(11) * p.t2) return std::nullopt; // needs t1 >= 1.1*t2
    int n = t.size();
    Rational lo = Rational(10) * mu * n, hi = Rational(25) * mu * n;
    auto side = t.bipartition();
    auto big = detail::larger_class(t, side);
    std::vector<char> inBig(n, 0);
    for (int v : big) inBig[v] = 1;

    for (int v = 0; v < n; ++v) {
        auto comps = detail::components_without(t, v);
        int m = int(comps.size());
        std::vector<int> skew(m);
        for (int i = 0; i < m; ++i) {
            int s = 0;
            for (int u : comps[i]) s += inBig[u] ? 1 : -1;
            skew[i] = s;
        }
        int base = inBig[v] ? 1 : -1;
        // DP over achievable skews, offset by n.
        int off = n;
        std::vector<int> from(2 * n + 1, -2);
        from[off] = -1;
        for (int i = 0; i < m; ++i) {
            std::vector<int> next = from;
            for (int s = 0; s <= 2 * n; ++s) {
                if (from[s] == -2) continue;
                int ns = s + skew[i];
                if (ns >= 0 && ns <= 2 * n && next[ns] == -2) next[ns] = i;
            }
            from = std::move(next);
        }
        for (int s = 0; s <= 2 * n; ++s) {
            if (from[s] == -2) continue;
            Rational total = Rational(s - off + base);
            if (total < lo || total > hi) continue;
            // Reconstruct: repeatedly undo the last component recorded.
            std::vector<char> pick(m, 0);
            int cur = s;
            while (from[cur] != -1) {
                int i = from[cur];
                if (i == -2 || pick[i]) break;
                pick[i] = 1;
                cur -= skew[i];
            }
            if (cur != off) continue; // reconstruction ambiguity; skip this sum
            return detail::split_from_subset(v, comps, pick);
        }
    }
    return std::nullopt;
}

struct CutPartition {
    std::vector<int> setA;
    std::vector<int> setB;
    std::vector<int> boundary;
};

namespace detail {

inline std::optional<CutPartition> cut_from(const Tree& t, const std::vector<int>& bset,
                                            const std::vector<std::vector<int>>& comps,
                                            const std::vector<char>& toB, const Rational& cap) {
    int n = t.size();
    std::vector<char> inB(n, 0);
    int bsize = 0;
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (toB[i])
            for (int u : comps[i]) { inB[u] = 1; ++bsize; }
    int asize = n - bsize;
    if (bsize == 0) return std::nullopt;
    if (Rational(asize) > cap || Rational(bsize) > cap) return std::nullopt;
    CutPartition cp;
    for (int v = 0; v < n; ++v) (inB[v] ? cp.setB : cp.setA).push_back(v);
    for (int v : bset) {
        bool touches = false;
        for (int w : t.neighbours(v))
            if (inB[w]) { touches = true; break; }
        if (touches) cp.boundary.push_back(v);
    }
    // A must induce a tree: connected with |A|-1 internal edges.
    int edgesInA = 0;
    for (auto& [u, v] : t.edges())
        if (!inB[u] && !inB[v]) ++edgesInA;
    if (edgesInA != asize - 1) return std::nullopt;
    return cp;
}

} // namespace detail

// Partition V = A u B with T[A] a tree, the A-vertices adjacent to B an
// independent set of size <= 2, and |A|,|B| <= (2/3-eps)*n. Exhaustive over
// candidate boundary singletons and independent pairs.
inline std::optional<CutPartition> cut_with_small_boundary(const Tree& t, const Rational& eps) {
    if (eps <= 0 || eps >= Rational(1, 6))
        throw std::invalid_argument("eps must be in (0, 1/6)");
    int n = t.size();
    Rational cap = (Rational(2, 3) - eps) * n;
    if (cap < 1) return std::nullopt;

    // Boundary {x}: B is any component subset of t - x meeting the windows.
    for (int x = 0; x < n; ++x) {
        auto comps = detail::components_without(t, x);
        int m = int(comps.size());
        std::vector<int> from(n + 1, -2);
        from[0] = -1;
        for (int i = 0; i < m; ++i) {
            int c = int(comps[i].size());
            for (int s = n - c; s >= 0; --s)
                if (from[s] != -2 && from[s + c] == -2) from[s + c] = i;
        }
        for (int s = 1; s <= n; ++s) {
            if (from[s] == -2) continue;
            if (Rational(s) > cap || Rational(n - s) > cap) continue;
            std::vector<char> toB(m, 0);
            int cur = s;
            while (cur > 0) {
                int i = from[cur];
                toB[i] = 1;
                cur -= int(comps[i].size());
            }
            if (auto cp = detail::cut_from(t, {x}, comps, toB, cap)) return cp;
        }
    }

    // Boundary {x,y}, x and y nonadjacent; a component adjacent to both stays
    // in A to keep T[A] connected.
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            if (t.has_edge(x, y)) continue;
            std::vector<char> removed(n, 0);
            removed[x] = removed[y] = 1;
            std::vector<std::vector<int>> comps;
            std::vector<char> seen(n, 0);
            seen[x] = seen[y] = 1;
            for (int s0 = 0; s0 < n; ++s0) {
                if (seen[s0]) continue;
                std::vector<int> comp, stack{s0};
                seen[s0] = 1;
                while (!stack.empty()) {
                    int u = stack.back();
                    stack.pop_back();
                    comp.push_back(u);
                    for (int w : t.neighbours(u))
                        if (!seen[w]) { seen[w] = 1; stack.push_back(w); }
                }
                comps.push_back(std::move(comp));
            }
            int m = int(comps.size());
            std::vector<int> bridge; // components adjacent to both x and y
            for (int i = 0; i < m; ++i) {
                bool ax = false, ay = false;
                for (int u : comps[i]) {
                    if (t.has_edge(u, x)) ax = true;
                    if (t.has_edge(u, y)) ay = true;
                }
                if (ax && ay) bridge.push_back(i);
            }
            for (int keep : bridge) {
                std::vector<int> from(n + 1, -2);
                from[0] = -1;
                for (int i = 0; i < m; ++i) {
                    if (i == keep) continue;
                    int c = int(comps[i].size());
                    for (int s = n - c; s >= 0; --s)
                        if (from[s] != -2 && from[s + c] == -2) from[s + c] = i;
                }
                for (int s = 1; s <= n; ++s) {
                    if (from[s] == -2) continue;
                    if (Rational(s) > cap || Rational(n - s) > cap) continue;
                    std::vector<char> toB(m, 0);
                    int cur = s;
                    while (cur > 0) {
                        int i = from[cur];
                        toB[i] = 1;
                        cur -= int(comps[i].size());
                    }
                    if (auto cp = detail::cut_from(t, {x, y}, comps, toB, cap)) return cp;
                }
            }
        }
    }
    return std::nullopt;
}

// Perfect ternary tree with C+1 levels: (3^(C+1)-1)/2 vertices, 3^C leaves,
// root degree 3, other internal degree 4. Vertices are numbered level by
// level, so the leaves are the last 3^C indices.
inline Tree make_perfect_ternary(int C) {
    if (C < 0) throw std::invalid_argument("C must be nonnegative");
    long total = 1, level = 1;
    for (int i = 0; i < C; ++i) { level *= 3; total += level; }
    std::vector<std::pair<int, int>> edges;
    // children of vertex v(on non-final levels) are 3v+1, 3v+2, 3v+3
    long internal = (total - level);
    for (long v = 0; v < internal; ++v)
        for (long c = 3 * v + 1; c <= 3 * v + 3; ++c) edges.emplace_back(int(v), int(c));
    return Tree(int(total), std::move(edges));
}

inline std::vector<int> ternary_leaves(int C) {
    long total = 1, level = 1;
    for (int i = 0; i < C; ++i) { level *= 3; total += level; }
    std::vector<int> out;
    for (long v = total - level; v < total; ++v) out.push_back(int(v));
    return out;
}

// Identify the root of each glued tree with the corresponding leaf of base.
inline Tree glue_trees(const Tree& base, const std::vector<int>& leafList,
                       const std::vector<std::pair<Tree, int>>& glued) {
    if (leafList.size() != glued.size())
        throw std::invalid_argument("one glued tree per attachment leaf");
    std::vector<char> seen(base.size(), 0);
    for (int v : leafList) {
        if (v < 0 || v >= base.size() || !base.is_leaf(v))
            throw std::invalid_argument("attachment points must be distinct leaves");
        if (seen[v]) throw std::invalid_argument("attachment points must be distinct leaves");
        seen[v] = 1;
    }
    auto edges = base.edges();
    int next = base.size();
    for (std::size_t i = 0; i < glued.size(); ++i) {
        const auto& [g, root] = glued[i];
        if (root < 0 || root >= g.size()) throw std::invalid_argument("bad glue root");
        std::vector<int> remap(g.size());
        for (int v = 0; v < g.size(); ++v)
            remap[v] = (v == root) ? leafList[i] : next++;
        for (auto& [u, v] : g.edges()) edges.emplace_back(remap[u], remap[v]);
    }
    return Tree(next, std::move(edges));
}

// Uniform labelled tree decoded from a random integer sequence.
inline Tree random_tree(int n, std::mt19937_64& rng) {
    if (n == 1) return Tree(1, {});
    if (n == 2) return Tree(2, {{0, 1}});
    std::vector<int> code(n - 2);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (auto& c : code) c = pick(rng);
    std::vector<int> deg(n, 1);
    for (int c : code) ++deg[c];
    std::vector<std::pair<int, int>> edges;
    int ptr = 0;
    while (deg[ptr] != 1) ++ptr;
    int leaf = ptr;
    for (int c : code) {
        edges.emplace_back(leaf, c);
        --deg[leaf];
        if (--deg[c] == 1 && c < ptr) {
            leaf = c;
        } else {
            while (deg[++ptr] != 1) {}
            leaf = ptr;
        }
    }
    int u = -1;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1) {
            if (u < 0) u = v;
            else edges.emplace_back(u, v);
        }
    return Tree(n, std::move(edges));
}

namespace detail {
inline std::string ahu_code(const Tree& t, int v, int parent) {
    std::vector<std::string> child;
    for (int w : t.neighbours(v))
        if (w != parent) child.push_back(ahu_code(t, w, v));
    std::sort(child.begin(), child.end());
    std::string out = "(";
    for (auto& c : child) out += c;
    out += ")";
    return out;
}
} // namespace detail

// Canonical form for unlabelled equality: AHU code rooted at the centroid(s).
inline std::string canonical_code(const Tree& t) {
    int n = t.size();
    if (n == 1) return "()";
    // centroid: minimise the largest component of t - v
    std::vector<int> sub(n, 1);
    std::vector<int> order, parent(n, -1), stack{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (int w : t.neighbours(u))
            if (!seen[w]) { seen[w] = 1; parent[w] = u; stack.push_back(w); }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (parent[*it] >= 0) sub[parent[*it]] += sub[*it];
    int best = n + 1;
    std::vector<int> centroids;
    for (int v = 0; v < n; ++v) {
        int worst = n - sub[v];
        for (int w : t.neighbours(v))
            if (parent[w] == v) worst = std::max(worst, sub[w]);
        if (worst < best) { best = worst; centroids = {v}; }
        else if (worst == best) centroids.push_back(v);
    }
    std::string code;
    for (int c : centroids) {
        auto s = detail::ahu_code(t, c, -1);
        if (code.empty() || s < code) code = s;
    }
    return code;
}

// One representative tree per isomorphism class, for every vertex count in
// [minN, maxN]; enumerated over all labelled trees (Pruefer codes).
inline std::vector<Tree> small_tree_catalogue(int minN, int maxN) {
    std::vector<Tree> out;
    for (int n = minN; n <= maxN; ++n) {
        std::map<std::string, Tree> reps;
        if (n == 1) {
            reps.emplace("()", Tree(1, {}));
        } else if (n == 2) {
            reps.emplace(canonical_code(Tree(2, {{0, 1}})), Tree(2, {{0, 1}}));
        } else {
            std::vector<int> code(n - 2, 0);
            while (true) {
                std::vector<int> deg(n, 1);
                for (int c : code) ++deg[c];
                std::vector<std::pair<int, int>> edges;
                std::vector<int> d = deg;
                int ptr = 0;
                while (d[ptr] != 1) ++ptr;
                int leaf = ptr;
                for (int c : code) {
                    edges.emplace_back(leaf, c);
                    --d[leaf];
                    if (--d[c] == 1 && c < ptr) leaf = c;
                    else { while (d[++ptr] != 1) {} leaf = ptr; }
                }
                int u = -1;
                for (int v = 0; v < n; ++v)
                    if (d[v] == 1) {
                        if (u < 0) u = v;
                        else edges.emplace_back(u, v);
                    }
                Tree t(n, std::move(edges));
                reps.emplace(canonical_code(t), t);
                int i = n - 3;
                while (i >= 0 && code[i] == n - 1) code[i--] = 0;
                if (i < 0) break;
                ++code[i];
            }
        }
        for (auto& [k, t] : reps) out.push_back(t);
    }
    return out;
}

// Edge orbit representatives under tree automorphisms, identified by the
// unordered pair of subtree codes on either side of each edge.
inline std::vector<std::pair<int, int>> edge_orbit_reps(const Tree& t) {
    std::map<std::string, std::pair<int, int>> reps;
    for (auto& [u, v] : t.edges()) {
        auto a = detail::ahu_code(t, u, v);
        auto b = detail::ahu_code(t, v, u);
        if (b < a) std::swap(a, b);
        reps.emplace(a + "|" + b, std::make_pair(u, v));
    }
    std::vector<std::pair<int, int>> out;
    for (auto& [k, e] : reps) out.push_back(e);
    return out;
}

} // namespace treeramsey
