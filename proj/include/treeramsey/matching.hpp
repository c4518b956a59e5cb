#pragma once

// Bipartite matchings: augmenting-path maximum matching, Hall violators
// extracted from the final search forest, star packings by vertex cloning,
// and the cascade partition of a maximum matching.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace treeramsey {

struct BipartiteGraph {
    int sideA = 0;
    int sideB = 0;
    std::vector<std::pair<int, int>> edges; // (a index, b index)

    void validate() const {
        std::vector<std::vector<char>> seen(sideA, std::vector<char>(sideB, 0));
        for (auto& [a, b] : edges) {
            if (a < 0 || a >= sideA || b < 0 || b >= sideB)
                throw std::invalid_argument("bipartite edge out of range");
            if (seen[a][b]) throw std::invalid_argument("duplicate bipartite edge");
            seen[a][b] = 1;
        }
    }

    std::vector<std::vector<int>> adjacencyA() const {
        std::vector<std::vector<int>> adj(sideA);
        for (auto& [a, b] : edges) adj[a].push_back(b);
        return adj;
    }
};

// matchA[a] = matched b or -1; matchB[b] = matched a or -1.
struct Matching {
    std::vector<int> matchA;
    std::vector<int> matchB;

    int size() const {
        int s = 0;
        for (int b : matchA)
            if (b >= 0) ++s;
        return s;
    }
};

namespace detail {
inline bool augment(const std::vector<std::vector<int>>& adj, int a, std::vector<int>& matchA,
                    std::vector<int>& matchB, std::vector<char>& visited) {
    for (int b : adj[a]) {
        if (visited[b]) continue;
        visited[b] = 1;
        if (matchB[b] < 0 || augment(adj, matchB[b], matchA, matchB, visited)) {
            matchA[a] = b;
            matchB[b] = a;
            return true;
        }
    }
    return false;
}
} // namespace detail

inline Matching max_matching(const BipartiteGraph& g) {
    g.validate();
    auto adj = g.adjacencyA();
    Matching m;
    m.matchA.assign(g.sideA, -1);
    m.matchB.assign(g.sideB, -1);
    for (int a = 0; a < g.sideA; ++a) {
        std::vector<char> visited(g.sideB, 0);
        detail::augment(adj, a, m.matchA, m.matchB, visited);
    }
    return m;
}

// Some I subset of A with |N(I)| < |I|, or nothing when an A-saturating
// matching exists. Extracted from alternating reachability out of an
// unmatched A-vertex of a maximum matching.
inline std::optional<std::vector<int>> hall_violator(const BipartiteGraph& g) {
    Matching m = max_matching(g);
    int start = -1;
    for (int a = 0; a < g.sideA; ++a)
        if (m.matchA[a] < 0) { start = a; break; }
    if (start < 0) return std::nullopt;
    auto adj = g.adjacencyA();
    std::vector<char> inI(g.sideA, 0), inN(g.sideB, 0);
    std::vector<int> stack{start};
    inI[start] = 1;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b : adj[a]) {
            if (inN[b]) continue;
            inN[b] = 1;
            int a2 = m.matchB[b];
            if (a2 >= 0 && !inI[a2]) {
                inI[a2] = 1;
                stack.push_back(a2);
            }
        }
    }
    std::vector<int> I;
    for (int a = 0; a < g.sideA; ++a)
        if (inI[a]) I.push_back(a);
    return I;
}

struct Star {
    int centre = 0;            // A index
    std::vector<int> leaves;   // B indices
};

struct StarPackingResult {
    std::optional<std::vector<Star>> stars;
    std::optional<std::vector<int>> violator; // I with |N(I)| < sum of demands
};

// Vertex-disjoint stars with exact leaf counts, by cloning each A-vertex
// demand-many times and matching; a failed packing comes back with a subset
// violating the generalised Hall condition.
inline StarPackingResult star_packing(const BipartiteGraph& g, const std::vector<int>& demands) {
    if (int(demands.size()) != g.sideA)
        throw std::invalid_argument("one demand per A-vertex");
    for (int d : demands)
        if (d < 0) throw std::invalid_argument("demands must be nonnegative");
    g.validate();

    BipartiteGraph clone;
    clone.sideB = g.sideB;
    std::vector<int> owner;
    std::vector<std::vector<int>> adj = g.adjacencyA();
    for (int a = 0; a < g.sideA; ++a)
        for (int i = 0; i < demands[a]; ++i) {
            int c = clone.sideA++;
            owner.push_back(a);
            for (int b : adj[a]) clone.edges.emplace_back(c, b);
        }

    Matching m = max_matching(clone);
    StarPackingResult res;
    int unmatched = -1;
    for (int c = 0; c < clone.sideA; ++c)
        if (m.matchA[c] < 0) { unmatched = c; break; }

    if (unmatched < 0) {
        std::vector<Star> stars(g.sideA);
        for (int a = 0; a < g.sideA; ++a) stars[a].centre = a;
        for (int c = 0; c < clone.sideA; ++c) stars[owner[c]].leaves.push_back(m.matchA[c]);
        res.stars = std::move(stars);
        return res;
    }

    // Clones of one A-vertex share a neighbourhood, so the reachable set is a
    // union of whole clone groups and projects to a violating I.
    auto cadj = clone.adjacencyA();
    std::vector<char> seenC(clone.sideA, 0), seenB(clone.sideB, 0);
    std::vector<int> stack{unmatched};
    seenC[unmatched] = 1;
    while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        for (int b : cadj[c]) {
            if (seenB[b]) continue;
            seenB[b] = 1;
            int c2 = m.matchB[b];
            if (c2 >= 0 && !seenC[c2]) {
                seenC[c2] = 1;
                stack.push_back(c2);
            }
        }
    }
    std::vector<char> inI(g.sideA, 0);
    for (int c = 0; c < clone.sideA; ++c)
        if (seenC[c]) inI[owner[c]] = 1;
    std::vector<int> I;
    for (int a = 0; a < g.sideA; ++a)
        if (inI[a]) I.push_back(a);
    res.violator = std::move(I);
    return res;
}

struct CascadePartition {
    std::vector<int> Aplus, Aminus, Abar, Aprime;
    std::vector<int> Bplus, Bminus, Bbar, Bprime;
};

namespace detail {

// B-vertices reachable from unmatched A-vertices by free-edge-then-matched
// alternation (and symmetrically).
inline void alternating_reach_from_A(const BipartiteGraph& g, const Matching& m,
                                     std::vector<char>& reachB) {
    auto adj = g.adjacencyA();
    reachB.assign(g.sideB, 0);
    std::vector<char> reachA(g.sideA, 0);
    std::vector<int> stack;
    for (int a = 0; a < g.sideA; ++a)
        if (m.matchA[a] < 0) { reachA[a] = 1; stack.push_back(a); }
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b : adj[a]) {
            if (reachB[b]) continue;
            reachB[b] = 1;
            int a2 = m.matchB[b];
            if (a2 >= 0 && !reachA[a2]) {
                reachA[a2] = 1;
                stack.push_back(a2);
            }
        }
    }
}

} // namespace detail

// Labels the vertices of a maximum matching so that M pairs A+ with B-,
// A- with B+, Abar with Bbar, and both G[A' u A-, B' u B- u Bbar] and
// G[A' u A- u Abar, B' u B-] are empty; verified before returning.
inline CascadePartition cascade_partition(const BipartiteGraph& g, const Matching& m) {
    g.validate();
    if (int(m.matchA.size()) != g.sideA || int(m.matchB.size()) != g.sideB)
        throw std::invalid_argument("matching shape mismatch");
    for (int a = 0; a < g.sideA; ++a)
        if (m.matchA[a] >= 0 && m.matchB[m.matchA[a]] != a)
            throw std::invalid_argument("inconsistent matching");
    bool isEdge;
    for (int a = 0; a < g.sideA; ++a) {
        if (m.matchA[a] < 0) continue;
        isEdge = false;
        for (auto& [x, y] : g.edges)
            if (x == a && y == m.matchA[a]) isEdge = true;
        if (!isEdge) throw std::invalid_argument("matching uses a non-edge");
    }
    if (m.size() != max_matching(g).size())
        throw std::invalid_argument("cascade partition needs a maximum matching");

    std::vector<char> bFromA;
    detail::alternating_reach_from_A(g, m, bFromA);

    // Mirror the reachability from unmatched B by swapping sides.
    BipartiteGraph swapped;
    swapped.sideA = g.sideB;
    swapped.sideB = g.sideA;
    for (auto& [a, b] : g.edges) swapped.edges.emplace_back(b, a);
    Matching ms;
    ms.matchA = m.matchB;
    ms.matchB = m.matchA;
    std::vector<char> aFromB;
    detail::alternating_reach_from_A(swapped, ms, aFromB);

    CascadePartition cp;
    for (int a = 0; a < g.sideA; ++a) {
        if (m.matchA[a] < 0) cp.Aprime.push_back(a);
        else if (aFromB[a]) cp.Aplus.push_back(a);
        else if (bFromA[m.matchA[a]]) cp.Aminus.push_back(a);
        else cp.Abar.push_back(a);
    }
    for (int b = 0; b < g.sideB; ++b) {
        if (m.matchB[b] < 0) cp.Bprime.push_back(b);
        else if (bFromA[b]) cp.Bplus.push_back(b);
        else if (aFromB[m.matchB[b]]) cp.Bminus.push_back(b);
        else cp.Bbar.push_back(b);
    }

    // The two emptiness claims, checked edge by edge.
    std::vector<char> leftA(g.sideA, 0), rightB(g.sideB, 0);
    for (int a : cp.Aprime) leftA[a] = 1;
    for (int a : cp.Aminus) leftA[a] = 1;
    for (int b : cp.Bprime) rightB[b] = 1;
    for (int b : cp.Bminus) rightB[b] = 1;
    std::vector<char> rightB1 = rightB;
    for (int b : cp.Bbar) rightB1[b] = 1;
    std::vector<char> leftA2 = leftA;
    for (int a : cp.Abar) leftA2[a] = 1;
    for (auto& [a, b] : g.edges) {
        if (leftA[a] && rightB1[b])
            throw std::logic_error("cascade partition violates first emptiness claim");
        if (leftA2[a] && rightB[b])
            throw std::logic_error("cascade partition violates second emptiness claim");
    }
    return cp;
}

} // namespace treeramsey
