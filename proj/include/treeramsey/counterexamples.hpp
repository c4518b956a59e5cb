#pragma once

// Families of tree pairs whose Ramsey number exceeds the four-construction
// lower bound: ternary-glued trees against structured clique-pair and
// bipartite-pair hosts, exact host-capacity oracles, end-to-end certificates,
// and the random-construction demonstration.

#include "treeramsey/colouring.hpp"
#include "treeramsey/embed.hpp"
#include "treeramsey/ramsey.hpp"
#include "treeramsey/tree.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeramsey {

class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CounterexampleParams {
    int C = 1;
    int r = 1;
    int rho = 0; // only used by the bipartite family
};

enum class HostKind { CliquePair, BipartitePair };

struct StructuredHost {
    HostKind kind = HostKind::CliquePair;
    int u1Size = 0, u2Size = 0, wSize = 0;

    int total() const { return u1Size + u2Size + wSize; }
};

// Red graph per the host structure; every remaining pair is blue.
// CliquePair: red cliques on U1 and U2 plus red complete (U1 u U2)-W.
// BipartitePair: red complete U1-U2 plus red complete (U1 u U2)-W.
inline TwoColouring build_structured_host(const StructuredHost& h) {
    if (h.u1Size < 0 || h.u2Size < 0 || h.wSize < 0 || h.total() < 1)
        throw std::invalid_argument("degenerate host sizes");
    int N = h.total();
    TwoColouring g(N);
    auto inU1 = [&](int v) { return v < h.u1Size; };
    auto inU2 = [&](int v) { return v >= h.u1Size && v < h.u1Size + h.u2Size; };
    for (int u = 0; u < N; ++u)
        for (int v = u + 1; v < N; ++v) {
            bool uW = !inU1(u) && !inU2(u), vW = !inU1(v) && !inU2(v);
            if (uW && vW) continue;
            if (uW || vW) {
                g.set_red(u, v);
                continue;
            }
            bool same = inU1(u) == inU1(v);
            if (h.kind == HostKind::CliquePair ? same : !same) g.set_red(u, v);
        }
    return g;
}

inline long pow3(int c) {
    long p = 1;
    for (int i = 0; i < c; ++i) p *= 3;
    return p;
}

namespace detail {

// Rooted caterpillar whose root sits in a class of the requested size.
// rootClassSize is the size of the class containing the root; the other
// class has total - rootClassSize vertices.
inline std::pair<Tree, int> rooted_class_tree(int total, int rootClassSize) {
    if (rootClassSize < 1 || rootClassSize >= total + (total == 1 ? 1 : 0))
        throw std::invalid_argument("bad class split");
    if (total == 1) return {Tree(1, {}), 0};
    int other = total - rootClassSize;
    if (other < 1) throw std::invalid_argument("bad class split");
    int p = std::max(rootClassSize, other), q = std::min(rootClassSize, other);
    Tree cat = make_caterpillar(p, q);
    // Classes of make_caterpillar: even spine indices form the q-class; odd
    // spine indices plus attached leaves form the p-class.
    // Even spine indices form the q-class; attached leaves sit in the p-class.
    int root = (rootClassSize == q) ? 0 : cat.size() - 1;
    return {cat, root};
}

} // namespace detail

struct GeneratedFamily {
    CounterexampleParams params;
    Tree T = Tree(1, {});
    Tree S = Tree(1, {});
    TwoColouring G;
    StructuredHost host;
    bool vacuous = false; // |T| > |G|: the red verdict holds for free
};

// Ternary tree with a tree of size 2r glued to each leaf, profile steered by
// a per-leaf class-size split; the partner caterpillar; and the clique-pair
// host on 2(3^C+1)r + C - 2 vertices.
inline GeneratedFamily gen_thm13(int C, int r) {
    if (C < 1 || r < 1) throw std::invalid_argument("need C >= 1 and r >= 1");
    long leafCnt = pow3(C);
    long g = 2L * r; // glued tree size
    long t1 = (pow3(C) + 1) * r;
    long t2 = (pow3(C) - 1) * r + (pow3(C) - 1) / 2;
    long tau1 = (pow3(C) + 1) * r;
    long tau2 = 2L * r - (pow3(C) - 1) / 2;
    if (tau2 < 1)
        throw InfeasibleError("partner tree class tau2 = " + std::to_string(tau2) +
                              " is not positive at C=" + std::to_string(C) +
                              ", r=" + std::to_string(r));

    Tree ternary = make_perfect_ternary(C);
    auto leaves = ternary_leaves(C);
    auto side = ternary.bipartition();
    int leafSide = side[leaves.front()];
    long leafClass0 = 0;
    for (int v = 0; v < ternary.size(); ++v)
        if (side[v] == leafSide) ++leafClass0;
    long otherClass0 = ternary.size() - leafClass0;

    // Glued tree j contributes (x_j - 1) vertices to the leaf-side class and
    // g - x_j to the other, where x_j is its root-class size.
    auto plan = [&](long targetLeafClass) -> std::optional<std::vector<int>> {
        long sumX = targetLeafClass - leafClass0 + leafCnt;
        if (sumX < leafCnt || sumX > leafCnt * (g - 1)) return std::nullopt;
        std::vector<int> xs(leafCnt, int(sumX / leafCnt));
        long rem = sumX - (sumX / leafCnt) * leafCnt;
        for (long j = 0; j < rem; ++j) ++xs[j];
        return xs;
    };
    auto xs = plan(t1);
    if (!xs) xs = plan(t2);
    if (!xs)
        throw InfeasibleError("no glued class-size multiset reaches the target profile at C=" +
                              std::to_string(C) + ", r=" + std::to_string(r));

    std::vector<std::pair<Tree, int>> glued;
    for (int x : *xs) glued.push_back(detail::rooted_class_tree(int(g), x));
    GeneratedFamily fam;
    fam.params = {C, r, 0};
    fam.T = glue_trees(ternary, leaves, glued);

    auto pT = profile(fam.T);
    if (pT.t1 != t1 || pT.t2 != t2)
        throw InfeasibleError("glued profile (" + std::to_string(pT.t1) + "," +
                              std::to_string(pT.t2) + ") missed target (" + std::to_string(t1) +
                              "," + std::to_string(t2) + ")");
    if (pT.maxDegree > 3 * pow3(C))
        throw InfeasibleError("glued tree exceeds the degree bound");

    fam.S = make_caterpillar(int(tau1), int(tau2));
    if (profile(fam.S).maxDegree > 3 * pow3(C))
        throw InfeasibleError("partner caterpillar exceeds the degree bound");

    fam.host = {HostKind::CliquePair, int((pow3(C) + 1) * r - 1), int((pow3(C) + 1) * r - 1), C};
    fam.G = build_structured_host(fam.host);
    fam.vacuous = fam.T.size() > fam.G.size();
    return fam;
}

// The bipartite analogue: the same caterpillar glued to every ternary leaf,
// against the bipartite-pair host on 2*nu + C - 3 vertices.
inline GeneratedFamily gen_thm14(int C, int rho, int r) {
    if (C < 2) throw std::invalid_argument("the bipartite family needs C >= 2");
    if (rho < 2 || r < 1) throw std::invalid_argument("need rho >= 2 and r >= 1");

    Tree bar = make_caterpillar(rho * r, r);
    int barRoot = 0; // spine endpoint: root in the class of size r
    Tree ternary = make_perfect_ternary(C);
    auto leaves = ternary_leaves(C);
    std::vector<std::pair<Tree, int>> glued(leaves.size(), {bar, barRoot});

    GeneratedFamily fam;
    fam.params = {C, r, rho};
    fam.T = glue_trees(ternary, leaves, glued);

    long n = fam.T.size();
    long nu = ((pow3(C) + 3) * (long(rho) * r) + (pow3(C) - 3) * r) / 2;
    long tau1 = n - nu;
    long tau2 = n - 2 * tau1;
    if (tau2 < 1 || tau1 < tau2)
        throw InfeasibleError("degenerate partner classes tau=(" + std::to_string(tau1) + "," +
                              std::to_string(tau2) + ")");
    fam.S = make_caterpillar(int(tau1), int(tau2));

    fam.host = {HostKind::BipartitePair, int(nu - 1), int(nu - 1), C - 1};
    fam.G = build_structured_host(fam.host);
    fam.vacuous = fam.T.size() > fam.G.size();
    return fam;
}

namespace detail {

inline void independent_sets_upto(const Tree& t, int maxSize,
                                  const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> cur;
    std::function<void(int)> go = [&](int from) {
        visit(cur);
        if (int(cur.size()) == maxSize) return;
        for (int v = from; v < t.size(); ++v) {
            bool ok = true;
            for (int u : cur)
                if (t.has_edge(u, v)) { ok = false; break; }
            if (!ok) continue;
            cur.push_back(v);
            go(v + 1);
            cur.pop_back();
        }
    };
    go(0);
}

inline std::vector<std::vector<int>> forest_components(const Tree& t, const std::vector<int>& removed) {
    std::vector<char> gone(t.size(), 0);
    for (int v : removed) gone[v] = 1;
    std::vector<std::vector<int>> comps;
    std::vector<char> seen(t.size(), 0);
    for (int s = 0; s < t.size(); ++s) {
        if (gone[s] || seen[s]) continue;
        std::vector<int> comp, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (int w : t.neighbours(u))
                if (!gone[w] && !seen[w]) { seen[w] = 1; stack.push_back(w); }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

} // namespace detail

// Exact minimum |U1| = |U2| for which T embeds into the clique-pair host
// with |W| = wSize: enumerate independent preimages of W, then balance the
// components of T - S over the two cliques by subset sum.
inline int min_u1_clique_host(const Tree& T, int wSize) {
    int best = T.size();
    detail::independent_sets_upto(T, wSize, [&](const std::vector<int>& S) {
        auto comps = detail::forest_components(T, S);
        int total = 0;
        std::vector<int> sizes;
        for (auto& c : comps) {
            sizes.push_back(int(c.size()));
            total += int(c.size());
        }
        std::vector<char> reach(total + 1, 0);
        reach[0] = 1;
        for (int c : sizes)
            for (int s = total - c; s >= 0; --s)
                if (reach[s]) reach[s + c] = 1;
        for (int s = 0; s <= total; ++s)
            if (reach[s]) best = std::min(best, std::max(s, total - s));
    });
    return best;
}

// Bipartite analogue: each component of T - S embeds across U1/U2 with a
// free orientation of its two classes.
inline int min_u1_bipartite_host(const Tree& T, int wSize) {
    auto side = T.bipartition();
    int best = T.size();
    detail::independent_sets_upto(T, wSize, [&](const std::vector<int>& S) {
        auto comps = detail::forest_components(T, S);
        int total = 0;
        std::vector<std::pair<int, int>> classes;
        for (auto& c : comps) {
            int a = 0;
            for (int v : c)
                if (side[v] == side[c.front()]) ++a;
            classes.emplace_back(a, int(c.size()) - a);
            total += int(c.size());
        }
        std::vector<char> reach(total + 1, 0);
        reach[0] = 1;
        for (auto& [a, b] : classes) {
            std::vector<char> next(total + 1, 0);
            for (int s = 0; s <= total; ++s) {
                if (!reach[s]) continue;
                if (s + a <= total) next[s + a] = 1;
                if (s + b <= total) next[s + b] = 1;
            }
            reach = std::move(next);
        }
        for (int s = 0; s <= total; ++s)
            if (reach[s]) best = std::min(best, std::max(s, total - s));
    });
    return best;
}

struct FamilyCertificate {
    CounterexampleParams params;
    StructuredHost host;
    int N = 0;
    bool redTAbsent = false;
    bool blueSAbsent = false;
    bool vacuous = false;
    int oracleMinU1 = 0;          // exact host capacity needed for a red T
    Rational lemmaBound = 0;      // the closed-form floor on oracleMinU1
    int rbar = 0;                 // four-construction lower bound
    int impliedRamseyLowerBound = 0;
    std::string redProvenance;    // "oracle" or "oracle+exact"
    std::string note;
};

namespace detail {

// Blue side of both hosts decomposes into the W-clique plus either the
// complete bipartite U1-U2 graph (clique-pair host) or the cliques U1 and U2
// (bipartite-pair host). A tree fits a clique iff it fits by size, and fits
// K_{m,m'} iff its classes fit the sides.
inline bool blue_side_avoids(const GeneratedFamily& fam) {
    auto pS = profile(fam.S);
    if (pS.n <= fam.host.wSize) return false; // W is a blue clique
    if (fam.host.kind == HostKind::CliquePair) {
        int m = std::min(fam.host.u1Size, fam.host.u2Size);
        int m2 = std::max(fam.host.u1Size, fam.host.u2Size);
        if (pS.t1 <= m2 && pS.t2 <= m && pS.n <= m + m2) return false;
    } else {
        if (pS.n <= fam.host.u1Size || pS.n <= fam.host.u2Size) return false;
    }
    return true;
}

} // namespace detail

// End-to-end certificate for the clique-pair family: the oracle rules out a
// red T, the blue side is ruled out structurally, and where the exact search
// finishes in budget it must agree.
inline FamilyCertificate verify_thm13(int C, int r, std::uint64_t spotCheckBudget = 2'000'000) {
    auto fam = gen_thm13(C, r);
    FamilyCertificate cert;
    cert.params = fam.params;
    cert.host = fam.host;
    cert.N = fam.G.size();
    cert.vacuous = fam.vacuous;

    cert.oracleMinU1 = min_u1_clique_host(fam.T, fam.host.wSize);
    cert.lemmaBound = Rational((pow3(C) + 1) * 2 * r, 2); // glued size is 2r
    cert.redTAbsent = cert.oracleMinU1 > fam.host.u1Size;
    cert.redProvenance = "oracle";
    auto spot = contains_mono(fam.G, fam.T, Colour::Red, spotCheckBudget);
    if (spot.status != SearchStatus::Unknown) {
        if (spot.found() == cert.redTAbsent)
            throw std::logic_error("oracle and exact search disagree on the red side");
        cert.redProvenance = "oracle+exact";
    }

    cert.blueSAbsent = detail::blue_side_avoids(fam);
    cert.rbar = lower_bound(profile(fam.T), profile(fam.S));
    cert.impliedRamseyLowerBound = cert.N + 1;
    cert.note = "implied bound exceeds the formula by " +
                std::to_string(cert.impliedRamseyLowerBound - 1 - cert.rbar);
    return cert;
}

inline FamilyCertificate verify_thm14(int C, int rho, int r,
                                      std::uint64_t spotCheckBudget = 2'000'000) {
    auto fam = gen_thm14(C, rho, r);
    FamilyCertificate cert;
    cert.params = fam.params;
    cert.host = fam.host;
    cert.N = fam.G.size();
    cert.vacuous = fam.vacuous;

    cert.oracleMinU1 = min_u1_bipartite_host(fam.T, fam.host.wSize);
    cert.lemmaBound =
        Rational((pow3(C) + 3) * (long(rho) * r) + (pow3(C) - 3) * r, 2);
    cert.redTAbsent = fam.vacuous || cert.oracleMinU1 > fam.host.u1Size;
    cert.redProvenance = "oracle";
    if (!fam.vacuous) {
        auto spot = contains_mono(fam.G, fam.T, Colour::Red, spotCheckBudget);
        if (spot.status != SearchStatus::Unknown) {
            if (spot.found() == cert.redTAbsent)
                throw std::logic_error("oracle and exact search disagree on the red side");
            cert.redProvenance = "oracle+exact";
        }
    }

    cert.blueSAbsent = detail::blue_side_avoids(fam);
    cert.rbar = lower_bound(profile(fam.T), profile(fam.S));
    cert.impliedRamseyLowerBound = cert.N + 1;
    cert.note = fam.vacuous ? "vacuous: |T| exceeds the host size"
                            : "implied bound exceeds the formula by " +
                                  std::to_string(cert.impliedRamseyLowerBound - 1 - cert.rbar);
    return cert;
}

struct RandomConstructionTrial {
    bool degreeOk = false;
    bool noExpandingSet = false;
    bool exhaustiveExpansionCheck = true;
    int minRedDegree = 0;
};

struct RandomConstructionReport {
    int n = 0;
    Rational c;
    Rational mu;
    int N = 0;
    int t = 0;      // expanding-set size 10/c
    int bound = 0;  // |T|
    std::uint64_t seed = 0;
    std::vector<RandomConstructionTrial> trials;
    int passes = 0;
};

// Statistical demonstration of the random lower-bound construction: sample
// red G(N, 1 - c/10) and check the minimum red degree plus the absence of a
// small set reaching |T| vertices. This demonstrates, it does not prove.
inline RandomConstructionReport demo_thm62(int n, const Rational& c, std::uint64_t seed,
                                           int trials, std::uint64_t expansionCap = 2'000'000) {
    if (n < 1 || trials < 1) throw std::invalid_argument("need n >= 1 and trials >= 1");
    if (c <= 0 || c > 10) throw std::invalid_argument("c must be in (0, 10]");
    RandomConstructionReport rep;
    rep.n = n;
    rep.c = c;
    rep.t = int(ceil_to_long(Rational(10) / c));
    Rational base = c / 10;
    Rational mu = 1;
    for (int i = 0; i < rep.t; ++i) mu *= base;
    mu /= 100;
    rep.mu = mu;
    rep.seed = seed;
    rep.N = int(floor_to_long((Rational(4) + mu) * n));
    rep.bound = int(4L * n - floor_to_long(mu * n));
    if (rep.t > rep.N) throw std::invalid_argument("expanding-set size exceeds the host");

    Rational degNeed = (Rational(4) + mu) * n - c * n / 2;
    for (int i = 0; i < trials; ++i) {
        auto g = sample_random_colouring(rep.N, Rational(1) - base, seed + std::uint64_t(i));
        RandomConstructionTrial trial;
        trial.minRedDegree = rep.N;
        for (int v = 0; v < rep.N; ++v)
            trial.minRedDegree = std::min(trial.minRedDegree, g.red_degree(v));
        trial.degreeOk = Rational(trial.minRedDegree) >= degNeed;
        auto exp = check_neighbourhood_expansion(g, rep.t, rep.bound, expansionCap,
                                                 seed + std::uint64_t(i));
        trial.noExpandingSet = !exp.violator.has_value();
        trial.exhaustiveExpansionCheck = exp.exhaustive;
        if (trial.degreeOk && trial.noExpandingSet) ++rep.passes;
        rep.trials.push_back(trial);
    }
    return rep;
}

} // namespace treeramsey
