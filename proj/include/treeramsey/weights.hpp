#pragma once

// Weight functions on digraphs: a nonnegative arc weighting f is feasible for
// parameter alpha when (1/alpha)*out-weight + in-weight <= 1 at every vertex.
// Maximum total weight is an exact LP; the A/B/C decomposition, the Q/R
// structure of colour link digraphs, and the blue-biclique finder build on it.

#include "treeramsey/colouring.hpp"
#include "treeramsey/rational.hpp"
#include "treeramsey/simplex.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeramsey {

struct Digraph {
    int n = 0;
    std::vector<std::pair<int, int>> arcs; // ordered (u, v), u != v

    void validate() const {
        std::set<std::pair<int, int>> seen;
        for (auto& a : arcs) {
            if (a.first < 0 || a.first >= n || a.second < 0 || a.second >= n ||
                a.first == a.second)
                throw std::invalid_argument("bad arc");
            if (!seen.insert(a).second) throw std::invalid_argument("duplicate arc");
        }
    }
};

struct WeightProblem {
    Digraph digraph;
    Rational alpha = 2;

    void validate() const {
        digraph.validate();
        if (alpha < 1) throw std::invalid_argument("alpha must be at least 1");
    }
};

struct WeightFunction {
    std::vector<Rational> weights; // parallel to digraph.arcs

    Rational total() const {
        Rational s = 0;
        for (auto& w : weights) s += w;
        return s;
    }
};

// (1/alpha) * sum of outgoing f + sum of incoming f at v.
inline Rational vertex_weight(const WeightProblem& p, const WeightFunction& f, int v) {
    Rational out = 0, in = 0;
    for (std::size_t e = 0; e < p.digraph.arcs.size(); ++e) {
        if (p.digraph.arcs[e].first == v) out += f.weights[e];
        if (p.digraph.arcs[e].second == v) in += f.weights[e];
    }
    return out / p.alpha + in;
}

inline bool is_feasible(const WeightProblem& p, const WeightFunction& f) {
    if (f.weights.size() != p.digraph.arcs.size()) return false;
    for (auto& w : f.weights)
        if (w < 0) return false;
    for (int v = 0; v < p.digraph.n; ++v)
        if (vertex_weight(p, f, v) > 1) return false;
    return true;
}

namespace detail {
inline LinearProgram weight_lp(const WeightProblem& p) {
    LinearProgram lp;
    std::size_t m = p.digraph.arcs.size();
    lp.c.assign(m, Rational(1));
    lp.A.assign(p.digraph.n, std::vector<Rational>(m, Rational(0)));
    lp.b.assign(p.digraph.n, Rational(1));
    lp.rel.assign(p.digraph.n, Relation::LE);
    for (std::size_t e = 0; e < m; ++e) {
        lp.A[p.digraph.arcs[e].first][e] += Rational(1) / p.alpha;
        lp.A[p.digraph.arcs[e].second][e] += 1;
    }
    return lp;
}
} // namespace detail

struct MaxWeightResult {
    Rational wMax;
    WeightFunction f;
    std::vector<Rational> dual; // per-vertex dual certificate, b.y == wMax
};

// Exact LP optimum with a dual feasibility certificate checked before return.
inline MaxWeightResult max_weight(const WeightProblem& p) {
    p.validate();
    MaxWeightResult out;
    if (p.digraph.arcs.empty()) {
        out.wMax = 0;
        out.dual.assign(p.digraph.n, Rational(0));
        return out;
    }
    auto lp = detail::weight_lp(p);
    auto res = solve_lp(lp);
    if (res.status != LPStatus::Optimal) throw std::logic_error("weight LP must have an optimum");
    out.wMax = res.objective;
    out.f.weights = res.x;
    out.dual = res.dual;
    if (!is_feasible(p, out.f) || out.f.total() != out.wMax)
        throw std::logic_error("primal certificate failed");
    // strong duality: y >= 0, A^T y >= 1 per arc, and b.y equals the optimum
    Rational by = 0;
    for (auto& y : out.dual) {
        if (y < 0) throw std::logic_error("negative dual");
        by += y;
    }
    for (auto& [u, v] : p.digraph.arcs)
        if (out.dual[u] / p.alpha + out.dual[v] < 1)
            throw std::logic_error("dual infeasible");
    if (by != out.wMax) throw std::logic_error("duality gap");
    return out;
}

struct ABCPartition {
    std::vector<int> A; // vertices with w(a,f) < 1 for some maximising f
    std::vector<int> B; // tails of arcs into A (may overlap A)
    std::vector<int> C; // the rest
    Rational wMax;
};

// Membership in A is decided per vertex by minimising its vertex weight over
// the optimal face of the weight LP. The three counting bounds of the
// decomposition are asserted before returning.
inline ABCPartition abc_partition(const WeightProblem& p) {
    p.validate();
    ABCPartition out;
    auto base = max_weight(p);
    out.wMax = base.wMax;

    std::vector<char> inA(p.digraph.n, 0);
    if (p.digraph.arcs.empty()) {
        for (int v = 0; v < p.digraph.n; ++v) inA[v] = 1;
    } else {
        for (int v = 0; v < p.digraph.n; ++v) {
            LinearProgram lp = detail::weight_lp(p);
            // pin the optimum: total weight >= wMax
            lp.A.push_back(std::vector<Rational>(lp.c.size(), Rational(1)));
            lp.b.push_back(base.wMax);
            lp.rel.push_back(Relation::GE);
            // minimise w(v, f) == maximise its negation
            std::vector<Rational> obj(lp.c.size(), Rational(0));
            for (std::size_t e = 0; e < p.digraph.arcs.size(); ++e) {
                if (p.digraph.arcs[e].first == v) obj[e] -= Rational(1) / p.alpha;
                if (p.digraph.arcs[e].second == v) obj[e] -= 1;
            }
            lp.c = obj;
            auto res = solve_lp(lp);
            if (res.status != LPStatus::Optimal)
                throw std::logic_error("membership LP must have an optimum");
            if (-res.objective < 1) inA[v] = 1;
        }
    }

    std::vector<char> inB(p.digraph.n, 0);
    for (auto& [u, v] : p.digraph.arcs)
        if (inA[v]) inB[u] = 1;
    for (int v = 0; v < p.digraph.n; ++v) {
        if (inA[v]) out.A.push_back(v);
        if (inB[v]) out.B.push_back(v);
        if (!inA[v] && !inB[v]) out.C.push_back(v);
    }

    Rational nB = Rational(long(out.B.size()));
    Rational nC = Rational(long(out.C.size()));
    Rational nA = Rational(long(out.A.size()));
    Rational invA = Rational(1) / p.alpha;
    if (nB > out.wMax / p.alpha)
        throw std::logic_error("ABC bound |B| <= wMax/alpha failed");
    if (nC > (Rational(1) + invA) * out.wMax - (Rational(1) + p.alpha) * nB)
        throw std::logic_error("ABC bound on |C| failed");
    // The strict form of this bound fails whenever every vertex constraint is
    // tight at every optimum (already for the complete symmetric digraph on
    // two vertices), so the provable non-strict consequence of the first two
    // bounds is what gets asserted.
    if (nA < Rational(p.digraph.n) - (Rational(1) + invA) * out.wMax)
        throw std::logic_error("ABC bound on |A| failed");
    return out;
}

// Link digraph of x in the chosen colour: vertex set V minus x re-indexed in
// order, and yz is an arc exactly when xy and yz both carry that colour.
inline Digraph colour_link_digraph(const TwoColouring& g, int x, Colour colour) {
    if (x < 0 || x >= g.size()) throw std::invalid_argument("x out of range");
    Digraph d;
    d.n = g.size() - 1;
    auto reindex = [&](int v) { return v < x ? v : v - 1; };
    for (int y = 0; y < g.size(); ++y) {
        if (y == x || !g.has(colour, x, y)) continue;
        for (int z = 0; z < g.size(); ++z) {
            if (z == x || z == y || !g.has(colour, y, z)) continue;
            d.arcs.emplace_back(reindex(y), reindex(z));
        }
    }
    return d;
}

struct QRReport {
    std::vector<int> Q;      // colour-* neighbours of x
    std::vector<int> R;      // everything else except x
    ABCPartition abc;        // on the link digraph, in original vertex labels
    Rational wMax;
    bool noBInR = true;                  // B within Q
    bool monochromeFreeZones = true;     // no *-edges inside QA or between QA/QC/RA
    bool countBound = true;              // |Q n B| + |R n C| <= wMax
};

inline QRReport qr_report(const TwoColouring& g, int x, Colour colour, const Rational& alpha) {
    if (x < 0 || x >= g.size()) throw std::invalid_argument("x out of range");
    WeightProblem p{colour_link_digraph(g, x, colour), alpha};
    QRReport rep;
    auto abc = abc_partition(p);
    rep.wMax = abc.wMax;
    auto restore = [&](int v) { return v < x ? v : v + 1; };
    for (int& v : abc.A) v = restore(v);
    for (int& v : abc.B) v = restore(v);
    for (int& v : abc.C) v = restore(v);
    rep.abc = abc;

    for (int v = 0; v < g.size(); ++v) {
        if (v == x) continue;
        (g.has(colour, x, v) ? rep.Q : rep.R).push_back(v);
    }

    std::vector<char> inQ(g.size(), 0), inA(g.size(), 0), inB(g.size(), 0), inC(g.size(), 0);
    for (int v : rep.Q) inQ[v] = 1;
    for (int v : rep.abc.A) inA[v] = 1;
    for (int v : rep.abc.B) inB[v] = 1;
    for (int v : rep.abc.C) inC[v] = 1;

    for (int v : rep.abc.B)
        if (!inQ[v]) rep.noBInR = false;

    // QA internally, and all three pairs among QA, QC, RA, must avoid the
    // chosen colour.
    std::vector<int> QA, QC, RA;
    for (int v = 0; v < g.size(); ++v) {
        if (v == x) continue;
        if (inQ[v] && inA[v]) QA.push_back(v);
        if (inQ[v] && inC[v]) QC.push_back(v);
        if (!inQ[v] && inA[v]) RA.push_back(v);
    }
    auto zoneClean = [&](const std::vector<int>& X, const std::vector<int>& Y) {
        for (int u : X)
            for (int v : Y)
                if (u != v && g.has(colour, u, v)) return false;
        return true;
    };
    rep.monochromeFreeZones = zoneClean(QA, QA) && zoneClean(QA, QC) && zoneClean(QA, RA) &&
                              zoneClean(QC, RA);

    long qb = 0, rc = 0;
    for (int v : rep.Q)
        if (inB[v]) ++qb;
    for (int v : rep.R)
        if (inC[v]) ++rc;
    rep.countBound = Rational(qb + rc) <= rep.wMax;
    return rep;
}

struct BicliqueSituation {
    int z = -1;
    std::vector<int> X;
    std::vector<int> Y;
};

struct BicliqueOutcome {
    std::optional<BicliqueSituation> situation;
    std::string reason; // which hypothesis or step failed, empty on success
};

// Searches for the blue structure promised when a vertex has high red degree
// but the red link weight is small: z blue-adjacent to all of X u Y with every
// X-Y edge blue. Hypotheses are checked at runtime and reported on failure.
inline BicliqueOutcome find_biclique_situation(const TwoColouring& g, int v, const Rational& alpha,
                                               const Rational& beta, const Rational& eps) {
    if (v < 0 || v >= g.size()) throw std::invalid_argument("v out of range");
    if (!(beta > 1) || beta > alpha) throw std::invalid_argument("need 1 < beta <= alpha");
    BicliqueOutcome out;
    Rational invA = Rational(1) / alpha, invB = Rational(1) / beta;
    Rational k = Rational(g.size()) / (Rational(1) + invA + invB - 2 * eps);

    if (Rational(g.red_degree(v)) < (invA + invB - 5 * eps) * k) {
        out.reason = "degree hypothesis";
        return out;
    }
    WeightProblem p{colour_link_digraph(g, v, Colour::Red), alpha};
    auto mw = max_weight(p);
    if (!(mw.wMax < (Rational(1) + eps) * k)) {
        out.reason = "wMax too large";
        return out;
    }
    auto rep = qr_report(g, v, Colour::Red, alpha);

    std::vector<char> inQ(g.size(), 0), inA(g.size(), 0), inC(g.size(), 0);
    for (int u : rep.Q) inQ[u] = 1;
    for (int u : rep.abc.A) inA[u] = 1;
    for (int u : rep.abc.C) inC[u] = 1;
    std::vector<int> QA, QC, RA;
    for (int u = 0; u < g.size(); ++u) {
        if (u == v) continue;
        if (inQ[u] && inA[u]) QA.push_back(u);
        if (inQ[u] && inC[u]) QC.push_back(u);
        if (!inQ[u] && inA[u]) RA.push_back(u);
    }
    if (QA.empty()) {
        out.reason = "Q and A do not meet";
        return out;
    }

    int z = QA.front();
    auto blueNbrs = [&](const std::vector<int>& set) {
        std::vector<int> outSet;
        for (int u : set)
            if (u != z && g.is_blue(z, u)) outSet.push_back(u);
        return outSet;
    };

    Rational xThreshold = (invA - 6 * eps) * k;
    Rational sizeFloor = (invA - 10 * eps) * k;
    std::vector<int> X, Y;
    if (Rational(long(QC.size())) >= xThreshold) {
        X = blueNbrs(QC);
        std::vector<int> pool = QA;
        pool.insert(pool.end(), RA.begin(), RA.end());
        Y = blueNbrs(pool);
    } else {
        X = blueNbrs(QC);
        for (int u : QA) {
            if (Rational(long(X.size())) >= sizeFloor) break;
            if (u != z && g.is_blue(z, u)) X.push_back(u);
        }
        std::vector<char> inX(g.size(), 0);
        for (int u : X) inX[u] = 1;
        std::vector<int> pool = QA;
        pool.insert(pool.end(), RA.begin(), RA.end());
        for (int u : blueNbrs(pool))
            if (!inX[u]) Y.push_back(u);
    }

    if (Rational(long(X.size())) < sizeFloor || Rational(long(Y.size())) < sizeFloor ||
        Rational(long(X.size() + Y.size())) < (invA + invB - 10 * eps) * k) {
        out.reason = "witness sets too small";
        return out;
    }
    for (int uX : X)
        for (int uY : Y)
            if (!g.is_blue(uX, uY)) {
                out.reason = "X-Y edge not blue";
                return out;
            }
    for (int u : X)
        if (!g.is_blue(z, u)) { out.reason = "z not blue to X"; return out; }
    for (int u : Y)
        if (!g.is_blue(z, u)) { out.reason = "z not blue to Y"; return out; }

    out.situation = BicliqueSituation{z, std::move(X), std::move(Y)};
    return out;
}

} // namespace treeramsey
