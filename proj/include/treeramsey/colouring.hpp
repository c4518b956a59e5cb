#pragma once

// Red/blue colourings of complete graphs, the clique-pair lower bound
// constructions, extremality witnesses, and seeded random colourings. Only
// the red adjacency is stored; every blue query negates it.

#include "treeramsey/bitset.hpp"
#include "treeramsey/rational.hpp"
#include "treeramsey/tree.hpp"

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeramsey {

enum class Colour { Red, Blue };

inline const char* to_string(Colour c) { return c == Colour::Red ? "red" : "blue"; }

class TwoColouring {
public:
    TwoColouring() = default;
    explicit TwoColouring(int n) : red_(n) {}

    int size() const { return red_.size(); }

    void set_red(int u, int v) { red_.add_edge(u, v); }
    void set_blue(int u, int v) { red_.remove_edge(u, v); }

    bool is_red(int u, int v) const { return red_.test(u, v); }
    bool is_blue(int u, int v) const { return u != v && !red_.test(u, v); }
    bool has(Colour c, int u, int v) const { return c == Colour::Red ? is_red(u, v) : is_blue(u, v); }

    const BitMatrix& red() const { return red_; }
    BitMatrix blue() const { return red_.complement(); }
    BitMatrix graph(Colour c) const { return c == Colour::Red ? red_ : blue(); }

    int red_degree(int v) const { return red_.degree(v); }
    int blue_degree(int v) const { return size() - 1 - red_.degree(v); }

    int red_degree_into(int v, const std::vector<int>& set) const {
        int d = 0;
        for (int u : set)
            if (u != v && is_red(v, u)) ++d;
        return d;
    }
    int blue_degree_into(int v, const std::vector<int>& set) const {
        int d = 0;
        for (int u : set)
            if (u != v && is_blue(v, u)) ++d;
        return d;
    }

    bool operator==(const TwoColouring& o) const = default;

private:
    BitMatrix red_;
};

enum class ConstructionKind { A1, A2, B1, B2, B3, B4 };

inline const char* to_string(ConstructionKind k) {
    switch (k) {
        case ConstructionKind::A1: return "A1";
        case ConstructionKind::A2: return "A2";
        case ConstructionKind::B1: return "B1";
        case ConstructionKind::B2: return "B2";
        case ConstructionKind::B3: return "B3";
        case ConstructionKind::B4: return "B4";
    }
    return "?";
}

inline std::optional<ConstructionKind> construction_kind_from(const std::string& s) {
    if (s == "A1") return ConstructionKind::A1;
    if (s == "A2") return ConstructionKind::A2;
    if (s == "B1") return ConstructionKind::B1;
    if (s == "B2") return ConstructionKind::B2;
    if (s == "B3") return ConstructionKind::B3;
    if (s == "B4") return ConstructionKind::B4;
    return std::nullopt;
}

struct ConstructionParams {
    ConstructionKind kind = ConstructionKind::B1;
    int t1 = 0, t2 = 0;     // classes of T, t1 >= t2
    int tau1 = 0, tau2 = 0; // classes of the second tree, tau1 >= tau2

    int n() const { return t1 + t2; }
    int nu() const { return tau1 + tau2; }

    void validate() const {
        if (t2 < 1 || t1 < t2 || tau2 < 1 || tau1 < tau2)
            throw std::invalid_argument("construction needs t1>=t2>=1 and tau1>=tau2>=1");
    }
};

// The two clique sizes of a construction; first is the red pair flag.
struct ConstructionShape {
    bool redCliques = true; // cliques are red (cross edges blue), else inverted
    int a = 0, b = 0;
};

inline ConstructionShape construction_shape(const ConstructionParams& p) {
    p.validate();
    switch (p.kind) {
        case ConstructionKind::A1: return {true, p.t1 + p.t2 - 1, p.t2 - 1};
        case ConstructionKind::A2: return {true, p.t1 - 1, p.t1 - 1};
        case ConstructionKind::B1: return {true, p.n() - 1, p.tau2 - 1};
        case ConstructionKind::B2: return {false, p.nu() - 1, std::min(p.t2, p.nu()) - 1};
        case ConstructionKind::B3: {
            int m = std::min(p.t1, p.nu()) - 1;
            return {false, m, m};
        }
        case ConstructionKind::B4: return {true, p.tau1 - 1, p.tau1 - 1};
    }
    throw std::logic_error("unreachable");
}

// Two disjoint monochromatic cliques with the opposite colour between them.
inline TwoColouring make_construction(const ConstructionParams& p) {
    auto shape = construction_shape(p);
    if (shape.a < 0 || shape.b < 0 || shape.a + shape.b < 1)
        throw std::invalid_argument("degenerate construction sizes");
    int N = shape.a + shape.b;
    TwoColouring g(N);
    if (shape.redCliques) {
        for (int u = 0; u < shape.a; ++u)
            for (int v = u + 1; v < shape.a; ++v) g.set_red(u, v);
        for (int u = shape.a; u < N; ++u)
            for (int v = u + 1; v < N; ++v) g.set_red(u, v);
    } else {
        for (int u = 0; u < shape.a; ++u)
            for (int v = shape.a; v < N; ++v) g.set_red(u, v);
    }
    return g;
}

struct ExtremalWitness {
    int type = 1; // 1..4
    std::vector<int> U1;
    std::vector<int> U2;
    Rational mu = 0;
};

// Exact check of the degree/size conditions of the claimed extremality type.
inline bool verify_extremal(const TwoColouring& g, const ExtremalWitness& w, const Tree& T,
                            const Tree& S) {
    if (w.type < 1 || w.type > 4) return false;
    auto pT = profile(T);
    auto pS = profile(S);
    int n = pT.n, nu = pS.n;
    std::vector<char> in1(g.size(), 0), in2(g.size(), 0);
    for (int v : w.U1) {
        if (v < 0 || v >= g.size() || in1[v]) return false;
        in1[v] = 1;
    }
    for (int v : w.U2) {
        if (v < 0 || v >= g.size() || in2[v] || in1[v]) return false;
        in2[v] = 1;
    }
    Rational slack = w.mu * n;
    auto sizeOk = [&](std::size_t have, const Rational& need) {
        return Rational(long(have)) >= need;
    };
    Rational oneMinusMu = Rational(1) - w.mu;
    switch (w.type) {
        case 1:
            if (!sizeOk(w.U1.size(), oneMinusMu * n)) return false;
            if (!sizeOk(w.U2.size(), oneMinusMu * pS.t2)) return false;
            for (int u : w.U1)
                if (Rational(g.blue_degree_into(u, w.U1)) > slack) return false;
            for (int u : w.U1)
                if (Rational(g.red_degree_into(u, w.U2)) > slack) return false;
            for (int u : w.U2)
                if (Rational(g.red_degree_into(u, w.U1)) > slack) return false;
            return true;
        case 2:
            if (!sizeOk(w.U1.size(), oneMinusMu * nu)) return false;
            if (!sizeOk(w.U2.size(), oneMinusMu * pT.t2)) return false;
            for (int u : w.U1)
                if (Rational(g.red_degree_into(u, w.U1)) > slack) return false;
            for (int u : w.U1)
                if (Rational(g.blue_degree_into(u, w.U2)) > slack) return false;
            for (int u : w.U2)
                if (Rational(g.blue_degree_into(u, w.U1)) > slack) return false;
            return true;
        case 3:
            if (!sizeOk(w.U1.size(), oneMinusMu * pT.t1)) return false;
            if (!sizeOk(w.U2.size(), oneMinusMu * pT.t1)) return false;
            for (int u : w.U1) {
                if (Rational(g.red_degree_into(u, w.U1)) > slack) return false;
                if (Rational(g.blue_degree_into(u, w.U2)) > slack) return false;
            }
            for (int u : w.U2) {
                if (Rational(g.red_degree_into(u, w.U2)) > slack) return false;
                if (Rational(g.blue_degree_into(u, w.U1)) > slack) return false;
            }
            return true;
        case 4:
            if (!sizeOk(w.U1.size(), oneMinusMu * pS.t1)) return false;
            if (!sizeOk(w.U2.size(), oneMinusMu * pS.t1)) return false;
            for (int u : w.U1) {
                if (Rational(g.blue_degree_into(u, w.U1)) > slack) return false;
                if (Rational(g.red_degree_into(u, w.U2)) > slack) return false;
            }
            for (int u : w.U2) {
                if (Rational(g.blue_degree_into(u, w.U2)) > slack) return false;
                if (Rational(g.red_degree_into(u, w.U1)) > slack) return false;
            }
            return true;
    }
    return false;
}

// Heuristic witness finder: seeds candidate (U1, U2) pairs from monochromatic
// components and degree-threshold closures, then defers to verify_extremal.
// Returning nothing proves nothing.
inline std::optional<ExtremalWitness> find_extremal_witness(const TwoColouring& g, const Tree& T,
                                                            const Tree& S, const Rational& mu) {
    int N = g.size();
    if (N == 0) return std::nullopt;

    auto try_types = [&](std::vector<int> a, std::vector<int> b) -> std::optional<ExtremalWitness> {
        for (int type = 1; type <= 4; ++type) {
            for (int flip = 0; flip < 2; ++flip) {
                ExtremalWitness w;
                w.type = type;
                w.mu = mu;
                w.U1 = flip ? b : a;
                w.U2 = flip ? a : b;
                if (!w.U1.empty() && !w.U2.empty() && verify_extremal(g, w, T, S)) return w;
            }
        }
        return std::nullopt;
    };

    // Seed 1: two largest components of each monochromatic graph.
    for (Colour c : {Colour::Red, Colour::Blue}) {
        BitMatrix m = g.graph(c);
        std::vector<int> id, sizes;
        m.components(id, sizes);
        if (sizes.size() < 2) continue;
        int best = 0, second = 1;
        if (sizes[second] > sizes[best]) std::swap(best, second);
        for (std::size_t i = 2; i < sizes.size(); ++i) {
            if (sizes[i] > sizes[best]) { second = best; best = int(i); }
            else if (sizes[i] > sizes[second]) second = int(i);
        }
        std::vector<int> a, b;
        for (int v = 0; v < N; ++v) {
            if (id[v] == best) a.push_back(v);
            else if (id[v] == second) b.push_back(v);
        }
        if (auto w = try_types(a, b)) return w;
    }

    // Seed 2: threshold closure around the highest-degree vertex of each
    // colour, in the style of the U+ sets of the embedding strategies.
    for (Colour c : {Colour::Red, Colour::Blue}) {
        BitMatrix m = g.graph(c);
        int v0 = 0;
        for (int v = 1; v < N; ++v)
            if (m.degree(v) > m.degree(v0)) v0 = v;
        std::vector<int> u1 = m.row(v0).to_vector();
        u1.push_back(v0);
        for (int round = 0; round < 2; ++round) {
            std::vector<int> next;
            for (int v = 0; v < N; ++v) {
                int d = 0;
                for (int u : u1)
                    if (u != v && m.test(u, v)) ++d;
                if (2 * d >= int(u1.size())) next.push_back(v);
            }
            u1 = std::move(next);
            if (u1.empty()) break;
        }
        if (u1.empty() || int(u1.size()) == N) continue;
        std::vector<char> in1(N, 0);
        for (int v : u1) in1[v] = 1;
        std::vector<int> u2;
        for (int v = 0; v < N; ++v)
            if (!in1[v]) u2.push_back(v);
        if (auto w = try_types(u1, u2)) return w;
    }
    return std::nullopt;
}

// G(N, redProb) red graph with the blue complement; identical (N, p, seed)
// inputs give identical colourings.
inline TwoColouring sample_random_colouring(int N, const Rational& redProb, std::uint64_t seed) {
    if (redProb < 0 || redProb > 1) throw std::invalid_argument("redProb must be in [0,1]");
    TwoColouring g(N);
    std::mt19937_64 rng(seed);
    BigInt num = numerator(redProb), den = denominator(redProb);
    for (int u = 0; u < N; ++u)
        for (int v = u + 1; v < N; ++v) {
            BigInt draw = rng();
            // red iff draw/2^64 < p, exactly
            if (draw * den < num << 64) g.set_red(u, v);
        }
    return g;
}

struct ExpansionResult {
    std::optional<std::vector<int>> violator; // t-set U with |N_red(U) u U| >= bound
    bool exhaustive = true;
    std::uint64_t setsTried = 0;
};

// Search for a t-subset whose closed red neighbourhood reaches the bound.
// Exhaustive when C(N,t) fits under maxSets, otherwise seeded sampling
// flagged as non-exhaustive.
inline ExpansionResult check_neighbourhood_expansion(const TwoColouring& g, int t, int bound,
                                                     std::uint64_t maxSets = 2'000'000,
                                                     std::uint64_t seed = 0) {
    int N = g.size();
    if (t > N || t < 1) throw std::invalid_argument("t must be in [1, N]");
    ExpansionResult res;

    auto reach = [&](const std::vector<int>& set) {
        BitRow r(N);
        for (int v : set) {
            r.set(v);
            r |= g.red().row(v);
        }
        return r.count();
    };

    BigInt combos = 1;
    for (int i = 0; i < t; ++i) combos = combos * (N - i) / (i + 1);
    if (combos <= maxSets) {
        std::vector<int> idx(t);
        for (int i = 0; i < t; ++i) idx[i] = i;
        while (true) {
            ++res.setsTried;
            if (reach(idx) >= bound) {
                res.violator = idx;
                return res;
            }
            int i = t - 1;
            while (i >= 0 && idx[i] == N - t + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
        }
        return res;
    }

    res.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::vector<int> pool(N);
    for (int i = 0; i < N; ++i) pool[i] = i;
    for (std::uint64_t it = 0; it < maxSets; ++it) {
        ++res.setsTried;
        for (int i = 0; i < t; ++i) {
            std::uniform_int_distribution<int> pick(i, N - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }
        std::vector<int> set(pool.begin(), pool.begin() + t);
        if (reach(set) >= bound) {
            res.violator = std::move(set);
            return res;
        }
    }
    return res;
}

} // namespace treeramsey
