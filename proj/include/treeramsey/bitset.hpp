#pragma once

// Packed bit rows used for adjacency storage and neighbourhood arithmetic.
// Degree counting and candidate-set intersection are the hot loops of every
// search in this library, so rows are raw uint64 words rather than
// std::vector<bool>.

#include <cstdint>
#include <cassert>
#include <bit>
#include <vector>

namespace treeramsey {

class BitRow {
public:
    BitRow() = default;
    explicit BitRow(int nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    int size() const { return nbits_; }

    bool test(int i) const {
        assert(i >= 0 && i < nbits_);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(int i) {
        assert(i >= 0 && i < nbits_);
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    void reset(int i) {
        assert(i >= 0 && i < nbits_);
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void clear() { for (auto& w : words_) w = 0; }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }

    int count_and(const BitRow& other) const {
        assert(nbits_ == other.nbits_);
        int c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k)
            c += std::popcount(words_[k] & other.words_[k]);
        return c;
    }

    BitRow& operator&=(const BitRow& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    BitRow& operator|=(const BitRow& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    BitRow& and_not(const BitRow& o) {
        assert(nbits_ == o.nbits_);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }

    // Complement within the first nbits_ bits.
    void flip_all() {
        for (auto& w : words_) w = ~w;
        trim();
    }

    int find_first() const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k]) return int(k * 64 + std::countr_zero(words_[k]));
        return -1;
    }
    int find_next(int i) const {
        ++i;
        if (i >= nbits_) return -1;
        std::size_t k = std::size_t(i) >> 6;
        std::uint64_t w = words_[k] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (w) return int(k * 64 + std::countr_zero(w));
            if (++k == words_.size()) return -1;
            w = words_[k];
        }
    }

    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }

    bool operator==(const BitRow& o) const = default;

    template <class F>
    void for_each(F&& f) const {
        for (int i = find_first(); i >= 0; i = find_next(i)) f(i);
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for_each([&](int i) { out.push_back(i); });
        return out;
    }

private:
    void trim() {
        if (nbits_ & 63) words_.back() &= (~std::uint64_t{0}) >> (64 - (nbits_ & 63));
    }

    int nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

// Symmetric adjacency matrix as packed rows. Loops are never stored.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(int n) : n_(n), rows_(n, BitRow(n)) {}

    int size() const { return n_; }

    bool test(int u, int v) const { return rows_[u].test(v); }
    void add_edge(int u, int v) {
        assert(u != v);
        rows_[u].set(v);
        rows_[v].set(u);
    }
    void remove_edge(int u, int v) {
        rows_[u].reset(v);
        rows_[v].reset(u);
    }

    const BitRow& row(int u) const { return rows_[u]; }
    int degree(int u) const { return rows_[u].count(); }

    int edge_count() const {
        int s = 0;
        for (int u = 0; u < n_; ++u) s += degree(u);
        return s / 2;
    }

    // Complement graph (no loops).
    BitMatrix complement() const {
        BitMatrix out(n_);
        for (int u = 0; u < n_; ++u) {
            out.rows_[u] = rows_[u];
            out.rows_[u].flip_all();
            out.rows_[u].reset(u);
        }
        return out;
    }

    // Induced subgraph on the given vertices, re-indexed in list order.
    BitMatrix induced(const std::vector<int>& verts) const {
        BitMatrix out(int(verts.size()));
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                if (test(verts[i], verts[j])) out.add_edge(int(i), int(j));
        return out;
    }

    std::vector<int> component_of(int v) const {
        std::vector<int> comp, stack{v};
        BitRow seen(n_);
        seen.set(v);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            rows_[u].for_each([&](int w) {
                if (!seen.test(w)) { seen.set(w); stack.push_back(w); }
            });
        }
        return comp;
    }

    // Component id per vertex plus component sizes.
    void components(std::vector<int>& id, std::vector<int>& sizes) const {
        id.assign(n_, -1);
        sizes.clear();
        for (int v = 0; v < n_; ++v) {
            if (id[v] >= 0) continue;
            int c = int(sizes.size());
            auto comp = component_of(v);
            for (int u : comp) id[u] = c;
            sizes.push_back(int(comp.size()));
        }
    }

    bool operator==(const BitMatrix& o) const = default;

private:
    int n_ = 0;
    std::vector<BitRow> rows_;
};

} // namespace treeramsey
