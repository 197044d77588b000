#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace stf {

// Dense bitset over the vertex ids 0..n-1 of a host graph.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(int n) : n_(n), w_((n + 63) / 64, 0) {}
    VertexSet(int n, std::initializer_list<int> vs) : VertexSet(n) {
        for (int v : vs) set(v);
    }

    static VertexSet full(int n) {
        VertexSet s(n);
        for (auto& x : s.w_) x = ~std::uint64_t{0};
        s.trim();
        return s;
    }
    template <class Range>
    static VertexSet of(int n, const Range& r) {
        VertexSet s(n);
        for (int v : r) s.set(v);
        return s;
    }

    int universe() const { return n_; }
    bool in_range(int v) const { return v >= 0 && v < n_; }

    bool test(int v) const { return (w_[v >> 6] >> (v & 63)) & 1u; }
    bool contains(int v) const { return in_range(v) && test(v); }
    void set(int v) { w_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void reset(int v) { w_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    void clear() {
        for (auto& x : w_) x = 0;
    }

    int count() const {
        int c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }
    bool empty() const {
        for (auto x : w_)
            if (x) return false;
        return true;
    }
    bool any() const { return !empty(); }

    // Lowest member, or -1.
    int first() const { return next(-1); }
    // Lowest member strictly greater than v, or -1.
    int next(int v) const {
        int i = v + 1;
        if (i >= n_) return -1;
        std::size_t k = static_cast<std::size_t>(i) >> 6;
        std::uint64_t cur = w_[k] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (cur) return static_cast<int>(k * 64 + std::countr_zero(cur));
            if (++k >= w_.size()) return -1;
            cur = w_[k];
        }
    }

    bool intersects(const VertexSet& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    bool subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }
    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
    VertexSet complement() const { return full(n_) - *this; }

    bool operator==(const VertexSet& o) const = default;
    // Lexicographic order on sorted member lists.
    std::strong_ordering lex_compare(const VertexSet& o) const {
        int a = first(), b = o.first();
        while (a != -1 && b != -1) {
            if (a != b) return a < b ? std::strong_ordering::less : std::strong_ordering::greater;
            a = next(a);
            b = o.next(b);
        }
        if (a == b) return std::strong_ordering::equal;
        return a == -1 ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for (int v = first(); v != -1; v = next(v)) out.push_back(v);
        return out;
    }
    std::string str() const;

    std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(n_) * 0x9e3779b97f4a7c15ull;
        for (auto x : w_) h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }

    class iterator {
    public:
        iterator(const VertexSet* s, int v) : s_(s), v_(v) {}
        int operator*() const { return v_; }
        iterator& operator++() {
            v_ = s_->next(v_);
            return *this;
        }
        bool operator==(const iterator& o) const { return v_ == o.v_; }
        bool operator!=(const iterator& o) const { return v_ != o.v_; }

    private:
        const VertexSet* s_;
        int v_;
    };
    iterator begin() const { return {this, first()}; }
    iterator end() const { return {this, -1}; }

    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    void trim() {
        if (n_ % 64 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace stf
