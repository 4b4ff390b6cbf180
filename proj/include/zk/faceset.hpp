#ifndef ZK_FACESET_HPP
#define ZK_FACESET_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace zk {

/// A subset of the vertex set {0,...,m-1} as a fixed-width bit vector.
/// Width is capped at kCapacity vertices; complexes beyond that are out of
/// desk scale for this library and are rejected at construction time.
class FaceSet {
public:
    static constexpr int kCapacity = 128;

    constexpr FaceSet() : w_{0, 0} {}

    FaceSet(std::initializer_list<int> vertices) : w_{0, 0} {
        for (int v : vertices) insert(v);
    }

    static FaceSet from_vertices(const std::vector<int>& vertices) {
        FaceSet s;
        for (int v : vertices) s.insert(v);
        return s;
    }

    /// {0,1,...,m-1}
    static FaceSet full(int m) {
        check_index(m == 0 ? 0 : m - 1);
        FaceSet s;
        for (int b = 0; b < 2; ++b) {
            int lo = b * 64, hi = lo + 64;
            if (m >= hi)
                s.w_[b] = ~std::uint64_t{0};
            else if (m > lo)
                s.w_[b] = (std::uint64_t{1} << (m - lo)) - 1;
        }
        return s;
    }

    void insert(int v) {
        check_index(v);
        w_[v >> 6] |= std::uint64_t{1} << (v & 63);
    }
    void erase(int v) {
        check_index(v);
        w_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    }
    bool contains(int v) const {
        if (v < 0 || v >= kCapacity) return false;
        return (w_[v >> 6] >> (v & 63)) & 1;
    }

    bool empty() const { return (w_[0] | w_[1]) == 0; }
    int size() const {
        return __builtin_popcountll(w_[0]) + __builtin_popcountll(w_[1]);
    }

    FaceSet operator|(const FaceSet& o) const { return FaceSet(w_[0] | o.w_[0], w_[1] | o.w_[1]); }
    FaceSet operator&(const FaceSet& o) const { return FaceSet(w_[0] & o.w_[0], w_[1] & o.w_[1]); }
    /// set difference
    FaceSet operator-(const FaceSet& o) const { return FaceSet(w_[0] & ~o.w_[0], w_[1] & ~o.w_[1]); }
    FaceSet& operator|=(const FaceSet& o) { w_[0] |= o.w_[0]; w_[1] |= o.w_[1]; return *this; }
    FaceSet& operator&=(const FaceSet& o) { w_[0] &= o.w_[0]; w_[1] &= o.w_[1]; return *this; }

    bool subset_of(const FaceSet& o) const {
        return (w_[0] & ~o.w_[0]) == 0 && (w_[1] & ~o.w_[1]) == 0;
    }
    bool intersects(const FaceSet& o) const {
        return (w_[0] & o.w_[0]) != 0 || (w_[1] & o.w_[1]) != 0;
    }

    bool operator==(const FaceSet& o) const { return w_[0] == o.w_[0] && w_[1] == o.w_[1]; }
    bool operator!=(const FaceSet& o) const { return !(*this == o); }
    /// lexicographic on the vertex sequence == numeric on the reversed words
    bool operator<(const FaceSet& o) const {
        if (w_[1] != o.w_[1]) return w_[1] < o.w_[1];
        return w_[0] < o.w_[0];
    }

    int min_vertex() const {
        if (w_[0]) return __builtin_ctzll(w_[0]);
        if (w_[1]) return 64 + __builtin_ctzll(w_[1]);
        return -1;
    }

    std::vector<int> vertices() const {
        std::vector<int> out;
        out.reserve(size());
        for (int b = 0; b < 2; ++b) {
            std::uint64_t w = w_[b];
            while (w) {
                out.push_back(b * 64 + __builtin_ctzll(w));
                w &= w - 1;
            }
        }
        return out;
    }

    /// Number of elements of *this strictly below v.
    int rank_of(int v) const {
        int r = 0;
        for (int b = 0; b < 2; ++b) {
            int lo = b * 64;
            if (v <= lo) break;
            std::uint64_t mask = (v - lo >= 64) ? ~std::uint64_t{0}
                                                : ((std::uint64_t{1} << (v - lo)) - 1);
            r += __builtin_popcountll(w_[b] & mask);
        }
        return r;
    }

    std::size_t hash() const {
        std::uint64_t h = w_[0] * 0x9e3779b97f4a7c15ULL;
        h ^= w_[1] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }

    std::string to_string() const {  // 1-based, for diagnostics
        std::string s = "{";
        bool first = true;
        for (int v : vertices()) {
            if (!first) s += ",";
            s += std::to_string(v + 1);
            first = false;
        }
        return s + "}";
    }

private:
    FaceSet(std::uint64_t lo, std::uint64_t hi) : w_{lo, hi} {}
    static void check_index(int v) {
        if (v < 0 || v >= kCapacity)
            throw std::out_of_range("FaceSet: vertex index " + std::to_string(v) +
                                    " outside capacity " + std::to_string(kCapacity));
    }
    std::array<std::uint64_t, 2> w_;
};

struct FaceSetHash {
    std::size_t operator()(const FaceSet& s) const { return s.hash(); }
};

}  // namespace zk

#endif
