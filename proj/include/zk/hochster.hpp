#ifndef ZK_HOCHSTER_HPP
#define ZK_HOCHSTER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "zk/complex.hpp"
#include "zk/homology.hpp"

namespace zk {

/// Bigraded Betti numbers: entries[(i, j)] = rank of Tor^{-i,2j}(K; F).
/// The multigraded refinement keys entries by the subset J itself.
struct BettiTable {
    FieldTag field = FieldTag::GF2;
    std::map<std::pair<int, int>, long long> entries;
    bool multigraded = false;
    std::map<std::pair<int, std::uint64_t>, long long> multigraded_entries;

    long long rank(int i, int j) const {
        auto it = entries.find({i, j});
        return it == entries.end() ? 0 : it->second;
    }
    bool same_entries(const BettiTable& o) const { return entries == o.entries; }
    long long total_dim() const {
        long long t = 0;
        for (const auto& [key, r] : entries) t += r;
        return t;
    }
};

/// dim H^p(Z_K) = Σ_{-i+2j=p} β^{-i,2j}; index p from 0.
inline std::vector<long long> ma_cohomology_dims(const BettiTable& t) {
    std::vector<long long> dims;
    for (const auto& [key, r] : t.entries) {
        int p = 2 * key.second - key.first;
        if (p >= static_cast<int>(dims.size())) dims.resize(p + 1, 0);
        dims[p] += r;
    }
    return dims;
}

/// dim H^p(RZ_K) = Σ_J rank H̃^{p-1}(K_J); an entry (i,j) sits in degree j-i.
inline std::vector<long long> real_ma_cohomology_dims(const BettiTable& t) {
    std::vector<long long> dims;
    for (const auto& [key, r] : t.entries) {
        int p = key.second - key.first;
        if (p >= static_cast<int>(dims.size())) dims.resize(p + 1, 0);
        dims[p] += r;
    }
    return dims;
}

struct SweepOptions {
    int vertex_cap = 24;
    bool multigraded = false;
    int threads = 0;  // 0 = hardware concurrency
};

namespace detail {

/// Per-thread scratch for the subset sweep: filters the global face lists
/// down to K_J and ranks its coboundaries.
template <class F>
class SweepEngine {
public:
    explicit SweepEngine(const Complex& K) : dim_(K.dim()) {
        faces_.resize(dim_ + 2);
        faces_[0] = {0u};
        for (int k = 1; k <= dim_ + 1; ++k)
            for (const FaceSet& s : K.faces_with_size(k)) {
                std::uint32_t mask = 0;
                for (int v : s.vertices()) mask |= 1u << v;
                faces_[k].push_back(mask);
            }
    }

    /// ranks[d+1] = rank H̃^d(K_J) for d in [-1, dim].
    void ranks_for(std::uint32_t J, std::vector<int>& out) {
        local_.assign(dim_ + 2, {});
        local_[0].push_back(0u);
        for (int k = 1; k <= dim_ + 2 - 1; ++k)
            for (std::uint32_t f : faces_[k])
                if ((f & ~J) == 0) local_[k].push_back(f);
        out.assign(dim_ + 2, 0);
        std::vector<int> delta_rank(dim_ + 2, 0);
        for (int d = -1; d < dim_; ++d) delta_rank[d + 1] = delta_rank_for(d);
        for (int d = -1; d <= dim_; ++d) {
            int below = (d >= 0) ? delta_rank[d] : 0;
            int here = (d < dim_) ? delta_rank[d + 1] : 0;
            out[d + 1] = static_cast<int>(local_[d + 1].size()) - here - below;
        }
    }

private:
    int delta_rank_for(int d) {
        const auto& src = local_[d + 1];
        const auto& dst = local_[d + 2];
        if (src.empty() || dst.empty()) return 0;
        Mat<F> M(static_cast<int>(dst.size()), static_cast<int>(src.size()));
        for (std::size_t r = 0; r < dst.size(); ++r) {
            std::uint32_t tau = dst[r];
            std::uint32_t rest = tau;
            int pos = 0;
            while (rest) {
                int v = __builtin_ctz(rest);
                rest &= rest - 1;
                std::uint32_t s = tau & ~(1u << v);
                auto it = std::lower_bound(src.begin(), src.end(), s);
                int c = static_cast<int>(it - src.begin());
                M.at(static_cast<int>(r), c) =
                    (pos % 2 == 0) ? FieldTraits<F>::one() : -FieldTraits<F>::one();
                ++pos;
            }
        }
        return M.rank();
    }

    int dim_;
    std::vector<std::vector<std::uint32_t>> faces_;
    std::vector<std::vector<std::uint32_t>> local_;
};

}  // namespace detail

/// Hochster decomposition: sweep every J ⊆ [m] and aggregate
/// rank Tor^{-i,2J} = rank H̃^{|J|-i-1}(K_J). Parallel over subsets;
/// aggregation is a commutative merge, so the result is schedule-independent.
template <class F>
BettiTable bigraded_betti(const Complex& K, const SweepOptions& opts = {}) {
    if (K.m() > opts.vertex_cap)
        throw CapExceeded("bigraded_betti: m = " + std::to_string(K.m()) +
                          " exceeds subset-sweep cap " + std::to_string(opts.vertex_cap) +
                          " (raise the cap to force the 2^m sweep)");
    BettiTable table;
    table.field = FieldTraits<F>::tag();
    table.multigraded = opts.multigraded;

    const std::uint64_t total = std::uint64_t{1} << K.m();
    int nthreads = opts.threads > 0 ? opts.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    if (total < 1024) nthreads = 1;

    struct Shard {
        std::map<std::pair<int, int>, long long> entries;
        std::map<std::pair<int, std::uint64_t>, long long> multi;
    };
    std::vector<Shard> shards(nthreads);
    auto work = [&](int t) {
        detail::SweepEngine<F> engine(K);
        std::vector<int> ranks;
        Shard& shard = shards[t];
        for (std::uint64_t J = t; J < total; J += nthreads) {
            std::uint32_t mask = static_cast<std::uint32_t>(J);
            engine.ranks_for(mask, ranks);
            int cardJ = __builtin_popcount(mask);
            for (int d = -1; d < static_cast<int>(ranks.size()) - 1; ++d) {
                int r = ranks[d + 1];
                if (r == 0) continue;
                int i = cardJ - 1 - d;
                shard.entries[{i, cardJ}] += r;
                if (opts.multigraded) shard.multi[{i, mask}] += r;
            }
        }
    };
    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    for (Shard& s : shards) {
        for (const auto& [k, v] : s.entries) table.entries[k] += v;
        for (const auto& [k, v] : s.multi) table.multigraded_entries[k] += v;
    }
    return table;
}

inline BettiTable bigraded_betti(const Complex& K, FieldTag tag, const SweepOptions& opts = {}) {
    return with_field(tag, [&]<class F>() { return bigraded_betti<F>(K, opts); });
}

template <class F>
std::vector<long long> ma_cohomology_dims(const Complex& K, const SweepOptions& opts = {}) {
    return ma_cohomology_dims(bigraded_betti<F>(K, opts));
}

template <class F>
std::vector<long long> real_ma_cohomology_dims(const Complex& K, const SweepOptions& opts = {}) {
    return real_ma_cohomology_dims(bigraded_betti<F>(K, opts));
}

/// Cross-check that β^{-1,2j} counts the missing faces with j vertices.
struct MissingFaceCheck {
    std::map<int, long long> betti_side;    // j -> β^{-1,2j}
    std::map<int, long long> missing_side;  // j -> #{ω ∈ MF(K) : |ω| = j}
    bool ok = false;
};

template <class F>
MissingFaceCheck missing_face_count_check(const Complex& K, const SweepOptions& opts = {}) {
    MissingFaceCheck rep;
    BettiTable t = bigraded_betti<F>(K, opts);
    for (const auto& [key, r] : t.entries)
        if (key.first == 1 && r != 0) rep.betti_side[key.second] = r;
    for (const FaceSet& mf : missing_faces(K)) rep.missing_side[mf.size()] += 1;
    rep.ok = rep.betti_side == rep.missing_side;
    return rep;
}

}  // namespace zk

#endif
