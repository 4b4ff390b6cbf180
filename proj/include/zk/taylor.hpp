#ifndef ZK_TAYLOR_HPP
#define ZK_TAYLOR_HPP

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "zk/complex.hpp"
#include "zk/hochster.hpp"
#include "zk/linalg.hpp"

namespace zk {

/// The Taylor complex of K over F: exterior algebra on the missing faces
/// with the support-preserving differential
///     d(u) = Σ_i (-1)^i ε_i ∂_i(u),   ε_i = 1 iff S_u = S_{∂_i u}.
/// Here i is the 0-based position of the removed generator inside u (the
/// generator list is sorted by cardinality then lex); homology ranks do not
/// depend on this choice, it is pinned for reproducibility.
///
/// Basis elements are subsets u of the missing-face list (bit masks of width
/// |MF|), with multidegree (-|u|, 2·S_u). The complex splits by S_u, so all
/// homology is computed per multidegree. This is the independent ground
/// truth the Hochster sweep is checked against.
template <class F>
class TaylorComplex {
public:
    using Elem = std::map<std::uint32_t, F>;  // basis mask -> coefficient

    explicit TaylorComplex(const Complex& K, int mf_cap = 16) {
        if (K.m() > 64)
            throw CapExceeded("taylor: vertex count exceeds 64");
        for (const FaceSet& mf : missing_faces(K)) {
            std::uint64_t s = 0;
            for (int v : mf.vertices()) s |= std::uint64_t{1} << v;
            gen_support_.push_back(s);
            generators_.push_back(mf);
        }
        M_ = static_cast<int>(generators_.size());
        if (M_ > mf_cap)
            throw CapExceeded("taylor: |MF(K)| = " + std::to_string(M_) + " exceeds cap " +
                              std::to_string(mf_cap) + " (2^|MF| basis elements)");
        support_.resize(std::size_t{1} << M_);
        support_[0] = 0;
        for (std::uint32_t u = 1; u < support_.size(); ++u) {
            int low = __builtin_ctz(u);
            support_[u] = support_[u & (u - 1)] | gen_support_[low];
        }
        for (std::uint32_t u = 0; u < support_.size(); ++u)
            buckets_[support_[u]][__builtin_popcount(u)].push_back(u);
    }

    int generator_count() const { return M_; }
    const std::vector<FaceSet>& generators() const { return generators_; }
    std::uint64_t support(std::uint32_t u) const { return support_[u]; }

    /// Differential of a basis element, as (basis, coefficient) pairs.
    void d_basis(std::uint32_t u, std::vector<std::pair<std::uint32_t, F>>& out) const {
        out.clear();
        std::uint32_t rest = u;
        int pos = 0;
        while (rest) {
            int g = __builtin_ctz(rest);
            rest &= rest - 1;
            std::uint32_t v = u & ~(std::uint32_t{1} << g);
            if (support_[v] == support_[u]) {
                F c = (pos % 2 == 0) ? FieldTraits<F>::one() : -FieldTraits<F>::one();
                out.emplace_back(v, c);
            }
            ++pos;
        }
    }

    Elem d(const Elem& x) const {
        Elem out;
        std::vector<std::pair<std::uint32_t, F>> terms;
        for (const auto& [u, c] : x) {
            d_basis(u, terms);
            for (const auto& [v, s] : terms) {
                F val = out.count(v) ? out[v] : FieldTraits<F>::zero();
                val += c * s;
                if (is_zero(val))
                    out.erase(v);
                else
                    out[v] = val;
            }
        }
        return out;
    }

    bool verify_d_squared() const {
        std::vector<std::pair<std::uint32_t, F>> first, second;
        for (std::uint32_t u = 0; u < support_.size(); ++u) {
            Elem acc;
            d_basis(u, first);
            for (const auto& [v, c1] : first) {
                d_basis(v, second);
                for (const auto& [w, c2] : second) {
                    F val = acc.count(w) ? acc[w] : FieldTraits<F>::zero();
                    val += c1 * c2;
                    if (is_zero(val))
                        acc.erase(w);
                    else
                        acc[w] = val;
                }
            }
            if (!acc.empty()) return false;
        }
        return true;
    }

    /// ×-product: u1 × u2 = exterior product when the supports are disjoint,
    /// zero otherwise. The exterior sign counts generator-index inversions.
    Elem product(const Elem& x, const Elem& y) const {
        Elem out;
        for (const auto& [u, a] : x)
            for (const auto& [v, b] : y) {
                if (u & v) continue;
                if (support_[u] & support_[v]) continue;
                int inversions = 0;
                std::uint32_t rest = v;
                while (rest) {
                    int g = __builtin_ctz(rest);
                    rest &= rest - 1;
                    inversions += __builtin_popcount(u >> (g + 1));
                }
                F c = a * b;
                if (inversions % 2) c = -c;
                std::uint32_t w = u | v;
                F val = out.count(w) ? out[w] : FieldTraits<F>::zero();
                val += c;
                if (is_zero(val))
                    out.erase(w);
                else
                    out[w] = val;
            }
        return out;
    }

    bool is_cycle(const Elem& x) const { return d(x).empty(); }

    /// Membership of a cycle in the image of d, checked bucket by bucket.
    bool is_boundary(const Elem& x) const {
        std::map<std::pair<std::uint64_t, int>, Elem> parts;
        for (const auto& [u, c] : x) parts[{support_[u], __builtin_popcount(u)}][u] = c;
        for (const auto& [key, part] : parts)
            if (!part_is_boundary(key.first, key.second, part)) return false;
        return true;
    }

    bool is_zero_in_homology(const Elem& x) const {
        if (!is_cycle(x)) throw PreconditionError("taylor: element is not a cycle");
        return is_boundary(x);
    }

    /// Bigraded (optionally multigraded) Tor ranks from per-multidegree
    /// homology of the Taylor complex.
    BettiTable tor_table(bool multigraded = false) const {
        BettiTable table;
        table.field = FieldTraits<F>::tag();
        table.multigraded = multigraded;
        for (const auto& [S, levels] : buckets_) {
            int j = __builtin_popcountll(S);
            std::map<int, int> drank;  // level i -> rank of d : level i -> level i-1
            for (const auto& [lvl, us] : levels) drank[lvl] = level_map_rank(S, lvl);
            for (const auto& [lvl, us] : levels) {
                int out_rank = drank.count(lvl) ? drank[lvl] : 0;
                int in_rank = drank.count(lvl + 1) ? drank[lvl + 1] : 0;
                long long h = static_cast<long long>(us.size()) - out_rank - in_rank;
                if (h != 0) {
                    table.entries[{lvl, j}] += h;
                    if (multigraded) table.multigraded_entries[{lvl, S}] += h;
                }
            }
        }
        return table;
    }

private:
    const std::vector<std::uint32_t>& bucket_level(std::uint64_t S, int lvl) const {
        static const std::vector<std::uint32_t> none;
        auto it = buckets_.find(S);
        if (it == buckets_.end()) return none;
        auto lit = it->second.find(lvl);
        if (lit == it->second.end()) return none;
        return lit->second;
    }

    // rank of d restricted to {u : S_u = S, |u| = lvl} -> level lvl-1
    int level_map_rank(std::uint64_t S, int lvl) const {
        if (lvl == 0) return 0;
        const auto& src = bucket_level(S, lvl);
        const auto& dst = bucket_level(S, lvl - 1);
        if (src.empty() || dst.empty()) return 0;
        Mat<F> M(static_cast<int>(dst.size()), static_cast<int>(src.size()));
        std::vector<std::pair<std::uint32_t, F>> terms;
        for (std::size_t c = 0; c < src.size(); ++c) {
            d_basis(src[c], terms);
            for (const auto& [v, coeff] : terms) {
                auto it = std::lower_bound(dst.begin(), dst.end(), v);
                M.at(static_cast<int>(it - dst.begin()), static_cast<int>(c)) = coeff;
            }
        }
        return M.rank();
    }

    bool part_is_boundary(std::uint64_t S, int lvl, const Elem& part) const {
        const auto& src = bucket_level(S, lvl + 1);
        const auto& dst = bucket_level(S, lvl);
        std::vector<F> target(dst.size(), FieldTraits<F>::zero());
        for (const auto& [u, c] : part) {
            auto it = std::lower_bound(dst.begin(), dst.end(), u);
            target[it - dst.begin()] = c;
        }
        SpanSolver<F> span(static_cast<int>(dst.size()));
        std::vector<std::pair<std::uint32_t, F>> terms;
        for (std::uint32_t u : src) {
            std::vector<F> col(dst.size(), FieldTraits<F>::zero());
            d_basis(u, terms);
            for (const auto& [v, c] : terms) {
                auto it = std::lower_bound(dst.begin(), dst.end(), v);
                col[it - dst.begin()] = c;
            }
            span.add_generator(col);
        }
        return span.contains(target);
    }

    int M_;
    std::vector<FaceSet> generators_;
    std::vector<std::uint64_t> gen_support_;
    std::vector<std::uint64_t> support_;
    // multidegree S -> homological level -> sorted basis masks
    std::map<std::uint64_t, std::map<int, std::vector<std::uint32_t>>> buckets_;
};

/// Tor ranks via the Taylor resolution; the oracle entry point.
template <class F>
BettiTable tor_dims_via_taylor(const Complex& K, bool multigraded = false, int mf_cap = 16) {
    return TaylorComplex<F>(K, mf_cap).tor_table(multigraded);
}

inline BettiTable tor_dims_via_taylor(const Complex& K, FieldTag tag, bool multigraded = false,
                                      int mf_cap = 16) {
    return with_field(tag,
                      [&]<class F>() { return tor_dims_via_taylor<F>(K, multigraded, mf_cap); });
}

}  // namespace zk

#endif
