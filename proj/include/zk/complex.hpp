#ifndef ZK_COMPLEX_HPP
#define ZK_COMPLEX_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "zk/faceset.hpp"

namespace zk {

class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite abstract simplicial complex on vertices {0,...,m-1}, stored as its
/// inclusion-maximal faces. Every vertex must appear in some facet (no ghost
/// vertices); the complex with m == 0 stands for {∅}. Immutable after
/// construction.
class Complex {
public:
    Complex() : m_(0), dim_(-1) {}

    Complex(int m, std::vector<FaceSet> facets) : m_(m) {
        if (m < 0 || m > FaceSet::kCapacity)
            throw std::invalid_argument("Complex: vertex count out of range");
        std::sort(facets.begin(), facets.end(), size_lex_less);
        facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
        // drop faces contained in a later (larger) one
        std::vector<FaceSet> maximal;
        for (std::size_t i = 0; i < facets.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = i + 1; j < facets.size() && !dominated; ++j)
                dominated = facets[i].subset_of(facets[j]);
            if (!dominated) maximal.push_back(facets[i]);
        }
        facets_ = std::move(maximal);

        FaceSet support;
        dim_ = -1;
        for (const FaceSet& f : facets_) {
            support |= f;
            dim_ = std::max(dim_, f.size() - 1);
            if (!f.subset_of(FaceSet::full(m_)))
                throw std::invalid_argument("Complex: facet vertex outside {1..m}");
        }
        if (m_ > 0 && support != FaceSet::full(m_))
            throw std::invalid_argument("Complex: vertex missing from every facet");
        if (m_ > 0 && facets_.empty())
            throw std::invalid_argument("Complex: no facets but m > 0");

        neighbors_.assign(m_, FaceSet{});
        for (const FaceSet& f : facets_)
            for (int v : f.vertices()) {
                FaceSet rest = f;
                rest.erase(v);
                neighbors_[v] |= rest;
            }
    }

    static Complex from_vertex_lists(int m, const std::vector<std::vector<int>>& facets) {
        std::vector<FaceSet> fs;
        fs.reserve(facets.size());
        for (const auto& f : facets) fs.push_back(FaceSet::from_vertices(f));
        return Complex(m, std::move(fs));
    }

    int m() const { return m_; }
    int dim() const { return dim_; }
    const std::vector<FaceSet>& facets() const { return facets_; }
    const FaceSet& neighbors(int v) const { return neighbors_[v]; }
    bool adjacent(int u, int v) const { return neighbors_[u].contains(v); }

    bool is_pure() const {
        for (const FaceSet& f : facets_)
            if (f.size() - 1 != dim_) return false;
        return true;
    }

    /// σ ∈ K iff σ is contained in some facet.
    bool contains(const FaceSet& sigma) const {
        if (!sigma.subset_of(FaceSet::full(std::max(m_, 1))))
            throw std::out_of_range("face_contains: vertex index out of range");
        if (sigma.empty()) return true;
        for (const FaceSet& f : facets_)
            if (sigma.subset_of(f)) return true;
        return false;
    }

    /// All faces with exactly k vertices (k >= 1), sorted.
    std::vector<FaceSet> faces_with_size(int k) const {
        std::set<FaceSet> out;
        std::vector<int> idx(k);
        for (const FaceSet& f : facets_) {
            std::vector<int> vs = f.vertices();
            if (static_cast<int>(vs.size()) < k) continue;
            // enumerate k-subsets of the facet
            std::iota(idx.begin(), idx.end(), 0);
            while (true) {
                FaceSet s;
                for (int i : idx) s.insert(vs[i]);
                out.insert(s);
                int i = k - 1;
                while (i >= 0 && idx[i] == static_cast<int>(vs.size()) - k + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
        return std::vector<FaceSet>(out.begin(), out.end());
    }

    /// f-vector (f_0, ..., f_dim); f_{-1} = 1 is implicit.
    std::vector<long long> f_vector() const {
        std::vector<long long> f;
        for (int k = 1; k <= dim_ + 1; ++k)
            f.push_back(static_cast<long long>(faces_with_size(k).size()));
        return f;
    }

    bool operator==(const Complex& o) const { return m_ == o.m_ && facets_ == o.facets_; }

private:
    static bool size_lex_less(const FaceSet& a, const FaceSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }

    int m_;
    int dim_;
    std::vector<FaceSet> facets_;
    std::vector<FaceSet> neighbors_;
};

/// The inclusion-minimal non-faces of K, sorted by (cardinality, lex).
/// A candidate of size k+1 arises as face ∪ {vertex}; it is a missing face
/// when every proper subset is a face.
inline std::vector<FaceSet> missing_faces(const Complex& K) {
    std::vector<FaceSet> out;
    // size 1: impossible (every vertex appears in a facet)
    // size 2: non-edges
    for (int u = 0; u < K.m(); ++u)
        for (int v = u + 1; v < K.m(); ++v)
            if (!K.adjacent(u, v)) out.push_back(FaceSet{u, v});
    for (int k = 2; k <= K.dim() + 2; ++k) {
        std::set<FaceSet> found;
        for (const FaceSet& sigma : K.faces_with_size(k)) {
            for (int v = 0; v < K.m(); ++v) {
                if (sigma.contains(v)) continue;
                FaceSet cand = sigma;
                cand.insert(v);
                if (K.contains(cand) || found.count(cand)) continue;
                bool all_subsets_faces = true;
                for (int u : cand.vertices()) {
                    FaceSet sub = cand;
                    sub.erase(u);
                    if (!K.contains(sub)) { all_subsets_faces = false; break; }
                }
                if (all_subsets_faces) found.insert(cand);
            }
        }
        out.insert(out.end(), found.begin(), found.end());
    }
    return out;
}

inline bool is_flag(const Complex& K) {
    for (const FaceSet& mf : missing_faces(K))
        if (mf.size() > 2) return false;
    return true;
}

/// A complex derived from another one, with vertex_map[new] = old.
struct Subcomplex {
    Complex complex;
    std::vector<int> vertex_map;
};

/// K_I: faces of K contained in I, re-indexed onto {0,...,|I|-1}.
inline Subcomplex full_subcomplex(const Complex& K, const FaceSet& I) {
    std::vector<int> vmap = I.vertices();
    std::vector<int> inv(K.m(), -1);
    for (std::size_t i = 0; i < vmap.size(); ++i) inv[vmap[i]] = static_cast<int>(i);
    std::vector<FaceSet> facets;
    for (const FaceSet& f : K.facets()) {
        FaceSet g = f & I;
        FaceSet re;
        for (int v : g.vertices()) re.insert(inv[v]);
        if (!re.empty()) facets.push_back(re);
    }
    // isolated vertices of I are retained: every vertex of I is a face of K,
    // so it shows up above as a singleton at minimum
    return {Complex(static_cast<int>(vmap.size()), std::move(facets)), std::move(vmap)};
}

/// lk_σK = {τ : τ∪σ ∈ K, τ∩σ = ∅}, re-indexed.
inline Subcomplex link(const Complex& K, const FaceSet& sigma) {
    if (!K.contains(sigma)) throw PreconditionError("link: σ is not a face");
    FaceSet support;
    std::vector<FaceSet> raw;
    for (const FaceSet& f : K.facets())
        if (sigma.subset_of(f)) {
            raw.push_back(f - sigma);
            support |= f - sigma;
        }
    std::vector<int> vmap = support.vertices();
    std::vector<int> inv(K.m(), -1);
    for (std::size_t i = 0; i < vmap.size(); ++i) inv[vmap[i]] = static_cast<int>(i);
    std::vector<FaceSet> facets;
    for (const FaceSet& g : raw) {
        FaceSet re;
        for (int v : g.vertices()) re.insert(inv[v]);
        if (!re.empty()) facets.push_back(re);
    }
    return {Complex(static_cast<int>(vmap.size()), std::move(facets)), std::move(vmap)};
}

/// st_σK = {τ : τ∪σ ∈ K}, re-indexed. Its facets are the facets containing σ.
inline Subcomplex star(const Complex& K, const FaceSet& sigma) {
    if (!K.contains(sigma)) throw PreconditionError("star: σ is not a face");
    FaceSet support;
    std::vector<FaceSet> raw;
    for (const FaceSet& f : K.facets())
        if (sigma.subset_of(f)) {
            raw.push_back(f);
            support |= f;
        }
    std::vector<int> vmap = support.vertices();
    std::vector<int> inv(K.m(), -1);
    for (std::size_t i = 0; i < vmap.size(); ++i) inv[vmap[i]] = static_cast<int>(i);
    std::vector<FaceSet> facets;
    for (const FaceSet& g : raw) {
        FaceSet re;
        for (int v : g.vertices()) re.insert(inv[v]);
        facets.push_back(re);
    }
    return {Complex(static_cast<int>(vmap.size()), std::move(facets)), std::move(vmap)};
}

struct CoreResult {
    Subcomplex core;       // K restricted to {v : st_v K != K}
    int simplex_factor;    // s with K = core(K) * Δ^{s-1}
};

/// st_v K = K iff v lies in every facet.
inline CoreResult core(const Complex& K) {
    FaceSet in_all = K.m() > 0 ? FaceSet::full(K.m()) : FaceSet{};
    for (const FaceSet& f : K.facets()) in_all &= f;
    FaceSet core_vs = FaceSet::full(K.m()) - in_all;
    return {full_subcomplex(K, core_vs), in_all.size()};
}

/// K * K' with K' shifted by m(K).
inline Complex join(const Complex& K, const Complex& K2) {
    int m = K.m() + K2.m();
    std::vector<FaceSet> facets;
    if (K.m() == 0) return K2;
    if (K2.m() == 0) return K;
    for (const FaceSet& f : K.facets())
        for (const FaceSet& g : K2.facets()) {
            FaceSet h = f;
            for (int v : g.vertices()) h.insert(v + K.m());
            facets.push_back(h);
        }
    return Complex(m, std::move(facets));
}

inline Complex cone(const Complex& K) {
    return join(K, Complex(1, {FaceSet{0}}));
}

inline Complex suspension(const Complex& K) {
    return join(K, Complex(2, {FaceSet{0}, FaceSet{1}}));
}

namespace detail {

struct IsoContext {
    const Complex* a;
    const Complex* b;
    std::vector<std::vector<FaceSet>> a_facets_at;  // facets through each vertex of a
    std::vector<std::vector<FaceSet>> b_facets_at;
};

inline std::vector<long long> vertex_signature(const Complex& K, int v) {
    // degree in the 1-skeleton, facet count, multiset of facet sizes
    std::vector<long long> sig;
    sig.push_back(K.neighbors(v).size());
    std::vector<int> sizes;
    for (const FaceSet& f : K.facets())
        if (f.contains(v)) sizes.push_back(f.size());
    std::sort(sizes.begin(), sizes.end());
    sig.push_back(static_cast<long long>(sizes.size()));
    for (int s : sizes) sig.push_back(s);
    return sig;
}

// Backtracking vertex-mapping search. perm[v] = image or -1. Returns true on
// success; `all` collects every automorphism instead when non-null.
inline bool iso_search(const Complex& A, const Complex& B,
                       const std::vector<std::vector<long long>>& sigA,
                       const std::vector<std::vector<long long>>& sigB,
                       std::vector<int>& perm, std::vector<bool>& used, int depth,
                       std::vector<std::vector<int>>* all) {
    int m = A.m();
    if (depth == m) {
        // facet sets must correspond exactly
        std::vector<FaceSet> mapped;
        mapped.reserve(A.facets().size());
        for (const FaceSet& f : A.facets()) {
            FaceSet g;
            for (int v : f.vertices()) g.insert(perm[v]);
            mapped.push_back(g);
        }
        std::sort(mapped.begin(), mapped.end());
        std::vector<FaceSet> bf = B.facets();
        std::sort(bf.begin(), bf.end());
        if (mapped != bf) return false;
        if (all) {
            all->push_back(perm);
            return false;  // keep enumerating
        }
        return true;
    }
    int v = depth;
    for (int cand = 0; cand < m; ++cand) {
        if (used[cand] || sigA[v] != sigB[cand]) continue;
        // adjacency consistency with already-mapped vertices
        bool ok = true;
        for (int u = 0; u < depth && ok; ++u)
            if (A.adjacent(v, u) != B.adjacent(cand, perm[u])) ok = false;
        if (!ok) continue;
        perm[v] = cand;
        used[cand] = true;
        if (iso_search(A, B, sigA, sigB, perm, used, depth + 1, all)) return true;
        used[cand] = false;
        perm[v] = -1;
    }
    return false;
}

}  // namespace detail

/// Vertex bijection mapping facets onto facets, if one exists.
inline std::optional<std::vector<int>> isomorphism(const Complex& A, const Complex& B) {
    if (A.m() != B.m() || A.dim() != B.dim() || A.facets().size() != B.facets().size())
        return std::nullopt;
    std::vector<std::vector<long long>> sigA, sigB;
    for (int v = 0; v < A.m(); ++v) sigA.push_back(detail::vertex_signature(A, v));
    for (int v = 0; v < B.m(); ++v) sigB.push_back(detail::vertex_signature(B, v));
    {
        auto sa = sigA, sb = sigB;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return std::nullopt;
    }
    std::vector<int> perm(A.m(), -1);
    std::vector<bool> used(A.m(), false);
    if (detail::iso_search(A, B, sigA, sigB, perm, used, 0, nullptr)) return perm;
    return std::nullopt;
}

inline bool are_isomorphic(const Complex& A, const Complex& B) {
    return isomorphism(A, B).has_value();
}

inline std::vector<std::vector<int>> automorphisms(const Complex& K) {
    std::vector<std::vector<long long>> sig;
    for (int v = 0; v < K.m(); ++v) sig.push_back(detail::vertex_signature(K, v));
    std::vector<int> perm(K.m(), -1);
    std::vector<bool> used(K.m(), false);
    std::vector<std::vector<int>> all;
    detail::iso_search(K, K, sig, sig, perm, used, 0, &all);
    return all;
}

/// All connected sums K #_{σ,σ'} K' over facet pairs and identifications,
/// deduplicated up to isomorphism.
inline std::vector<Complex> connected_sum_enumerate(const Complex& K, const Complex& K2) {
    if (!K.is_pure() || !K2.is_pure())
        throw PreconditionError("connected sum: complexes must be pure");
    if (K.dim() != K2.dim())
        throw PreconditionError("connected sum: dimension mismatch");
    int d = K.dim();
    std::vector<Complex> classes;
    for (const FaceSet& sigma : K.facets()) {
        std::vector<int> sv = sigma.vertices();
        for (const FaceSet& sigma2 : K2.facets()) {
            std::vector<int> tv = sigma2.vertices();
            std::sort(tv.begin(), tv.end());
            // all bijections σ' -> σ
            std::vector<int> pi(tv.size());
            std::iota(pi.begin(), pi.end(), 0);
            do {
                // relabel K2: σ' vertices onto σ, the rest onto fresh indices
                std::vector<int> relabel(K2.m(), -1);
                for (std::size_t i = 0; i < tv.size(); ++i) relabel[tv[i]] = sv[pi[i]];
                int next = K.m();
                for (int v = 0; v < K2.m(); ++v)
                    if (relabel[v] < 0) relabel[v] = next++;
                std::vector<FaceSet> facets;
                for (const FaceSet& f : K.facets())
                    if (f != sigma) facets.push_back(f);
                for (const FaceSet& f : K2.facets()) {
                    if (f == sigma2) continue;
                    FaceSet g;
                    for (int v : f.vertices()) g.insert(relabel[v]);
                    facets.push_back(g);
                }
                Complex sum(next, std::move(facets));
                if (sum.dim() != d) continue;  // defensive; cannot happen
                bool fresh = true;
                for (const Complex& c : classes)
                    if (are_isomorphic(sum, c)) { fresh = false; break; }
                if (fresh) classes.push_back(std::move(sum));
            } while (std::next_permutation(pi.begin(), pi.end()));
        }
    }
    return classes;
}

/// Stellar subdivision at a face σ: remove st(σ), cone the new vertex over
/// ∂σ * lk(σ).
inline Complex stellar_subdivide(const Complex& K, const FaceSet& sigma) {
    if (!K.contains(sigma) || sigma.empty())
        throw PreconditionError("stellar subdivision: σ must be a nonempty face");
    int w = K.m();
    std::vector<FaceSet> facets;
    for (const FaceSet& f : K.facets()) {
        if (!sigma.subset_of(f)) {
            facets.push_back(f);
            continue;
        }
        for (int v : sigma.vertices()) {
            FaceSet g = f;
            g.erase(v);
            g.insert(w);
            facets.push_back(g);
        }
    }
    return Complex(w + 1, std::move(facets));
}

}  // namespace zk

#endif
