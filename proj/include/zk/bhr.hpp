#ifndef ZK_BHR_HPP
#define ZK_BHR_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "zk/complex.hpp"
#include "zk/hochster.hpp"
#include "zk/homology.hpp"

namespace zk {

/// The Baskakov–Hochster ring of K over F: ⊕_{J⊆[m]} H̃*(K_J) with the
/// join-induced product (zero on overlapping supports). An element of
/// H̃^d(K_J) has total degree |J| + d + 1, matching H^*(Z_K); the same
/// underlying module with the ⋆-product computes H^*(RZ_K), graded by d + 1.
///
/// Sign convention (characteristic ≠ 2): the product of cochains evaluates
/// on ρ ⊆ I∪J as the shuffle sign of splitting ρ into its I-part followed by
/// its J-part. All exported invariants (ranks, nil, annihilator dims) are
/// independent of this choice.
template <class F>
class BhrRing {
public:
    // (J, cochain degree) -> coordinates in the chosen basis of H̃^deg(K_J)
    using Key = std::pair<std::uint32_t, int>;
    using Element = std::map<Key, std::vector<F>>;

    explicit BhrRing(const Complex& K) : K_(K), m_(K.m()) {
        if (m_ > 31) throw CapExceeded("bhr: vertex count exceeds 31");
    }

    const Complex& complex() const { return K_; }
    int m() const { return m_; }

    static int total_degree(const Key& k) {
        return __builtin_popcount(k.first) + k.second + 1;
    }

    /// dim H̃^deg(K_J)
    int piece_rank(std::uint32_t J, int deg) const { return piece(J).basis.rank(deg); }

    Element zero() const { return {}; }
    Element unit() const { return single(0u, -1, {FieldTraits<F>::one()}); }

    Element single(std::uint32_t J, int deg, std::vector<F> coords) const {
        Element e;
        if (!all_zero(coords)) e[{J, deg}] = std::move(coords);
        return e;
    }

    /// Basis class #idx of H̃^deg(K_J).
    Element basis_element(std::uint32_t J, int deg, int idx) const {
        int r = piece_rank(J, deg);
        if (idx < 0 || idx >= r) throw std::out_of_range("bhr: basis index");
        std::vector<F> c(r, FieldTraits<F>::zero());
        c[idx] = FieldTraits<F>::one();
        return single(J, deg, std::move(c));
    }

    /// ω̃ for a two-element missing face: the generator of H̃^0(K_ω).
    Element omega_tilde(const FaceSet& omega) const {
        if (omega.size() != 2 || K_.contains(omega))
            throw PreconditionError("omega_tilde: not a two-element missing face");
        return basis_element(to_mask(omega), 0, 0);
    }

    /// Generator of H̃^n(K) for Gorenstein* K (rank checked).
    Element top_class() const {
        std::uint32_t full = full_mask();
        if (piece_rank(full, K_.dim()) != 1)
            throw PreconditionError("top_class: H̃^dim(K) is not one-dimensional");
        return basis_element(full, K_.dim(), 0);
    }

    bool is_zero(const Element& x) const { return x.empty(); }

    Element add(const Element& a, const Element& b) const {
        Element out = a;
        for (const auto& [k, v] : b) {
            auto it = out.find(k);
            if (it == out.end()) {
                out[k] = v;
            } else {
                for (std::size_t i = 0; i < v.size(); ++i) it->second[i] += v[i];
                if (all_zero(it->second)) out.erase(it);
            }
        }
        return out;
    }

    Element scale(const Element& a, const F& c) const {
        if (zk::is_zero(c)) return {};
        Element out = a;
        for (auto& [k, v] : out)
            for (F& x : v) x *= c;
        return out;
    }

    Element neg(const Element& a) const { return scale(a, -FieldTraits<F>::one()); }

    /// Baskakov product: bilinear over term pairs; zero on overlapping
    /// supports; otherwise the join cochain product pulled back along
    /// K_{I∪J} ↪ K_I * K_J and re-expressed in the basis of K_{I∪J}.
    Element product(const Element& a, const Element& b) const {
        Element out;
        for (const auto& [ka, va] : a)
            for (const auto& [kb, vb] : b) {
                if (ka.first & kb.first) continue;
                accumulate_term_product(out, ka, va, kb, vb);
            }
        return out;
    }

    /// ⋆-product: α ⋆ β = α · (restriction of β to J \ I), computing
    /// H^*(RZ_K)'s multiplication on the same module.
    Element star_product(const Element& a, const Element& b) const {
        Element out;
        for (const auto& [ka, va] : a)
            for (const auto& [kb, vb] : b) {
                std::uint32_t J2 = kb.first & ~ka.first;
                Element restricted = restrict_class(kb.first, kb.second, vb, J2);
                for (const auto& [kr, vr] : restricted)
                    accumulate_term_product(out, ka, va, kr, vr);
            }
        return out;
    }

    /// Pull a class on K_J back along K_{J2} ↪ K_J (J2 ⊆ J).
    Element restrict_class(std::uint32_t J, int deg, const std::vector<F>& coords,
                           std::uint32_t J2) const {
        if ((J2 & ~J) != 0) throw PreconditionError("restrict_class: J2 must lie inside J");
        if (J2 == J) return single(J, deg, coords);
        const Piece& src = piece(J);
        const Piece& dst = piece(J2);
        std::vector<F> z = src.basis.cocycle_from_coordinates(deg, coords);
        const auto& dst_faces = dst.basis.cochains().faces(deg);
        std::vector<F> z2(dst_faces.size(), FieldTraits<F>::zero());
        for (std::size_t i = 0; i < dst_faces.size(); ++i) {
            FaceSet global = local_to_global(dst, dst_faces[i]);
            int idx = src.basis.cochains().face_index(deg, global_to_local(src, global));
            if (idx >= 0) z2[i] = z[idx];
        }
        auto cls = dst.basis.class_coordinates(deg, z2);
        if (!cls) throw std::logic_error("restrict_class: restriction is not a cocycle");
        return single(J2, deg, std::move(*cls));
    }

    // ---- ring invariants ----------------------------------------------

    /// Basis keys of R^k (total degree k), enumerated by subset size.
    std::vector<Key> degree_basis_keys(int k) const {
        std::vector<Key> keys;
        if (k == 0) {
            keys.push_back({0u, -1});
            return keys;
        }
        for (int s = (k + 1) / 2; s <= std::min(k - 1, m_); ++s) {
            int deg = k - s - 1;
            for_each_subset_of_size(s, [&](std::uint32_t J) {
                if (piece_rank(J, deg) > 0) keys.push_back({J, deg});
            });
        }
        return keys;
    }

    long long degree_dim(int k) const {
        long long d = 0;
        for (const Key& key : degree_basis_keys(k)) d += piece_rank(key.first, key.second);
        return d;
    }

    int max_total_degree() const { return m_ + K_.dim() + 1; }

    /// dim ann_k(x) = dim ker(·x : R^k -> R^{k + deg x}).
    long long annihilator_dim(const Element& x, int k) const {
        if (is_zero(x)) throw PreconditionError("annihilator: x must be nonzero");
        std::vector<Element> images;
        long long n = 0;
        for (const Key& key : degree_basis_keys(k)) {
            int r = piece_rank(key.first, key.second);
            for (int i = 0; i < r; ++i) {
                images.push_back(product(basis_element(key.first, key.second, i), x));
                ++n;
            }
        }
        return n - rank_of_elements(images);
    }

    /// dim ann(x) summed over all degrees; x must be homogeneous so that
    /// the annihilator splits by degree.
    long long annihilator_total_dim(const Element& x) const {
        int dx = homogeneous_degree(x);
        (void)dx;
        long long total = 0;
        for (int k = 0; k <= max_total_degree(); ++k) total += annihilator_dim(x, k);
        return total;
    }

    struct PowerFiltration {
        // dims[k-1][total degree] = dim of (R+)^{*k} in that degree
        std::vector<std::map<int, long long>> dims;
        int nil = 0;
        long long dim_of_power(int k) const {
            if (k < 1 || k > static_cast<int>(dims.size())) return 0;
            long long d = 0;
            for (const auto& [deg, v] : dims[k - 1]) d += v;
            return d;
        }
    };

    /// Dimensions of the powers (R+)^{*k} and nil(R), computed multidegree
    /// by multidegree. Cost grows with 2^m; gated by the cap.
    PowerFiltration graded_power_dims(int vertex_cap = 16) const {
        if (m_ > vertex_cap)
            throw CapExceeded("graded_power_dims: m exceeds cap " + std::to_string(vertex_cap));
        // pieces of R+, with all basis vectors
        std::vector<std::pair<Key, std::vector<std::vector<F>>>> r_plus;
        for_each_nonzero_piece([&](std::uint32_t J, int deg, int rank) {
            if (J == 0) return;  // the unit piece is not in R+
            std::vector<std::vector<F>> vecs;
            for (int i = 0; i < rank; ++i) {
                std::vector<F> c(rank, FieldTraits<F>::zero());
                c[i] = FieldTraits<F>::one();
                vecs.push_back(std::move(c));
            }
            r_plus.push_back({{J, deg}, std::move(vecs)});
        });

        PowerFiltration out;
        std::map<Key, std::vector<std::vector<F>>> power;  // reduced spanning sets
        for (const auto& [key, vecs] : r_plus) power[key] = vecs;

        while (!power.empty()) {
            std::map<int, long long> dims;
            for (const auto& [key, vecs] : power) {
                // Lemma 4.2 direction: a k-fold product has cochain degree >= k-1
                if (key.second < static_cast<int>(out.dims.size()))
                    throw std::logic_error("graded_power_dims: degree bound violated");
                dims[total_degree(key)] += static_cast<long long>(vecs.size());
            }
            out.dims.push_back(std::move(dims));
            if (static_cast<int>(out.dims.size()) > max_total_degree() + 1)
                throw std::logic_error("graded_power_dims: filtration failed to terminate");

            std::map<Key, SpanSolver<F>> next_span;
            std::map<Key, std::vector<std::vector<F>>> next;
            for (const auto& [ka, avecs] : power)
                for (const auto& [keyb, bvecs] : r_plus) {
                    if (ka.first & keyb.first) continue;
                    for (const auto& va : avecs)
                        for (const auto& vb : bvecs) {
                            Element prod = product(single(ka.first, ka.second, va),
                                                   single(keyb.first, keyb.second, vb));
                            if (prod.empty()) continue;
                            const auto& [kp, vp] = *prod.begin();
                            auto it = next_span.find(kp);
                            if (it == next_span.end())
                                it = next_span
                                         .emplace(kp, SpanSolver<F>(piece_rank(kp.first, kp.second)))
                                         .first;
                            if (it->second.add_generator(vp)) next[kp].push_back(vp);
                        }
                }
            power = std::move(next);
        }
        out.nil = static_cast<int>(out.dims.size());
        return out;
    }

    long long socle_dim(int vertex_cap = 16) const {
        if (m_ > vertex_cap)
            throw CapExceeded("socle_dim: m exceeds cap " + std::to_string(vertex_cap));
        std::vector<std::pair<Key, int>> pieces;
        for_each_nonzero_piece(
            [&](std::uint32_t J, int deg, int rank) { pieces.push_back({{J, deg}, rank}); });
        long long total = 0;
        for (const auto& [key, rank] : pieces) {
            // x in this piece is in the socle iff every product with a
            // positive-degree basis class vanishes; only disjoint supports
            // can produce nonzero products.
            std::vector<Element> images_per_coord(rank);
            std::vector<std::vector<Element>> cols(rank);
            for (int i = 0; i < rank; ++i) cols[i] = {};
            for (const auto& [keyb, rankb] : pieces) {
                if (keyb.first == 0 || (keyb.first & key.first)) continue;
                for (int bi = 0; bi < rankb; ++bi) {
                    Element b = basis_element(keyb.first, keyb.second, bi);
                    for (int i = 0; i < rank; ++i)
                        cols[i].push_back(product(basis_element(key.first, key.second, i), b));
                }
            }
            // rank of the stacked map R^piece -> ⊕ targets
            total += rank - rank_of_element_columns(cols);
        }
        return total;
    }

    struct FactorIndexResult {
        long long lower = 0;   // dimension of a found factor subspace
        long long upper = 0;   // certified bound: dim span(divisor set)
        bool exact = false;
    };

    /// ind_k(x): maximal dimension of a subspace of R^k all of whose nonzero
    /// elements divide x. Enumerates the divisor set over a finite field;
    /// when the set (plus 0) is a subspace the answer is its dimension,
    /// otherwise a bounded subspace search inside the set runs and the
    /// result carries certified bounds.
    FactorIndexResult factor_index(const Element& x, int k,
                                   std::uint64_t enumeration_cap = (1u << 21)) const {
        if (!FieldTraits<F>::is_finite)
            throw CapExceeded("factor_index: divisor enumeration needs a finite field");
        if (is_zero(x)) throw PreconditionError("factor_index: x must be nonzero");
        int p = homogeneous_degree(x);
        std::vector<Key> keys = degree_basis_keys(k);
        std::vector<int> ranks;
        int dk = 0;
        for (const Key& key : keys) {
            ranks.push_back(piece_rank(key.first, key.second));
            dk += ranks.back();
        }
        FactorIndexResult res;
        if (dk == 0) {
            res.exact = true;
            return res;
        }
        const unsigned q = FieldTraits<F>::order;
        double count = 1;
        for (int i = 0; i < dk; ++i) count *= q;
        if (count > static_cast<double>(enumeration_cap))
            throw CapExceeded("factor_index: q^dim(R^k) exceeds enumeration cap");

        // complement-degree basis elements, for divisibility solves
        std::vector<Element> complement;
        for (const Key& key : degree_basis_keys(p - k))
            for (int i = 0; i < piece_rank(key.first, key.second); ++i)
                complement.push_back(basis_element(key.first, key.second, i));

        // enumerate one representative per projective point
        std::vector<std::vector<F>> divisors;
        std::vector<F> coord(dk, FieldTraits<F>::zero());
        std::uint64_t total = 1;
        for (int i = 0; i < dk; ++i) total *= q;
        for (std::uint64_t code = 1; code < total; ++code) {
            std::uint64_t c = code;
            for (int i = 0; i < dk; ++i) {
                coord[i] = F(static_cast<long long>(c % q));
                c /= q;
            }
            // projective representative: leading coefficient 1
            int lead = -1;
            for (int i = dk - 1; i >= 0; --i)
                if (!zk::is_zero(coord[i])) { lead = i; break; }
            if (lead < 0 || coord[lead] != FieldTraits<F>::one()) continue;
            Element v = element_from_degree_coords(keys, ranks, coord);
            if (divides(v, x, complement)) divisors.push_back(coord);
        }

        SpanSolver<F> span(dk);
        for (const auto& d : divisors) span.add_generator(d);
        res.upper = span.rank();
        // subspace iff the divisor count matches the full span
        std::uint64_t span_points = 1;
        for (int i = 0; i < res.upper; ++i) span_points *= q;
        std::uint64_t proj_points = (span_points - 1) / (q - 1);
        if (divisors.size() == proj_points) {
            res.lower = res.upper;
            res.exact = true;
            return res;
        }
        bool completed = false;
        res.lower = max_subspace_in_set(divisors, dk, res.upper, completed);
        res.exact = completed || res.lower == res.upper;
        return res;
    }

    /// v divides x: ∃u with v·u = x. Solved by linearizing multiplication
    /// by v on the complement degree.
    bool divides(const Element& v, const Element& x,
                 const std::vector<Element>& complement_basis) const {
        std::vector<Element> images;
        images.reserve(complement_basis.size());
        for (const Element& u : complement_basis) images.push_back(product(v, u));
        return element_in_span(images, x);
    }

    int homogeneous_degree(const Element& x) const {
        int deg = -1;
        for (const auto& [k, v] : x) {
            int d = total_degree(k);
            if (deg >= 0 && d != deg)
                throw PreconditionError("element is not homogeneous");
            deg = d;
        }
        if (deg < 0) throw PreconditionError("element is zero");
        return deg;
    }

    Element element_from_degree_coords(const std::vector<Key>& keys, const std::vector<int>& ranks,
                                       const std::vector<F>& coord) const {
        Element v;
        int off = 0;
        for (std::size_t t = 0; t < keys.size(); ++t) {
            std::vector<F> c(coord.begin() + off, coord.begin() + off + ranks[t]);
            off += ranks[t];
            if (!all_zero(c)) v[keys[t]] = std::move(c);
        }
        return v;
    }

    /// Enumerate every nonzero piece (J, deg, rank); 2^m subsets.
    template <class Fn>
    void for_each_nonzero_piece(Fn&& fn) const {
        std::uint64_t total = std::uint64_t{1} << m_;
        for (std::uint64_t J = 0; J < total; ++J) {
            std::uint32_t mask = static_cast<std::uint32_t>(J);
            const Piece& pc = piece(mask);
            for (int d = -1; d <= pc.sub.complex.dim(); ++d) {
                int r = pc.basis.rank(d);
                if (r > 0) fn(mask, d, r);
            }
        }
    }

    // linear algebra over elements -------------------------------------

    long long rank_of_elements(const std::vector<Element>& elems) const {
        std::map<Key, int> offsets;
        int dim = index_pieces(elems, offsets);
        SpanSolver<F> span(dim);
        long long r = 0;
        for (const Element& e : elems)
            if (span.add_generator(flatten(e, offsets, dim))) ++r;
        return r;
    }

    bool element_in_span(const std::vector<Element>& elems, const Element& target) const {
        std::vector<Element> all = elems;
        all.push_back(target);
        std::map<Key, int> offsets;
        int dim = index_pieces(all, offsets);
        SpanSolver<F> span(dim);
        for (const Element& e : elems) span.add_generator(flatten(e, offsets, dim));
        return span.contains(flatten(target, offsets, dim));
    }

    std::uint32_t to_mask(const FaceSet& s) const {
        std::uint32_t mask = 0;
        for (int v : s.vertices()) mask |= 1u << v;
        return mask;
    }
    std::uint32_t full_mask() const {
        return m_ == 0 ? 0u : static_cast<std::uint32_t>((std::uint64_t{1} << m_) - 1);
    }
    static FaceSet mask_to_faceset(std::uint32_t mask) {
        FaceSet s;
        while (mask) {
            s.insert(__builtin_ctz(mask));
            mask &= mask - 1;
        }
        return s;
    }

private:
    struct Piece {
        Subcomplex sub;
        std::vector<int> global_to_local;
        CohomologyBasis<F> basis;
        Piece(const Complex& K, std::uint32_t J)
            : sub(full_subcomplex(K, mask_to_faceset(J))),
              global_to_local(K.m(), -1),
              basis(sub.complex) {
            for (std::size_t i = 0; i < sub.vertex_map.size(); ++i)
                global_to_local[sub.vertex_map[i]] = static_cast<int>(i);
        }
    };

    const Piece& piece(std::uint32_t J) const {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(J);
            if (it != cache_.end()) return *it->second;
        }
        // build outside the lock; insertion is idempotent because bases are
        // deterministic
        auto built = std::make_unique<Piece>(K_, J);
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, fresh] = cache_.emplace(J, std::move(built));
        return *it->second;
    }

    static FaceSet local_to_global(const Piece& p, const FaceSet& local) {
        FaceSet g;
        for (int v : local.vertices()) g.insert(p.sub.vertex_map[v]);
        return g;
    }
    static FaceSet global_to_local(const Piece& p, const FaceSet& global) {
        FaceSet l;
        for (int v : global.vertices()) l.insert(p.global_to_local[v]);
        return l;
    }

    void accumulate_term_product(Element& out, const Key& ka, const std::vector<F>& va,
                                 const Key& kb, const std::vector<F>& vb) const {
        std::uint32_t U = ka.first | kb.first;
        int dc = ka.second + kb.second + 1;
        const Piece& pu = piece(U);
        if (dc > pu.sub.complex.dim()) return;
        if (pu.basis.rank(dc) == 0) return;  // class lands in zero group
        const Piece& pa = piece(ka.first);
        const Piece& pb = piece(kb.first);
        std::vector<F> za = pa.basis.cocycle_from_coordinates(ka.second, va);
        std::vector<F> zb = pb.basis.cocycle_from_coordinates(kb.second, vb);
        FaceSet maskA = mask_to_faceset(ka.first);
        const auto& u_faces = pu.basis.cochains().faces(dc);
        std::vector<F> zc(u_faces.size(), FieldTraits<F>::zero());
        bool any = false;
        for (std::size_t i = 0; i < u_faces.size(); ++i) {
            FaceSet rho = local_to_global(pu, u_faces[i]);
            FaceSet sg = rho & maskA;
            FaceSet tg = rho - sg;
            if (sg.size() != ka.second + 1 || tg.size() != kb.second + 1) continue;
            int ia = pa.basis.cochains().face_index(ka.second, global_to_local(pa, sg));
            int ib = pb.basis.cochains().face_index(kb.second, global_to_local(pb, tg));
            if (ia < 0 || ib < 0) continue;
            F val = za[ia] * zb[ib];
            if (zk::is_zero(val)) continue;
            if (shuffle_inversions(sg, tg) % 2) val = -val;
            zc[i] = val;
            any = true;
        }
        if (!any) return;
        auto cls = pu.basis.class_coordinates(dc, zc);
        if (!cls) throw std::logic_error("bhr: product cochain is not a cocycle");
        if (all_zero(*cls)) return;
        Key kc{U, dc};
        auto it = out.find(kc);
        if (it == out.end()) {
            out[kc] = std::move(*cls);
        } else {
            for (std::size_t i = 0; i < cls->size(); ++i) it->second[i] += (*cls)[i];
            if (all_zero(it->second)) out.erase(it);
        }
    }

    /// #{(s,t) ∈ σ×τ : s > t} — parity gives the shuffle sign.
    static int shuffle_inversions(const FaceSet& sigma, const FaceSet& tau) {
        int inv = 0;
        int total = sigma.size();
        for (int t : tau.vertices()) inv += total - sigma.rank_of(t);
        return inv;
    }

    static bool all_zero(const std::vector<F>& v) {
        for (const F& x : v)
            if (!zk::is_zero(x)) return false;
        return true;
    }

    int index_pieces(const std::vector<Element>& elems, std::map<Key, int>& offsets) const {
        offsets.clear();
        int dim = 0;
        for (const Element& e : elems)
            for (const auto& [k, v] : e)
                if (!offsets.count(k)) {
                    offsets[k] = dim;
                    dim += static_cast<int>(v.size());
                }
        return dim;
    }

    std::vector<F> flatten(const Element& e, const std::map<Key, int>& offsets, int dim) const {
        std::vector<F> out(dim, FieldTraits<F>::zero());
        for (const auto& [k, v] : e) {
            int off = offsets.at(k);
            for (std::size_t i = 0; i < v.size(); ++i) out[off + i] = v[i];
        }
        return out;
    }

    template <class Fn>
    void for_each_subset_of_size(int s, Fn&& fn) const {
        if (s < 0 || s > m_) return;
        if (s == 0) {
            fn(0u);
            return;
        }
        std::uint32_t mask = (std::uint32_t{1} << s) - 1;
        std::uint32_t limit = full_mask();
        while (mask <= limit) {
            fn(mask);
            if (mask == 0) break;
            // Gosper's hack: next subset of the same size
            std::uint32_t c = mask & -mask;
            std::uint32_t r = mask + c;
            std::uint32_t next = (((r ^ mask) >> 2) / c) | r;
            if (next <= mask || next > limit) break;
            mask = next;
        }
    }

    /// Stacked-column rank used by socle: cols[i] is the list of element
    /// images of piece-basis vector i; vectors are compared jointly.
    long long rank_of_element_columns(const std::vector<std::vector<Element>>& cols) const {
        if (cols.empty()) return 0;
        std::map<Key, int> offsets;
        int dim = 0;
        for (const auto& col : cols)
            for (const Element& e : col)
                for (const auto& [k, v] : e)
                    if (!offsets.count(k)) {
                        offsets[k] = dim;
                        dim += static_cast<int>(v.size());
                    }
        // each column flattens the concatenation of its images; images line
        // up across columns because every column has the same image count
        std::size_t nimg = cols[0].size();
        int stride = dim;
        int big = stride * static_cast<int>(std::max<std::size_t>(nimg, 1));
        SpanSolver<F> span(big);
        long long r = 0;
        for (const auto& col : cols) {
            std::vector<F> flat(big, FieldTraits<F>::zero());
            for (std::size_t s = 0; s < col.size(); ++s) {
                for (const auto& [k, v] : col[s]) {
                    int off = static_cast<int>(s) * stride + offsets.at(k);
                    for (std::size_t i = 0; i < v.size(); ++i) flat[off + i] = v[i];
                }
            }
            if (span.add_generator(flat)) ++r;
        }
        return r;
    }

    /// Backtracking search for the largest subspace contained in the given
    /// set of vectors (projective representatives). Bounded by a node
    /// budget; `completed` reports whether the search was exhaustive.
    long long max_subspace_in_set(const std::vector<std::vector<F>>& divisors, int dim,
                                  long long upper, bool& completed) const {
        std::set<std::vector<unsigned>> dset;
        auto encode = [&](const std::vector<F>& v) {
            std::vector<unsigned> e;
            e.reserve(v.size());
            for (const F& x : v) e.push_back(value_of(x));
            return e;
        };
        for (const auto& d : divisors) {
            for (unsigned c = 1; c < FieldTraits<F>::order; ++c) {
                std::vector<F> w = d;
                for (F& x : w) x *= F(static_cast<long long>(c));
                dset.insert(encode(w));
            }
        }
        auto in_set = [&](const std::vector<F>& v) { return dset.count(encode(v)) > 0; };

        long long best = 0;
        long long budget = 2'000'000;
        std::vector<std::vector<F>> chosen_span = {std::vector<F>(dim, FieldTraits<F>::zero())};
        std::function<void(std::size_t, long long)> rec = [&](std::size_t start, long long depth) {
            best = std::max(best, depth);
            if (depth >= upper || budget <= 0) return;
            for (std::size_t i = start; i < divisors.size(); ++i) {
                if (--budget <= 0) return;
                const auto& g = divisors[i];
                // every new combination must stay inside the divisor set
                bool ok = true;
                std::vector<std::vector<F>> added;
                for (const auto& s : chosen_span) {
                    for (unsigned c = 1; c < FieldTraits<F>::order && ok; ++c) {
                        std::vector<F> w = s;
                        for (int t = 0; t < dim; ++t) w[t] += F(static_cast<long long>(c)) * g[t];
                        bool zero = true;
                        for (const F& x : w)
                            if (!zk::is_zero(x)) { zero = false; break; }
                        if (zero) continue;
                        if (!in_set(w)) {
                            ok = false;
                            break;
                        }
                        added.push_back(std::move(w));
                    }
                    if (!ok) break;
                }
                if (!ok) continue;
                if (chosen_span.size() + added.size() > (1u << 16)) continue;
                std::size_t save = chosen_span.size();
                for (auto& w : added) chosen_span.push_back(std::move(w));
                rec(i + 1, depth + 1);
                chosen_span.resize(save);
                if (best >= upper) return;
            }
        };
        rec(0, 0);
        completed = budget > 0;
        return best;
    }

    static unsigned value_of(const F& x) {
        if constexpr (FieldTraits<F>::is_finite) {
            return x.value();
        } else {
            return 0;
        }
    }

    const Complex& K_;
    int m_;
    mutable std::mutex mu_;
    mutable std::map<std::uint32_t, std::unique_ptr<Piece>> cache_;
};

}  // namespace zk

#endif
