#ifndef ZK_PROPERTIES_HPP
#define ZK_PROPERTIES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zk/complex.hpp"
#include "zk/hochster.hpp"
#include "zk/homology.hpp"

namespace zk {

/// Induced 4-circuit on {a,b,c,d}: the induced graph is a 4-cycle (both
/// diagonals missing). In that case no 2-face fits inside, so the full
/// subcomplex is the circuit itself.
struct FourCircuit {
    FaceSet vertices;
    FaceSet diagonal1;  // the two missing pairs
    FaceSet diagonal2;
};

inline std::optional<FourCircuit> induced_four_circuit_on(const Complex& K, int a, int b, int c,
                                                          int d) {
    // try the three pairings of {a,b,c,d} into opposite (missing) pairs
    const int p[3][4] = {{a, b, c, d}, {a, c, b, d}, {a, b, d, c}};
    for (const auto& q : p) {
        int w = q[0], x = q[1], y = q[2], z = q[3];
        // cycle w-x-y-z with diagonals {w,y},{x,z} missing
        if (K.adjacent(w, x) && K.adjacent(x, y) && K.adjacent(y, z) && K.adjacent(z, w) &&
            !K.adjacent(w, y) && !K.adjacent(x, z))
            return FourCircuit{FaceSet{w, x, y, z}, FaceSet{w, y}, FaceSet{x, z}};
    }
    return std::nullopt;
}

inline std::vector<FourCircuit> induced_four_circuits(const Complex& K) {
    std::vector<FourCircuit> out;
    int m = K.m();
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = b + 1; c < m; ++c)
                for (int d = c + 1; d < m; ++d)
                    if (auto fc = induced_four_circuit_on(K, a, b, c, d)) out.push_back(*fc);
    return out;
}

inline bool has_no_square(const Complex& K) { return induced_four_circuits(K).empty(); }

struct SuspensionSplit {
    FaceSet poles;   // the missing pair ω
    Complex factor;  // L with K = ∂Δ¹ * L (re-indexed)
    std::vector<int> factor_vertex_map;
};

/// K = K_ω * K_rest for a missing pair ω = {a,b}: every facet contains
/// exactly one pole and the two deleted links coincide.
inline std::optional<SuspensionSplit> suspension_split(const Complex& K) {
    for (const FaceSet& mf : missing_faces(K)) {
        if (mf.size() != 2) continue;
        auto vs = mf.vertices();
        int a = vs[0], b = vs[1];
        bool ok = true;
        std::vector<FaceSet> la, lb;
        for (const FaceSet& f : K.facets()) {
            bool ha = f.contains(a), hb = f.contains(b);
            if (ha == hb) { ok = false; break; }
            FaceSet rest = f;
            rest.erase(ha ? a : b);
            (ha ? la : lb).push_back(rest);
        }
        if (!ok) continue;
        std::sort(la.begin(), la.end());
        std::sort(lb.begin(), lb.end());
        if (la != lb) continue;
        FaceSet others = FaceSet::full(K.m());
        others.erase(a);
        others.erase(b);
        Subcomplex sc = full_subcomplex(K, others);
        return SuspensionSplit{mf, sc.complex, sc.vertex_map};
    }
    return std::nullopt;
}

inline bool is_suspension(const Complex& K) { return suspension_split(K).has_value(); }

// ---------------------------------------------------------------------------
// NSC: no full subcomplex is a suspension carrying top-minus-one cohomology.
// For flag Gorenstein* K this reduces to: for every missing pair {a,b} and
// every J inside the common link, H̃^{n-2}(K_J) = 0 (K_{{a,b}∪J} is then the
// suspension of K_J).
// ---------------------------------------------------------------------------

struct NscReport {
    bool holds = false;
    std::optional<FaceSet> witness_pair;    // ω of a violating suspension
    std::optional<FaceSet> witness_subset;  // J (global vertices)
};

template <class F>
NscReport satisfies_nsc(const Complex& K, int common_link_cap = 24) {
    if (!is_flag(K)) throw PreconditionError("nsc: K must be flag");
    if (!is_generalized_homology_sphere<F>(K))
        throw PreconditionError("nsc: K must be Gorenstein* (a generalized homology sphere)");
    int n = K.dim();
    NscReport rep;
    for (const FaceSet& mf : missing_faces(K)) {
        auto vs = mf.vertices();
        FaceSet common = K.neighbors(vs[0]) & K.neighbors(vs[1]);
        if (common.empty()) continue;
        if (common.size() > common_link_cap)
            throw CapExceeded("nsc: common link has " + std::to_string(common.size()) +
                              " vertices, cap " + std::to_string(common_link_cap));
        Subcomplex C = full_subcomplex(K, common);
        // sweep subsets of the common link for H̃^{n-2} ≠ 0
        std::uint64_t total = std::uint64_t{1} << C.complex.m();
        detail::SweepEngine<F> engine(C.complex);
        std::vector<int> ranks;
        for (std::uint64_t Jm = 1; Jm < total; ++Jm) {
            engine.ranks_for(static_cast<std::uint32_t>(Jm), ranks);
            if (rank_at(ranks, n - 2) > 0) {
                FaceSet J;
                std::uint64_t w = Jm;
                while (w) {
                    int v = __builtin_ctzll(w);
                    w &= w - 1;
                    J.insert(C.vertex_map[v]);
                }
                rep.holds = false;
                rep.witness_pair = mf;
                rep.witness_subset = J;
                return rep;
            }
        }
    }
    rep.holds = true;
    return rep;
}

inline NscReport satisfies_nsc(const Complex& K, FieldTag tag, int common_link_cap = 24) {
    return with_field(tag, [&]<class F>() { return satisfies_nsc<F>(K, common_link_cap); });
}

// ---------------------------------------------------------------------------
// SCC (separable circuit condition)
// ---------------------------------------------------------------------------

enum class SccVerdict { Holds, Fails, Unknown };

inline std::string to_string(SccVerdict v) {
    switch (v) {
        case SccVerdict::Holds: return "holds";
        case SccVerdict::Fails: return "fails";
        case SccVerdict::Unknown: return "unknown";
    }
    return "?";
}

struct SccTriple {
    FaceSet omega;
    int excluded;  // i_k
    enum class Status { Witness, NoWitness, Capped } status;
    FaceSet witness;  // the circuit I when found
};

struct SccReport {
    SccVerdict verdict = SccVerdict::Unknown;
    long long cap = 0;
    std::vector<SccTriple> failures;        // exhaustive no-witness triples
    std::vector<SccTriple> capped;          // search cap hit
    long long triples_checked = 0;
};

namespace detail {

/// Search for a full-subcomplex circuit I through the missing pair {i1,i2},
/// avoiding ik, whose vertex set witnesses the SCC disconnection. A circuit
/// through a missing pair splits into two arcs; K_{{ik}∪I∖ω} is
/// disconnected exactly when ik has no neighbour on at least one arc, so the
/// search grows a "clean" arc inside V∖N[ik] first and closes with an
/// unrestricted second arc. Chordless pruning: an internal vertex may touch
/// no cycle vertex except its two neighbours. Arcs are explored shortest
/// first (iterative deepening); `budget` counts path extensions.
class SccSearch {
public:
    SccSearch(const Complex& K, int i1, int i2, int ik, long long budget)
        : K_(K), i1_(i1), i2_(i2), ik_(ik), budget_(budget) {}

    // status + witness circuit
    std::pair<SccTriple::Status, FaceSet> run() {
        FaceSet clean_allowed = FaceSet::full(K_.m());
        clean_allowed.erase(ik_);
        clean_allowed = clean_allowed - K_.neighbors(ik_);
        clean_allowed.erase(i1_);
        clean_allowed.erase(i2_);
        int max_len = K_.m() - 1;  // circuit avoids ik
        for (int len = 4; len <= max_len; ++len) {
            // |arc1 internals| + |arc2 internals| = len - 2, each >= 1
            for (int l1 = 1; l1 <= len - 3; ++l1) {
                if (found_) break;
                arc1_.clear();
                if (!grow_arc1(clean_allowed, l1, len - 2 - l1)) return {SccTriple::Status::Capped, {}};
            }
            if (found_) return {SccTriple::Status::Witness, witness_};
        }
        return {SccTriple::Status::NoWitness, {}};
    }

private:
    // DFS over induced i1→i2 paths with exactly target1 internal vertices in
    // the clean region; for each complete arc, search the second arc.
    bool grow_arc1(const FaceSet& allowed, int target1, int target2) {
        return dfs1(i1_, allowed, target1, target2);
    }

    bool dfs1(int tail, const FaceSet& allowed, int remaining, int target2) {
        if (budget_-- <= 0) return false;
        FaceSet cands = K_.neighbors(tail) & allowed;
        for (int w : cands.vertices()) {
            if (found_) return true;
            // chordless within arc1: w may touch only the current tail
            bool chord = false;
            for (std::size_t i = 0; i + 1 < arc1_.size() && !chord; ++i)
                if (K_.adjacent(w, arc1_[i])) chord = true;
            if (!arc1_.empty() && K_.adjacent(w, i1_)) chord = true;  // only first touches i1
            if (chord) continue;
            bool closes = K_.adjacent(w, i2_);
            if (remaining == 1) {
                if (!closes) continue;
                arc1_.push_back(w);
                if (!second_arc(target2)) { arc1_.pop_back(); return false; }
                arc1_.pop_back();
                if (found_) return true;
            } else {
                if (closes) continue;  // would chord against i2
                arc1_.push_back(w);
                FaceSet next_allowed = allowed;
                next_allowed.erase(w);
                if (!dfs1(w, next_allowed, remaining - 1, target2)) { arc1_.pop_back(); return false; }
                arc1_.pop_back();
                if (found_) return true;
            }
        }
        return true;
    }

    // second arc: internals anywhere except ik, arc1, and their neighbours
    bool second_arc(int target2) {
        FaceSet allowed = FaceSet::full(K_.m());
        allowed.erase(ik_);
        allowed.erase(i1_);
        allowed.erase(i2_);
        for (int v : arc1_) {
            allowed.erase(v);
            allowed = allowed - K_.neighbors(v);  // cross chords forbidden
        }
        arc2_.clear();
        return dfs2(i1_, allowed, target2);
    }

    bool dfs2(int tail, const FaceSet& allowed, int remaining) {
        if (budget_-- <= 0) return false;
        FaceSet cands = K_.neighbors(tail) & allowed;
        for (int w : cands.vertices()) {
            if (found_) return true;
            bool chord = false;
            for (std::size_t i = 0; i + 1 < arc2_.size() && !chord; ++i)
                if (K_.adjacent(w, arc2_[i])) chord = true;
            if (!arc2_.empty() && K_.adjacent(w, i1_)) chord = true;
            if (chord) continue;
            bool closes = K_.adjacent(w, i2_);
            if (remaining == 1) {
                if (!closes) continue;
                arc2_.push_back(w);
                report_witness();
                arc2_.pop_back();
                if (found_) return true;
            } else {
                if (closes) continue;
                arc2_.push_back(w);
                FaceSet next_allowed = allowed;
                next_allowed.erase(w);
                if (!dfs2(w, next_allowed, remaining - 1)) { arc2_.pop_back(); return false; }
                arc2_.pop_back();
                if (found_) return true;
            }
        }
        return true;
    }

    void report_witness() {
        FaceSet I{i1_, i2_};
        for (int v : arc1_) I.insert(v);
        for (int v : arc2_) I.insert(v);
        witness_ = I;
        found_ = true;
    }

    const Complex& K_;
    int i1_, i2_, ik_;
    long long budget_;
    bool found_ = false;
    FaceSet witness_;
    std::vector<int> arc1_, arc2_;
};

}  // namespace detail

/// One (ω, i_k) query: witness circuit, certified absence, or cap.
inline SccTriple scc_triple_search(const Complex& K, const FaceSet& omega, int ik,
                                   long long cap = 1'000'000) {
    auto vs = omega.vertices();
    detail::SccSearch search(K, vs[0], vs[1], ik, cap);
    auto [status, witness] = search.run();
    return SccTriple{omega, ik, status, witness};
}

inline SccReport satisfies_scc(const Complex& K, long long cap_per_triple = 1'000'000) {
    if (!is_flag(K)) throw PreconditionError("scc: K must be flag");
    if (K.m() < 3) throw PreconditionError("scc: K must have at least 3 vertices");
    if (core(K).simplex_factor != 0)
        throw PreconditionError("scc: K must satisfy K = core K");
    SccReport rep;
    rep.cap = cap_per_triple;
    bool any_capped = false;
    for (const FaceSet& omega : missing_faces(K)) {
        for (int ik = 0; ik < K.m(); ++ik) {
            if (omega.contains(ik)) continue;
            ++rep.triples_checked;
            SccTriple t = scc_triple_search(K, omega, ik, cap_per_triple);
            if (t.status == SccTriple::Status::NoWitness) rep.failures.push_back(t);
            if (t.status == SccTriple::Status::Capped) {
                any_capped = true;
                rep.capped.push_back(t);
            }
        }
    }
    if (!rep.failures.empty())
        rep.verdict = SccVerdict::Fails;
    else if (any_capped)
        rep.verdict = SccVerdict::Unknown;
    else
        rep.verdict = SccVerdict::Holds;
    return rep;
}

// ---------------------------------------------------------------------------
// Class Q and belts (simplicial 2-spheres)
// ---------------------------------------------------------------------------

inline void require_two_sphere(const Complex& K, const char* who) {
    if (K.dim() != 2 || !is_generalized_homology_sphere<GF<2>>(K))
        throw PreconditionError(std::string(who) + ": K must be a simplicial 2-sphere");
}

/// Flag 2-sphere whose every induced 4-circuit is the link of a vertex.
inline bool class_q_membership(const Complex& K) {
    require_two_sphere(K, "class_q");
    if (!is_flag(K)) return false;
    std::vector<FaceSet> link_sets;
    for (int v = 0; v < K.m(); ++v)
        if (K.neighbors(v).size() == 4) link_sets.push_back(K.neighbors(v));
    for (const FourCircuit& fc : induced_four_circuits(K)) {
        bool simple = false;
        for (const FaceSet& ls : link_sets)
            if (ls == fc.vertices) { simple = true; break; }
        if (!simple) return false;
    }
    return true;
}

/// Chordless cycles with exactly k vertices, as vertex sets. Canonical
/// enumeration: smallest vertex first, second vertex below the last.
inline std::vector<FaceSet> induced_cycles(const Complex& K, int k) {
    std::vector<FaceSet> out;
    std::vector<int> path;
    std::function<void(int)> dfs = [&](int tail) {
        int s = path[0];
        int t = static_cast<int>(path.size());  // w would take cycle position t
        FaceSet cands = K.neighbors(tail);
        for (int w : cands.vertices()) {
            if (w <= s) continue;
            bool onpath = false, chord = false;
            for (std::size_t i = 0; i < path.size() && !onpath; ++i)
                if (path[i] == w) onpath = true;
            if (onpath) continue;
            // non-consecutive cycle vertices must be non-adjacent: w may touch
            // only the tail, plus s when w is the second or the closing vertex
            for (std::size_t i = 1; i + 1 < path.size() && !chord; ++i)
                if (K.adjacent(w, path[i])) chord = true;
            if (chord) continue;
            bool adj_s = K.adjacent(w, s);
            if (t == k - 1) {
                if (adj_s && path[1] < w) out.push_back(FaceSet::from_vertices(path) | FaceSet{w});
            } else {
                if (t >= 2 && adj_s) continue;
                path.push_back(w);
                dfs(w);
                path.pop_back();
            }
        }
    };
    if (k < 3) return out;
    for (int s = 0; s < K.m(); ++s) {
        path = {s};
        dfs(s);
    }
    return out;
}

/// Belts of the dual simple 3-polytope, as vertex sets of K: induced
/// k-circuits for k >= 4; for k = 3, graph triangles that are not faces.
inline std::vector<FaceSet> belts(const Complex& K, int k) {
    require_two_sphere(K, "belts");
    if (k < 3) throw PreconditionError("belts: k must be at least 3");
    if (k == 3) {
        std::vector<FaceSet> out;
        for (int a = 0; a < K.m(); ++a)
            for (int b = a + 1; b < K.m(); ++b) {
                if (!K.adjacent(a, b)) continue;
                FaceSet common = K.neighbors(a) & K.neighbors(b);
                for (int c : common.vertices()) {
                    if (c <= b) continue;
                    FaceSet tri{a, b, c};
                    if (!K.contains(tri)) out.push_back(tri);
                }
            }
        return out;
    }
    return induced_cycles(K, k);
}

// ---------------------------------------------------------------------------
// Separating circuit witness (class Q spheres)
// ---------------------------------------------------------------------------

/// Under the hypothesis that no vertex of ω lying in lk_{i_s}K has a
/// 4-circuit link, a witness circuit exists; absence is a bug signal, so it
/// throws logic_error rather than returning failure.
inline FaceSet separating_circuit_witness(const Complex& K, const FaceSet& omega, int is,
                                          long long cap = 10'000'000) {
    if (!class_q_membership(K))
        throw PreconditionError("separating_circuit_witness: K must lie in class Q");
    if (omega.size() != 2 || K.contains(omega))
        throw PreconditionError("separating_circuit_witness: ω must be a missing pair");
    if (omega.contains(is))
        throw PreconditionError("separating_circuit_witness: i_s must avoid ω");
    for (int i : (K.neighbors(is) & omega).vertices())
        if (K.neighbors(i).size() == 4)
            throw PreconditionError(
                "separating_circuit_witness: hypothesis violated: lk of vertex " +
                std::to_string(i + 1) + " is a 4-circuit");
    SccTriple t = scc_triple_search(K, omega, is, cap);
    if (t.status == SccTriple::Status::Witness) return t.witness;
    if (t.status == SccTriple::Status::Capped)
        throw CapExceeded("separating_circuit_witness: search cap hit");
    throw std::logic_error("separating_circuit_witness: no witness despite hypothesis");
}

}  // namespace zk

#endif
