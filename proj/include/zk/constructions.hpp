#ifndef ZK_CONSTRUCTIONS_HPP
#define ZK_CONSTRUCTIONS_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zk/complex.hpp"
#include "zk/homology.hpp"
#include "zk/properties.hpp"

namespace zk {

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

inline Complex simplex_boundary(int m) {
    if (m < 2) throw PreconditionError("simplex_boundary: need at least 2 vertices");
    std::vector<FaceSet> facets;
    for (int skip = 0; skip < m; ++skip) {
        FaceSet f = FaceSet::full(m);
        f.erase(skip);
        facets.push_back(f);
    }
    return Complex(m, std::move(facets));
}

inline Complex polygon(int n) {
    if (n < 3) throw PreconditionError("polygon: need at least 3 vertices");
    std::vector<FaceSet> facets;
    for (int i = 0; i < n; ++i) facets.push_back(FaceSet{i, (i + 1) % n});
    return Complex(n, std::move(facets));
}

inline Complex path_complex(int n) {
    if (n < 1) throw PreconditionError("path: need at least 1 vertex");
    if (n == 1) return Complex(1, {FaceSet{0}});
    std::vector<FaceSet> facets;
    for (int i = 0; i + 1 < n; ++i) facets.push_back(FaceSet{i, i + 1});
    return Complex(n, std::move(facets));
}

/// Bipyramid: suspension of an (n-2)-gon.
inline Complex bipyramid(int n) {
    if (n < 5) throw PreconditionError("bipyramid: need at least 5 vertices");
    return suspension(polygon(n - 2));
}

inline Complex octahedron() { return bipyramid(6); }

/// Boundary of the icosahedron: two pentagon fans glued by an antiprism band.
inline Complex icosahedron() {
    std::vector<std::vector<int>> f;
    auto u = [](int i) { return 1 + (i % 5); };
    auto w = [](int i) { return 6 + (i % 5); };
    for (int i = 0; i < 5; ++i) {
        f.push_back({0, u(i), u(i + 1)});
        f.push_back({11, w(i), w(i + 1)});
        f.push_back({u(i), u(i + 1), w(i)});
        f.push_back({w(i), w(i + 1), u(i + 1)});
    }
    return Complex::from_vertex_lists(12, f);
}

// ---------------------------------------------------------------------------
// Polytope boundaries (non-simplicial input for ξ1/ξ2)
// ---------------------------------------------------------------------------

/// Face lattice of a 3-polytope boundary: faces as cyclic vertex sequences.
/// Validated: Euler relation, every edge in exactly two faces, cycles proper.
struct PolytopeBoundary {
    int vertices = 0;
    std::vector<std::vector<int>> face_cycles;

    std::vector<std::pair<int, int>> edges() const {
        std::set<std::pair<int, int>> es;
        for (const auto& cyc : face_cycles)
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
                es.insert({std::min(a, b), std::max(a, b)});
            }
        return {es.begin(), es.end()};
    }

    void validate() const {
        std::map<std::pair<int, int>, int> edge_count;
        for (const auto& cyc : face_cycles) {
            if (cyc.size() < 3) throw PreconditionError("polytope: face cycle too short");
            std::set<int> seen(cyc.begin(), cyc.end());
            if (seen.size() != cyc.size())
                throw PreconditionError("polytope: face cycle repeats a vertex");
            for (std::size_t i = 0; i < cyc.size(); ++i) {
                int a = cyc[i], b = cyc[(i + 1) % cyc.size()];
                if (a < 0 || a >= vertices || b < 0 || b >= vertices)
                    throw PreconditionError("polytope: vertex out of range");
                edge_count[{std::min(a, b), std::max(a, b)}] += 1;
            }
        }
        for (const auto& [e, c] : edge_count)
            if (c != 2) throw PreconditionError("polytope: edge not in exactly two faces");
        long long V = vertices, E = static_cast<long long>(edge_count.size()),
                  Fc = static_cast<long long>(face_cycles.size());
        if (V - E + Fc != 2) throw PreconditionError("polytope: Euler relation fails");
    }
};

/// The boundary lattice dual to a simplicial 2-sphere: dual vertices are
/// facets, dual faces are the facet fans around vertices in cyclic order.
inline PolytopeBoundary dual_polytope_boundary(const Complex& K) {
    require_two_sphere(K, "dual_polytope_boundary");
    const auto& facets = K.facets();
    auto facet_index = [&](const FaceSet& f) {
        auto it = std::find(facets.begin(), facets.end(), f);
        return static_cast<int>(it - facets.begin());
    };
    PolytopeBoundary P;
    P.vertices = static_cast<int>(facets.size());
    for (int v = 0; v < K.m(); ++v) {
        // walk the facet fan around v
        std::vector<FaceSet> fan;
        for (const FaceSet& f : facets)
            if (f.contains(v)) fan.push_back(f);
        std::vector<int> cycle;
        std::vector<bool> used(fan.size(), false);
        int cur = 0;
        for (std::size_t step = 0; step < fan.size(); ++step) {
            used[cur] = true;
            cycle.push_back(facet_index(fan[cur]));
            int next = -1;
            for (std::size_t j = 0; j < fan.size(); ++j) {
                if (used[j]) continue;
                if ((fan[cur] & fan[j]).size() == 2) { next = static_cast<int>(j); break; }
            }
            if (next < 0) break;
            cur = next;
        }
        if (cycle.size() != fan.size())
            throw PreconditionError("dual_polytope_boundary: facet fan is not a single cycle");
        P.face_cycles.push_back(cycle);
    }
    P.validate();
    return P;
}

inline PolytopeBoundary cube_boundary() { return dual_polytope_boundary(octahedron()); }
inline PolytopeBoundary dodecahedron_boundary() { return dual_polytope_boundary(icosahedron()); }

// ---------------------------------------------------------------------------
// Subdivisions
// ---------------------------------------------------------------------------

struct BarycentricResult {
    Complex complex;
    std::vector<FaceSet> vertex_labels;  // new vertex -> the face of K it subdivides
};

/// Vertices are the nonempty faces of K, facets the maximal chains.
inline BarycentricResult barycentric_subdivision(const Complex& K) {
    std::vector<FaceSet> labels;
    std::map<FaceSet, int> index;
    for (int k = 1; k <= K.dim() + 1; ++k)
        for (const FaceSet& f : K.faces_with_size(k)) {
            index[f] = static_cast<int>(labels.size());
            labels.push_back(f);
        }
    std::vector<FaceSet> facets;
    // chains σ_1 ⊊ σ_2 ⊊ ... ending in a facet, extended downward
    std::function<void(const FaceSet&, FaceSet)> descend = [&](const FaceSet& top, FaceSet chain) {
        chain.insert(index[top]);
        if (top.size() == 1) {
            facets.push_back(chain);
            return;
        }
        for (int v : top.vertices()) {
            FaceSet sub = top;
            sub.erase(v);
            descend(sub, chain);
        }
    };
    for (const FaceSet& f : K.facets()) descend(f, FaceSet{});
    if (labels.size() > static_cast<std::size_t>(FaceSet::kCapacity))
        throw CapExceeded("barycentric subdivision exceeds vertex capacity");
    return {Complex(static_cast<int>(labels.size()), std::move(facets)), std::move(labels)};
}

/// ξ1(Γ): replace every face of Γ by the cone over its boundary.
/// New vertices (face centers) follow the original ones.
inline Complex xi1(const PolytopeBoundary& P) {
    P.validate();
    std::vector<FaceSet> facets;
    int m = P.vertices;
    for (std::size_t fi = 0; fi < P.face_cycles.size(); ++fi) {
        int center = m + static_cast<int>(fi);
        const auto& cyc = P.face_cycles[fi];
        for (std::size_t i = 0; i < cyc.size(); ++i)
            facets.push_back(FaceSet{center, cyc[i], cyc[(i + 1) % cyc.size()]});
    }
    return Complex(m + static_cast<int>(P.face_cycles.size()), std::move(facets));
}

/// ξ2(Γ): ξ1(Γ) with a stellar subdivision at every original edge of Γ.
inline Complex xi2(const PolytopeBoundary& P) {
    Complex K = xi1(P);
    for (const auto& [a, b] : P.edges()) K = stellar_subdivide(K, FaceSet{a, b});
    return K;
}

// ---------------------------------------------------------------------------
// The sphere E_P: two copies of ∂P capped off and joined through a shell
// built over a triangulation of the dual (n-2)-skeleton.
// ---------------------------------------------------------------------------

struct DualSkeletonData {
    Complex T;  // triangulation of the dual (n-2)-skeleton, on its own vertex ids
    // for every face σ of ∂P with dim σ >= 1: vertices of T lying in the dual face
    std::map<FaceSet, FaceSet> face_support;
    // for every vertex i of ∂P: vertices of T lying on the boundary of the dual facet
    std::map<int, FaceSet> vertex_boundary_support;
};

/// Dual 1-skeleton of a simplicial 2-sphere, packaged for construct_EP.
/// Dual vertices are facets; two are adjacent iff the facets share an edge.
inline DualSkeletonData dual_skeleton_auto(const Complex& K) {
    require_two_sphere(K, "construct_EP");
    const auto& facets = K.facets();
    int t = static_cast<int>(facets.size());
    std::vector<FaceSet> tfacets;
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            if ((facets[i] & facets[j]).size() == 2) tfacets.push_back(FaceSet{i, j});
    DualSkeletonData data;
    data.T = Complex(t, std::move(tfacets));
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j)
            if ((facets[i] & facets[j]).size() == 2)
                data.face_support[facets[i] & facets[j]] = FaceSet{i, j};
    for (int i = 0; i < t; ++i) data.face_support[facets[i]] = FaceSet{i};
    for (int v = 0; v < K.m(); ++v) {
        FaceSet fan;
        for (int i = 0; i < t; ++i)
            if (facets[i].contains(v)) fan.insert(i);
        data.vertex_boundary_support[v] = fan;
    }
    return data;
}

/// E_P = ({u} * K) ∪ L ∪ ({u'} * K') where L is the shell
/// (∪ Δ¹_i * L_i) ∪ (∪ σ * L_σ) ∪ (∪ σ' * L_σ'), a triangulation of
/// S^{n-1} × D¹. Vertex layout: [0,m) the first copy, [m,2m) the second,
/// [2m, 2m+|V(T)|) the dual-skeleton vertices, then u and u'.
inline Complex construct_EP(const Complex& boundaryP, const DualSkeletonData& data) {
    int m = boundaryP.m();
    int t = data.T.m();
    int u = 2 * m + t, u2 = u + 1;
    auto shift = [&](const FaceSet& f, int offset) {
        FaceSet g;
        for (int v : f.vertices()) g.insert(v + offset);
        return g;
    };
    std::vector<FaceSet> facets;
    // caps
    for (const FaceSet& f : boundaryP.facets()) {
        facets.push_back(f | FaceSet{u});
        facets.push_back(shift(f, m) | FaceSet{u2});
    }
    // Δ¹_i * L_i
    for (int i = 0; i < m; ++i) {
        auto it = data.vertex_boundary_support.find(i);
        if (it == data.vertex_boundary_support.end())
            throw PreconditionError("construct_EP: missing vertex boundary support");
        Subcomplex Li = full_subcomplex(data.T, it->second);
        for (const FaceSet& g : Li.complex.facets()) {
            FaceSet h{i, i + m};
            for (int v : g.vertices()) h.insert(Li.vertex_map[v] + 2 * m);
            facets.push_back(h);
        }
    }
    // σ * L_σ on both copies, for every face σ with at least 2 vertices
    for (int k = 2; k <= boundaryP.dim() + 1; ++k)
        for (const FaceSet& sigma : boundaryP.faces_with_size(k)) {
            auto it = data.face_support.find(sigma);
            if (it == data.face_support.end())
                throw PreconditionError("construct_EP: missing face support for " +
                                        sigma.to_string());
            Subcomplex Ls = full_subcomplex(data.T, it->second);
            for (const FaceSet& g : Ls.complex.facets()) {
                FaceSet tpart;
                for (int v : g.vertices()) tpart.insert(Ls.vertex_map[v] + 2 * m);
                facets.push_back(sigma | tpart);
                facets.push_back(shift(sigma, m) | tpart);
            }
        }
    return Complex(u2 + 1, std::move(facets));
}

inline Complex construct_EP(const Complex& boundaryP) {
    return construct_EP(boundaryP, dual_skeleton_auto(boundaryP));
}

// ---------------------------------------------------------------------------
// Puzzle moves
// ---------------------------------------------------------------------------

/// Cut K along the separating sphere L = ∂Δ^k * Γ (a full subcomplex, given
/// by the missing face W spanning the ∂Δ^k part and the vertex set Γ) and
/// reglue by the permutation φ of W (Γ is fixed pointwise).
struct PuzzleMoveSpec {
    FaceSet W;                 // vertex set of the ∂Δ^k factor; a missing face of K
    FaceSet Gamma;             // remainder vertex set of L
    std::vector<int> phi;      // permutation of all vertices; identity off W
};

inline PuzzleMoveSpec swap_spec(const Complex& K, const FaceSet& W, const FaceSet& Gamma,
                                int a, int b) {
    PuzzleMoveSpec spec;
    spec.W = W;
    spec.Gamma = Gamma;
    spec.phi.resize(K.m());
    for (int i = 0; i < K.m(); ++i) spec.phi[i] = i;
    std::swap(spec.phi[a], spec.phi[b]);
    return spec;
}

inline Complex puzzle_move(const Complex& K, const PuzzleMoveSpec& spec) {
    const FaceSet& W = spec.W;
    const FaceSet& Gamma = spec.Gamma;
    if (W.intersects(Gamma)) throw PreconditionError("puzzle_move: W and Γ must be disjoint");
    // W spans a ∂Δ^k: W is a minimal non-face
    if (K.contains(W)) throw PreconditionError("puzzle_move: W must not be a face");
    for (int v : W.vertices()) {
        FaceSet sub = W;
        sub.erase(v);
        if (!K.contains(sub))
            throw PreconditionError("puzzle_move: W must be a minimal non-face (∂Δ^k)");
    }
    // φ permutes W and fixes everything else
    if (static_cast<int>(spec.phi.size()) != K.m())
        throw PreconditionError("puzzle_move: φ has wrong size");
    std::vector<bool> seen(K.m(), false);
    for (int i = 0; i < K.m(); ++i) {
        int j = spec.phi[i];
        if (j < 0 || j >= K.m() || seen[j]) throw PreconditionError("puzzle_move: φ not a permutation");
        seen[j] = true;
        if (!W.contains(i) && j != i)
            throw PreconditionError("puzzle_move: φ must fix the complement of W");
        if (W.contains(i) && !W.contains(j))
            throw PreconditionError("puzzle_move: φ must preserve W");
    }
    // L = K_{W∪Γ} must be ∂Δ^k * K_Γ
    FaceSet LV = W | Gamma;
    Subcomplex Lsub = full_subcomplex(K, LV);
    Subcomplex Gsub = full_subcomplex(K, Gamma);
    {
        std::vector<int> inv(K.m(), -1);
        for (std::size_t i = 0; i < Lsub.vertex_map.size(); ++i) inv[Lsub.vertex_map[i]] = (int)i;
        std::vector<FaceSet> expected;
        for (int w : W.vertices()) {
            FaceSet wpart = W;
            wpart.erase(w);
            for (const FaceSet& g : Gsub.complex.facets()) {
                FaceSet h;
                for (int v : wpart.vertices()) h.insert(inv[v]);
                for (int v : g.vertices()) h.insert(inv[Gsub.vertex_map[v]]);
                expected.push_back(h);
            }
            if (Gamma.empty()) {
                FaceSet h;
                for (int v : wpart.vertices()) h.insert(inv[v]);
                expected.push_back(h);
            }
        }
        std::sort(expected.begin(), expected.end());
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
        std::vector<FaceSet> actual = Lsub.complex.facets();
        std::sort(actual.begin(), actual.end());
        if (expected != actual)
            throw PreconditionError("puzzle_move: K_{W∪Γ} is not the join ∂Δ^k * K_Γ");
    }
    if (!is_generalized_homology_sphere<GF<2>>(Lsub.complex))
        throw PreconditionError("puzzle_move: L is not a homology sphere");
    if (Lsub.complex.dim() != K.dim() - 1)
        throw PreconditionError("puzzle_move: L must have codimension one");

    // L separates: the complement has exactly two components
    FaceSet rest = FaceSet::full(K.m()) - LV;
    if (rest.empty()) throw PreconditionError("puzzle_move: L does not separate (no complement)");
    Subcomplex restSub = full_subcomplex(K, rest);
    std::vector<int> comp(restSub.complex.m(), -1);
    int ncomp = 0;
    for (int v = 0; v < restSub.complex.m(); ++v) {
        if (comp[v] >= 0) continue;
        std::vector<int> stack{v};
        comp[v] = ncomp;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : restSub.complex.neighbors(x).vertices())
                if (comp[y] < 0) {
                    comp[y] = ncomp;
                    stack.push_back(y);
                }
        }
        ++ncomp;
    }
    if (ncomp != 2) throw PreconditionError("puzzle_move: complement of L has " +
                                            std::to_string(ncomp) + " components, need 2");
    std::vector<int> side(K.m(), -1);
    for (int v = 0; v < restSub.complex.m(); ++v) side[restSub.vertex_map[v]] = comp[v];

    std::vector<FaceSet> facets;
    for (const FaceSet& f : K.facets()) {
        int fside = -1;
        for (int v : f.vertices())
            if (side[v] >= 0) {
                if (fside >= 0 && fside != side[v])
                    throw PreconditionError("puzzle_move: a facet crosses L");
                fside = side[v];
            }
        if (fside < 0)
            throw PreconditionError("puzzle_move: a facet lies inside L");
        if (fside == 0) {
            facets.push_back(f);
        } else {
            FaceSet g;
            for (int v : f.vertices()) g.insert(spec.phi[v]);
            facets.push_back(g);
        }
    }
    return Complex(K.m(), std::move(facets));
}

/// The flag-2-sphere puzzle-move candidates: every induced 4-circuit yields
/// two diagonal swaps (L = the circuit, ∂Δ¹ = one of its missing pairs).
inline std::vector<PuzzleMoveSpec> flag_two_sphere_puzzle_specs(const Complex& K) {
    std::vector<PuzzleMoveSpec> specs;
    for (const FourCircuit& fc : induced_four_circuits(K)) {
        auto d1 = fc.diagonal1.vertices();
        auto d2 = fc.diagonal2.vertices();
        specs.push_back(swap_spec(K, fc.diagonal1, fc.diagonal2, d1[0], d1[1]));
        specs.push_back(swap_spec(K, fc.diagonal2, fc.diagonal1, d2[0], d2[1]));
    }
    return specs;
}

// ---------------------------------------------------------------------------
// Named catalog for the CLI
// ---------------------------------------------------------------------------

inline Complex catalog(const std::string& name, int parameter = 0) {
    if (name == "simplex-boundary") return simplex_boundary(parameter);
    if (name == "polygon") return polygon(parameter);
    if (name == "path") return path_complex(parameter);
    if (name == "bipyramid") return bipyramid(parameter);
    if (name == "t4") return simplex_boundary(4);
    if (name == "o6") return octahedron();
    if (name == "i12") return icosahedron();
    if (name == "square") return polygon(4);
    if (name == "pentagon") return polygon(5);
    throw PreconditionError("catalog: unknown name '" + name +
                            "' (simplex-boundary|polygon|path|bipyramid|t4|o6|i12|square|pentagon)");
}

inline PolytopeBoundary catalog_lattice(const std::string& name) {
    if (name == "c8" || name == "cube") return cube_boundary();
    if (name == "d20" || name == "dodecahedron") return dodecahedron_boundary();
    throw PreconditionError("catalog: unknown lattice '" + name + "' (c8|d20)");
}

}  // namespace zk

#endif
