#ifndef ZK_TORIC_HPP
#define ZK_TORIC_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "zk/complex.hpp"
#include "zk/linalg.hpp"

namespace zk {

using BigInt = boost::multiprecision::cpp_int;

/// Candidate characteristic data for a simplicial (n-1)-sphere K on m
/// vertices: an n×m integer matrix whose column i is λ_i.
struct CharMatrix {
    int n = 0;
    int m = 0;
    std::vector<std::vector<long long>> columns;  // columns[i].size() == n

    const std::vector<long long>& col(int i) const { return columns[i]; }
};

inline BigInt integer_det(std::vector<std::vector<BigInt>> a) {
    // fraction-free Bareiss elimination
    int n = static_cast<int>(a.size());
    BigInt sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

struct CharValidation {
    bool valid = false;
    std::optional<FaceSet> failing_face;
};

/// Facet condition (2.2): det(λ_{i_1},...,λ_{i_n}) = ±1 for every facet.
/// Strict mode additionally demands every k-face span a k-dimensional
/// unimodular sublattice (gcd of the k×k minors is 1).
inline CharValidation validate_characteristic(const Complex& K, const CharMatrix& L,
                                              bool strict = false) {
    if (L.n != K.dim() + 1 || L.m != K.m())
        throw PreconditionError("characteristic matrix shape mismatch (need n = dim K + 1, m = vertex count)");
    for (const auto& c : L.columns)
        if (static_cast<int>(c.size()) != L.n)
            throw PreconditionError("characteristic matrix column of wrong height");
    auto minor_gcd = [&](const std::vector<int>& verts) {
        int k = static_cast<int>(verts.size());
        // gcd over all k×k minors of the n×k column selection
        std::vector<int> rows(k);
        std::iota(rows.begin(), rows.end(), 0);
        BigInt g = 0;
        while (true) {
            std::vector<std::vector<BigInt>> sub(k, std::vector<BigInt>(k));
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < k; ++c) sub[r][c] = L.col(verts[c])[rows[r]];
            g = boost::multiprecision::gcd(g, boost::multiprecision::abs(integer_det(sub)));
            int i = k - 1;
            while (i >= 0 && rows[i] == L.n - k + i) --i;
            if (i < 0) break;
            ++rows[i];
            for (int j = i + 1; j < k; ++j) rows[j] = rows[j - 1] + 1;
        }
        return g;
    };
    if (strict) {
        for (int k = 1; k <= K.dim() + 1; ++k)
            for (const FaceSet& f : K.faces_with_size(k))
                if (minor_gcd(f.vertices()) != 1) return {false, f};
        return {true, std::nullopt};
    }
    for (const FaceSet& f : K.facets()) {
        std::vector<int> verts = f.vertices();
        std::vector<std::vector<BigInt>> sub(L.n, std::vector<BigInt>(L.n));
        for (int r = 0; r < L.n; ++r)
            for (int c = 0; c < L.n; ++c) sub[r][c] = L.col(verts[c])[r];
        BigInt d = integer_det(sub);
        if (d != 1 && d != -1) return {false, f};
    }
    return {true, std::nullopt};
}

/// h-vector from the f-vector by the standard binomial transform:
/// h_j = Σ_i (-1)^{j-i} C(d-i, j-i) f_{i-1}, d = dim K + 1.
inline std::vector<long long> h_vector(const Complex& K) {
    if (!K.is_pure()) throw PreconditionError("h_vector: K must be pure");
    int d = K.dim() + 1;
    std::vector<long long> f = K.f_vector();
    f.insert(f.begin(), 1);  // f_{-1}
    auto binom = [](long long a, long long b) {
        if (b < 0 || b > a) return 0LL;
        long long r = 1;
        for (long long i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
        return r;
    };
    std::vector<long long> h(d + 1, 0);
    for (int j = 0; j <= d; ++j)
        for (int i = 0; i <= j; ++i)
            h[j] += ((j - i) % 2 == 0 ? 1 : -1) * binom(d - i, j - i) * f[i];
    return h;
}

/// Graded ranks of Q[K]/(I_K + linear forms Λx): dim of degree-d piece for
/// d = 0..n. Monomial bases are supported on faces; the n linear relations
/// are multiplied through the degree-(d-1) monomials and ranked exactly
/// over Q. For valid Λ this reproduces the h-vector of K.
inline std::vector<long long> quotient_ring_ranks(const Complex& K, const CharMatrix& L) {
    CharValidation v = validate_characteristic(K, L, false);
    if (!v.valid)
        throw PreconditionError("quotient_ring_ranks: matrix is not characteristic (facet " +
                                (v.failing_face ? v.failing_face->to_string() : "?") + ")");
    int n = L.n;
    // monomials of total degree d with face support, as exponent maps
    using Monomial = std::vector<std::pair<int, int>>;  // (vertex, exponent>0), sorted
    auto monomials_of_degree = [&](int d) {
        std::vector<Monomial> out;
        if (d == 0) {
            out.push_back({});
            return out;
        }
        for (int k = 1; k <= std::min(d, K.dim() + 1); ++k)
            for (const FaceSet& f : K.faces_with_size(k)) {
                std::vector<int> vs = f.vertices();
                // compositions of d into k positive parts
                std::vector<int> comp(k, 1);
                std::function<void(int, int)> gen = [&](int pos, int remaining) {
                    if (pos == k - 1) {
                        comp[pos] = remaining;
                        Monomial mono;
                        for (int i = 0; i < k; ++i) mono.push_back({vs[i], comp[i]});
                        out.push_back(std::move(mono));
                        return;
                    }
                    for (int part = 1; part <= remaining - (k - 1 - pos); ++part) {
                        comp[pos] = part;
                        gen(pos + 1, remaining - part);
                    }
                };
                gen(0, d);
            }
        return out;
    };
    std::vector<long long> ranks;
    for (int d = 0; d <= n; ++d) {
        std::vector<Monomial> basis = monomials_of_degree(d);
        std::map<Monomial, int> index;
        for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
        std::vector<Monomial> lower = monomials_of_degree(d - 1);
        if (d == 0) {
            ranks.push_back(1);
            continue;
        }
        Mat<Rational> rel(static_cast<int>(lower.size()) * n, static_cast<int>(basis.size()));
        int row = 0;
        for (const Monomial& b : lower) {
            for (int r = 0; r < n; ++r, ++row) {
                for (int i = 0; i < K.m(); ++i) {
                    long long coeff = L.col(i)[r];
                    if (coeff == 0) continue;
                    // x_i * b
                    Monomial prod = b;
                    bool found = false;
                    for (auto& [v, e] : prod)
                        if (v == i) {
                            ++e;
                            found = true;
                            break;
                        }
                    if (!found) {
                        prod.push_back({i, 1});
                        std::sort(prod.begin(), prod.end());
                    }
                    auto it = index.find(prod);
                    if (it == index.end()) continue;  // support is a non-face: zero in k[K]
                    rel.at(row, it->second) += Rational(coeff);
                }
            }
        }
        ranks.push_back(static_cast<long long>(basis.size()) - rel.rank());
    }
    return ranks;
}

struct WeakEquivalenceResult {
    bool equivalent = false;
    std::vector<std::vector<long long>> A;  // n×n, det ±1
    std::vector<int> B;                     // diagonal signs per column
};

/// Λ = A·Λ'·B with A ∈ GL(n,Z) and B = diag(±1). Exhaustive over the 2^m
/// sign matrices (global sign fixed, so 2^{m-1}); A is solved from the
/// columns of the first facet and then checked everywhere.
inline WeakEquivalenceResult weak_equivalence(const Complex& K, const CharMatrix& L1,
                                              const CharMatrix& L2) {
    if (L1.n != L2.n || L1.m != L2.m || L1.m != K.m())
        throw PreconditionError("weak_equivalence: shape mismatch");
    int n = L1.n, m = L1.m;
    if (m > 24) throw CapExceeded("weak_equivalence: m exceeds sign-search cap 24");
    std::vector<int> facet = K.facets().front().vertices();
    if (static_cast<int>(facet.size()) != n)
        throw PreconditionError("weak_equivalence: K must be pure of dimension n-1");

    for (std::uint32_t signs = 0; signs < (1u << (m - 1)); ++signs) {
        std::vector<int> B(m, 1);
        for (int i = 1; i < m; ++i)
            if ((signs >> (i - 1)) & 1) B[i] = -1;
        // solve A · (L2·B)|_facet = L1|_facet  (transposed systems per row of A)
        Mat<Rational> X(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) X.at(r, c) = Rational(L2.col(facet[c])[r] * B[facet[c]]);
        bool ok = true;
        std::vector<std::vector<long long>> A(n, std::vector<long long>(n, 0));
        for (int arow = 0; arow < n && ok; ++arow) {
            // A[arow] · X = L1 row restricted to facet -> X^T a = y
            Mat<Rational> XT(n, n);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) XT.at(r, c) = X.at(c, r);
            std::vector<Rational> y(n);
            for (int c = 0; c < n; ++c) y[c] = Rational(L1.col(facet[c])[arow]);
            auto sol = solve(XT, y);
            if (!sol) { ok = false; break; }
            for (int c = 0; c < n; ++c) {
                const Rational& q = (*sol)[c];
                if (boost::multiprecision::denominator(q) != 1) { ok = false; break; }
                BigInt num = boost::multiprecision::numerator(q);
                if (num > std::numeric_limits<long long>::max() ||
                    num < std::numeric_limits<long long>::min()) { ok = false; break; }
                A[arow][c] = static_cast<long long>(num);
            }
        }
        if (!ok) continue;
        // det A = ±1
        std::vector<std::vector<BigInt>> Abig(n, std::vector<BigInt>(n));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) Abig[r][c] = A[r][c];
        BigInt det = integer_det(Abig);
        if (det != 1 && det != -1) continue;
        // full check: A·L2·B == L1
        bool all = true;
        for (int i = 0; i < m && all; ++i)
            for (int r = 0; r < n && all; ++r) {
                long long s = 0;
                for (int c = 0; c < n; ++c) s += A[r][c] * L2.col(i)[c];
                if (s * B[i] != L1.col(i)[r]) all = false;
            }
        if (all) return {true, A, B};
    }
    return {false, {}, {}};
}

/// Quotient by the simplicial automorphisms of K: Λ ~ Λ' when some
/// automorphism π makes Λ and Λ'∘π weakly equivalent.
inline WeakEquivalenceResult weak_equivalence_mod_automorphisms(const Complex& K,
                                                                const CharMatrix& L1,
                                                                const CharMatrix& L2) {
    for (const auto& pi : automorphisms(K)) {
        CharMatrix permuted = L2;
        for (int i = 0; i < L2.m; ++i) permuted.columns[pi[i]] = L2.columns[i];
        WeakEquivalenceResult r = weak_equivalence(K, L1, permuted);
        if (r.equivalent) return r;
    }
    return {false, {}, {}};
}

}  // namespace zk

#endif
