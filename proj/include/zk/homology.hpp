#ifndef ZK_HOMOLOGY_HPP
#define ZK_HOMOLOGY_HPP

#include <cassert>
#include <map>
#include <optional>
#include <vector>

#include "zk/complex.hpp"
#include "zk/fields.hpp"
#include "zk/linalg.hpp"

namespace zk {

/// Augmented (reduced) simplicial cochain complex of K over F.
/// Degree d runs from -1 (the empty face) to dim K; C^d is spanned by the
/// faces with d+1 vertices in lexicographic order.
template <class F>
class CochainComplex {
public:
    explicit CochainComplex(const Complex& K) : dim_(K.dim()) {
        faces_.resize(dim_ + 2);
        faces_[0] = {FaceSet{}};  // degree -1
        for (int k = 1; k <= dim_ + 1; ++k) faces_[k] = K.faces_with_size(k);
        delta_.resize(dim_ + 2);  // delta_[d+1] : C^d -> C^{d+1}
        for (int d = -1; d < dim_; ++d) delta_[d + 1] = build_delta(d);
    }

    int dim() const { return dim_; }
    const std::vector<FaceSet>& faces(int degree) const { return faces_[degree + 1]; }
    int space_dim(int degree) const {
        if (degree < -1 || degree > dim_) return 0;
        return static_cast<int>(faces_[degree + 1].size());
    }
    /// δ : C^degree -> C^{degree+1}; empty matrix when out of range.
    const Mat<F>& delta(int degree) const {
        static const Mat<F> empty;
        if (degree < -1 || degree >= dim_) return empty;
        return delta_[degree + 1];
    }

    int face_index(int degree, const FaceSet& s) const {
        const auto& fs = faces_[degree + 1];
        auto it = std::lower_bound(fs.begin(), fs.end(), s);
        if (it == fs.end() || *it != s) return -1;
        return static_cast<int>(it - fs.begin());
    }

private:
    Mat<F> build_delta(int d) const {
        const auto& src = faces_[d + 1];
        const auto& dst = faces_[d + 2];
        Mat<F> M(static_cast<int>(dst.size()), static_cast<int>(src.size()));
        for (std::size_t r = 0; r < dst.size(); ++r) {
            const FaceSet& tau = dst[r];
            for (int v : tau.vertices()) {
                FaceSet s = tau;
                s.erase(v);
                int c = face_index(d, s);
                if (c < 0) continue;  // cannot happen in a complex
                F sign = (tau.rank_of(v) % 2 == 0) ? FieldTraits<F>::one() : -FieldTraits<F>::one();
                M.at(static_cast<int>(r), c) = sign;
            }
        }
        return M;
    }

    int dim_;
    std::vector<std::vector<FaceSet>> faces_;
    std::vector<Mat<F>> delta_;
};

/// ranks[d+1] = rank of H̃^d(K; F) for d in [-1, dim K].
template <class F>
std::vector<int> reduced_cohomology_ranks(const Complex& K) {
    CochainComplex<F> C(K);
    std::vector<int> delta_rank(C.dim() + 2, 0);  // rank of δ^d at index d+1
    for (int d = -1; d < C.dim(); ++d) delta_rank[d + 1] = C.delta(d).rank();
    std::vector<int> ranks(C.dim() + 2, 0);
    for (int d = -1; d <= C.dim(); ++d) {
        int below = (d >= 0) ? delta_rank[d] : 0;
        int here = (d < C.dim()) ? delta_rank[d + 1] : 0;
        ranks[d + 1] = C.space_dim(d) - here - below;
    }
    return ranks;
}

inline int rank_at(const std::vector<int>& ranks, int degree) {
    int i = degree + 1;
    if (i < 0 || i >= static_cast<int>(ranks.size())) return 0;
    return ranks[i];
}

/// Chosen cocycle representatives per degree plus the projection taking any
/// cocycle to its coordinates in the representative basis. Representatives
/// are reproducible: lexicographic face order, leftmost pivoting.
template <class F>
class CohomologyBasis {
public:
    explicit CohomologyBasis(const Complex& K) : cochains_(K) {
        int top = cochains_.dim();
        reps_.resize(top + 2);
        solvers_.reserve(top + 2);
        image_rank_.resize(top + 2, 0);
        for (int d = -1; d <= top; ++d) {
            int n = cochains_.space_dim(d);
            const Mat<F>& below = cochains_.delta(d - 1);
            std::vector<std::vector<F>> image_cols;
            if (below.rows() == n && below.cols() > 0) {
                for (int c = 0; c < below.cols(); ++c) {
                    std::vector<F> col(n);
                    for (int r = 0; r < n; ++r) col[r] = below.at(r, c);
                    image_cols.push_back(std::move(col));
                }
            }
            const Mat<F>& here = cochains_.delta(d);
            std::vector<std::vector<F>> cocycles;
            if (here.rows() == 0 || here.cols() == 0) {
                // everything is a cocycle
                for (int i = 0; i < n; ++i) {
                    std::vector<F> e(n, FieldTraits<F>::zero());
                    e[i] = FieldTraits<F>::one();
                    cocycles.push_back(std::move(e));
                }
            } else {
                cocycles = here.kernel_basis();
            }
            // pass 1: pick representatives independent modulo the image
            {
                SpanSolver<F> probe(n);
                for (const auto& col : image_cols) probe.add_generator(col);
                image_rank_[d + 1] = probe.rank();
                for (const auto& z : cocycles)
                    if (probe.add_generator(z)) reps_[d + 1].push_back(z);
            }
            // pass 2: the projection solver holds image columns then reps,
            // so representative coefficients sit in a fixed tail range and
            // are unique (reps are independent modulo the image)
            SpanSolver<F> span(n);
            for (const auto& col : image_cols) span.add_generator(col);
            for (const auto& z : reps_[d + 1]) span.add_generator(z);
            solvers_.push_back(std::move(span));
        }
    }

    const CochainComplex<F>& cochains() const { return cochains_; }
    int dim() const { return cochains_.dim(); }
    int rank(int degree) const {
        int i = degree + 1;
        if (i < 0 || i >= static_cast<int>(reps_.size())) return 0;
        return static_cast<int>(reps_[i].size());
    }
    const std::vector<std::vector<F>>& representatives(int degree) const {
        return reps_[degree + 1];
    }

    /// Coordinates of the class of cocycle z in the representative basis, or
    /// nullopt if z is not in the span (i.e. not a cocycle of this complex).
    std::optional<std::vector<F>> class_coordinates(int degree, const std::vector<F>& z) const {
        int i = degree + 1;
        if (i < 0 || i >= static_cast<int>(solvers_.size())) {
            for (const F& x : z)
                if (!is_zero(x)) return std::nullopt;
            return std::vector<F>{};
        }
        auto expr = solvers_[i].express(z);
        if (!expr) return std::nullopt;
        std::vector<F> coords(reps_[i].size(), FieldTraits<F>::zero());
        int off = image_rank_offset(i);
        for (std::size_t k = 0; k < coords.size(); ++k) coords[k] = (*expr)[off + k];
        return coords;
    }

    /// A cocycle representing the class with the given coordinates.
    std::vector<F> cocycle_from_coordinates(int degree, const std::vector<F>& coords) const {
        int n = cochains_.space_dim(degree);
        std::vector<F> z(n, FieldTraits<F>::zero());
        const auto& rep = reps_[degree + 1];
        for (std::size_t k = 0; k < coords.size(); ++k)
            for (int i = 0; i < n; ++i) z[i] += coords[k] * rep[k][i];
        return z;
    }

private:
    int image_rank_offset(int i) const {
        // generators were added image-first; SpanSolver counts every
        // attempted generator, so the offset is the number of image columns
        const Mat<F>& below = cochains_.delta(i - 2);
        return below.cols();
    }

    CochainComplex<F> cochains_;
    std::vector<std::vector<std::vector<F>>> reps_;
    std::vector<SpanSolver<F>> solvers_;
    std::vector<int> image_rank_;
};

/// True iff the rank vector is that of S^d (all zero except rank 1 in degree
/// d; d = -1 matches the empty complex).
inline bool ranks_are_sphere(const std::vector<int>& ranks, int d) {
    for (int i = 0; i < static_cast<int>(ranks.size()); ++i) {
        int expect = (i == d + 1) ? 1 : 0;
        if (ranks[i] != expect) return false;
    }
    if (d + 1 >= static_cast<int>(ranks.size())) return false;
    return true;
}

/// K is a generalized F-homology n-sphere: an F-homology n-manifold (every
/// i-face link has the F-cohomology of S^{n-i-1}) with the F-cohomology of
/// S^n, n = dim K.
template <class F>
bool is_generalized_homology_sphere(const Complex& K) {
    int n = K.dim();
    if (K.m() == 0) return true;  // {∅} is the (-1)-sphere
    if (!ranks_are_sphere(reduced_cohomology_ranks<F>(K), n)) return false;
    for (int k = 1; k <= n + 1; ++k)
        for (const FaceSet& sigma : K.faces_with_size(k)) {
            Subcomplex lk = link(K, sigma);
            if (!ranks_are_sphere(reduced_cohomology_ranks<F>(lk.complex), n - k)) return false;
        }
    return true;
}

inline bool is_generalized_homology_sphere(const Complex& K, FieldTag tag) {
    return with_field(tag, [&]<class F>() { return is_generalized_homology_sphere<F>(K); });
}

struct EulerCharacteristic {
    long long unreduced;
    long long reduced;  // includes f_{-1} = 1
};

inline EulerCharacteristic euler_characteristic(const Complex& K) {
    long long chi = 0;
    std::vector<long long> f = K.f_vector();
    for (std::size_t i = 0; i < f.size(); ++i) chi += (i % 2 == 0) ? f[i] : -f[i];
    return {chi, chi - 1};
}

}  // namespace zk

#endif
