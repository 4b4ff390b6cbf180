#ifndef ZK_LINALG_HPP
#define ZK_LINALG_HPP

#include <optional>
#include <vector>

#include "zk/fields.hpp"

namespace zk {

/// Dense row-major matrix over a field. Sized for exact desk-scale
/// elimination; no attempt at cache blocking.
template <class F>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, FieldTraits<F>::zero()) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    F& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
    const F& at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }
    F* row(int r) { return a_.data() + std::size_t(r) * cols_; }
    const F* row(int r) const { return a_.data() + std::size_t(r) * cols_; }

    /// Reduce to row echelon form in place (leftmost pivots, rows swapped
    /// deterministically). Returns pivot column per echelon row.
    std::vector<int> echelonize() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int p = -1;
            for (int i = r; i < rows_; ++i)
                if (!is_zero(at(i, c))) { p = i; break; }
            if (p < 0) continue;
            if (p != r)
                for (int j = c; j < cols_; ++j) std::swap(at(p, j), at(r, j));
            F inv = FieldTraits<F>::one() / at(r, c);
            for (int j = c; j < cols_; ++j) at(r, j) *= inv;
            for (int i = 0; i < rows_; ++i) {
                if (i == r || is_zero(at(i, c))) continue;
                F f = at(i, c);
                for (int j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    int rank() const {
        Mat copy = *this;
        return static_cast<int>(copy.echelonize().size());
    }

    /// Basis of {x : A x = 0} as column vectors.
    std::vector<std::vector<F>> kernel_basis() const {
        Mat e = *this;
        std::vector<int> piv = e.echelonize();
        std::vector<bool> is_pivot(cols_, false);
        for (int c : piv) is_pivot[c] = true;
        std::vector<std::vector<F>> basis;
        for (int c = 0; c < cols_; ++c) {
            if (is_pivot[c]) continue;
            std::vector<F> x(cols_, FieldTraits<F>::zero());
            x[c] = FieldTraits<F>::one();
            for (std::size_t r = 0; r < piv.size(); ++r)
                x[piv[r]] = -e.at(static_cast<int>(r), c);
            basis.push_back(std::move(x));
        }
        return basis;
    }

private:
    int rows_, cols_;
    std::vector<F> a_;
};

/// Incremental span of vectors with membership / coordinate queries.
/// Keeps an echelonized copy of the generators together with the
/// combination that produced each echelon row, so express() can return
/// coordinates in terms of the original generator sequence.
template <class F>
class SpanSolver {
public:
    explicit SpanSolver(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    int generator_count() const { return ngen_; }

    /// Returns true if the vector enlarged the span.
    bool add_generator(const std::vector<F>& v) {
        std::vector<F> w = v;
        std::vector<F> combo(ngen_ + 1, FieldTraits<F>::zero());
        combo[ngen_] = FieldTraits<F>::one();
        ++ngen_;
        for (auto& c : combos_) c.resize(ngen_, FieldTraits<F>::zero());
        reduce(w, combo);
        int lead = leading(w);
        if (lead < 0) return false;
        F inv = FieldTraits<F>::one() / w[lead];
        for (auto& x : w) x *= inv;
        for (auto& x : combo) x *= inv;
        rows_.push_back(std::move(w));
        combos_.push_back(std::move(combo));
        leads_.push_back(lead);
        return true;
    }

    bool contains(const std::vector<F>& v) const {
        std::vector<F> w = v;
        std::vector<F> combo(ngen_, FieldTraits<F>::zero());
        reduce(w, combo);
        return leading(w) < 0;
    }

    /// Coordinates x (over the generators, in insertion order) with
    /// sum_i x_i g_i = v, or nullopt if v is outside the span.
    std::optional<std::vector<F>> express(const std::vector<F>& v) const {
        std::vector<F> w = v;
        std::vector<F> combo(ngen_, FieldTraits<F>::zero());
        reduce(w, combo);
        if (leading(w) >= 0) return std::nullopt;
        for (auto& x : combo) x = -x;
        return combo;
    }

private:
    int leading(const std::vector<F>& w) const {
        for (int i = 0; i < dim_; ++i)
            if (!is_zero(w[i])) return i;
        return -1;
    }
    // w := w - (combination of echelon rows); combo accumulates the
    // generator coordinates of what was subtracted, negated on exit path.
    void reduce(std::vector<F>& w, std::vector<F>& combo) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            F f = w[leads_[r]];
            if (is_zero(f)) continue;
            const auto& row = rows_[r];
            for (int i = leads_[r]; i < dim_; ++i) w[i] -= f * row[i];
            const auto& rc = combos_[r];
            for (std::size_t i = 0; i < rc.size() && i < combo.size(); ++i) combo[i] -= f * rc[i];
        }
    }

    int dim_;
    int ngen_ = 0;
    std::vector<std::vector<F>> rows_;
    std::vector<std::vector<F>> combos_;
    std::vector<int> leads_;
};

/// One solution of A x = b, or nullopt if inconsistent.
template <class F>
std::optional<std::vector<F>> solve(const Mat<F>& A, const std::vector<F>& b) {
    Mat<F> aug(A.rows(), A.cols() + 1);
    for (int r = 0; r < A.rows(); ++r) {
        for (int c = 0; c < A.cols(); ++c) aug.at(r, c) = A.at(r, c);
        aug.at(r, A.cols()) = b[r];
    }
    std::vector<int> piv = aug.echelonize();
    for (int c : piv)
        if (c == A.cols()) return std::nullopt;
    std::vector<F> x(A.cols(), FieldTraits<F>::zero());
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(static_cast<int>(r), A.cols());
    return x;
}

}  // namespace zk

#endif
