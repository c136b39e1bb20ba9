#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "divring/scalars.hpp"

namespace divring {

/// Dense exact matrix over one ground field, row-major.
class Matrix {
public:
    Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(field)) {}

    static Matrix zeros(const FieldSpec& f, std::size_t rows, std::size_t cols) {
        return Matrix(f, rows, cols);
    }

    static Matrix identity(const FieldSpec& f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }

    static Matrix column(const std::vector<Scalar>& v, const FieldSpec& f) {
        Matrix m(f, v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
        return m;
    }

    /// Builds a matrix whose columns are the given coordinate vectors.
    static Matrix from_columns(const FieldSpec& f, std::size_t rows,
                               const std::vector<std::vector<Scalar>>& cols) {
        Matrix m(f, rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows) throw ShapeMismatch("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    static Matrix from_rows(const FieldSpec& f, std::size_t cols,
                            const std::vector<std::vector<Scalar>>& rows) {
        Matrix m(f, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw ShapeMismatch("row length mismatch");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::vector<Scalar> row(std::size_t i) const {
        std::vector<Scalar> r;
        r.reserve(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r.push_back(at(i, j));
        return r;
    }

    std::vector<Scalar> col(std::size_t j) const {
        std::vector<Scalar> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back(at(i, j));
        return c;
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (field_ != o.field_) throw FieldMismatch("matrix product over different fields");
        if (cols_ != o.rows_) throw ShapeMismatch("matrix product shape mismatch");
        Matrix r(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Scalar& a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(*this);
        for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] += o.entries_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o);
        Matrix r(*this);
        for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] -= o.entries_[i];
        return r;
    }

    Matrix scaled(const Scalar& s) const {
        Matrix r(*this);
        for (auto& e : r.entries_) e *= s;
        return r;
    }

    bool operator==(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_) return false;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i] != o.entries_[i]) return false;
        return true;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    void require_same_shape(const Matrix& o) const {
        if (field_ != o.field_) throw FieldMismatch();
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch();
    }

    FieldSpec field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> entries_;
};

/// Reduced row echelon form. Pivots are chosen as the first nonzero entry in
/// column order, so the result (and every basis derived from it) is canonical.
struct Rref {
    Matrix mat;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

/// Row-reduces `m`, allowing pivots only in columns < pivot_limit (row
/// operations still apply to the full width, so trailing columns may be
/// carried as augmented right-hand sides).
inline Rref reduced_row_echelon(Matrix m, std::size_t pivot_limit) {
    const std::size_t rows = m.rows();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_limit && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!m.at(i, c).is_zero()) {
                sel = i;
                break;
            }
        if (sel == rows) continue;
        if (sel != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
        Scalar piv_inv = m.at(r, c).inv();
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) *= piv_inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar factor = m.at(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m.at(i, j) -= factor * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return Rref{std::move(m), std::move(pivots), r};
}

inline Rref reduced_row_echelon(const Matrix& m) {
    return reduced_row_echelon(m, m.cols());
}

namespace detail {

/// Nullspace basis from an RREF: one vector per free column j (ascending),
/// with -1 in position j and the RREF column above the pivots. Exact:
/// A v = 0 for each emitted v.
inline std::vector<Matrix> nullspace_from_rref(const Rref& rr, std::size_t ncols) {
    const FieldSpec& f = rr.mat.field();
    std::vector<bool> is_pivot(ncols, false);
    for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<Matrix> basis;
    for (std::size_t j = 0; j < ncols; ++j) {
        if (is_pivot[j]) continue;
        Matrix v(f, ncols, 1);
        v.at(j, 0) = -Scalar::one(f);
        for (std::size_t r = 0; r < rr.rank; ++r) v.at(rr.pivot_cols[r], 0) = rr.mat.at(r, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace detail

struct RankNullspace {
    std::size_t rank = 0;
    std::vector<Matrix> nullspace;  // column vectors, canonical order
};

inline RankNullspace rank_nullspace(const Matrix& a) {
    Rref rr = reduced_row_echelon(a);
    RankNullspace out;
    out.rank = rr.rank;
    out.nullspace = detail::nullspace_from_rref(rr, a.cols());
    return out;
}

inline std::size_t rank(const Matrix& a) { return reduced_row_echelon(a).rank; }

/// Particular solution plus homogeneous nullspace basis; solvable == false
/// exactly when b is outside the column space of A.
struct SolveResult {
    bool solvable = false;
    Matrix particular;
    std::vector<Matrix> nullspace;
};

inline SolveResult solve_linear(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw FieldMismatch("solve_linear over different fields");
    if (b.cols() != 1 || b.rows() != a.rows()) throw ShapeMismatch("solve_linear rhs shape");
    Matrix aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b.at(i, 0);
    }
    Rref rr = reduced_row_echelon(std::move(aug), a.cols());
    SolveResult out{false, Matrix::zeros(a.field(), a.cols(), 1), {}};
    for (std::size_t i = rr.rank; i < a.rows(); ++i)
        if (!rr.mat.at(i, a.cols()).is_zero()) {
            out.nullspace = detail::nullspace_from_rref(rr, a.cols());
            return out;  // inconsistent row 0 = nonzero
        }
    out.solvable = true;
    for (std::size_t r = 0; r < rr.rank; ++r)
        out.particular.at(rr.pivot_cols[r], 0) = rr.mat.at(r, a.cols());
    out.nullspace = detail::nullspace_from_rref(rr, a.cols());
    return out;
}

/// A subspace of k^width in canonical form: basis rows are the RREF of any
/// spanning set, so equal spaces compare equal as matrices.
class RowSpace {
public:
    static RowSpace span(const FieldSpec& f, std::size_t width,
                         const std::vector<std::vector<Scalar>>& vectors) {
        Rref rr = reduced_row_echelon(Matrix::from_rows(f, width, vectors));
        Matrix basis(f, rr.rank, width);
        for (std::size_t i = 0; i < rr.rank; ++i)
            for (std::size_t j = 0; j < width; ++j) basis.at(i, j) = rr.mat.at(i, j);
        return RowSpace(std::move(basis), std::move(rr.pivot_cols));
    }

    std::size_t dim() const { return basis_.rows(); }
    std::size_t width() const { return basis_.cols(); }
    const Matrix& basis_matrix() const { return basis_; }
    std::vector<Scalar> basis_row(std::size_t i) const { return basis_.row(i); }

    /// Coordinates of v in the canonical basis, or nullopt when v is outside.
    std::optional<std::vector<Scalar>> coordinates(std::vector<Scalar> v) const {
        if (v.size() != width()) throw ShapeMismatch("row space membership width");
        std::vector<Scalar> coeffs(dim(), Scalar::zero(basis_.field()));
        for (std::size_t r = 0; r < dim(); ++r) {
            const Scalar c = v[pivot_cols_[r]];
            if (c.is_zero()) continue;
            coeffs[r] = c;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= c * basis_.at(r, j);
        }
        for (const auto& x : v)
            if (!x.is_zero()) return std::nullopt;
        return coeffs;
    }

    bool contains(const std::vector<Scalar>& v) const { return coordinates(v).has_value(); }

    bool operator==(const RowSpace& o) const { return basis_ == o.basis_; }
    bool operator!=(const RowSpace& o) const { return !(*this == o); }

private:
    RowSpace(Matrix basis, std::vector<std::size_t> pivots)
        : basis_(std::move(basis)), pivot_cols_(std::move(pivots)) {}

    Matrix basis_;
    std::vector<std::size_t> pivot_cols_;
};

/// Solves A X = B for all columns at once; nullopt if any column is
/// unsolvable. Free variables are set to zero, as in solve_linear.
inline std::optional<Matrix> solve_columns(const Matrix& a, const Matrix& b) {
    if (a.field() != b.field()) throw FieldMismatch();
    if (b.rows() != a.rows()) throw ShapeMismatch("solve_columns rhs shape");
    Matrix aug(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) aug.at(i, a.cols() + j) = b.at(i, j);
    }
    Rref rr = reduced_row_echelon(std::move(aug), a.cols());
    for (std::size_t i = rr.rank; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (!rr.mat.at(i, a.cols() + j).is_zero()) return std::nullopt;
    Matrix x(a.field(), a.cols(), b.cols());
    for (std::size_t r = 0; r < rr.rank; ++r)
        for (std::size_t j = 0; j < b.cols(); ++j)
            x.at(rr.pivot_cols[r], j) = rr.mat.at(r, a.cols() + j);
    return x;
}

}  // namespace divring
