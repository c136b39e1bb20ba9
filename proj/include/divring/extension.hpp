#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divring/algebra.hpp"

namespace divring {

/// Greedy deterministic left basis of F over a subring G: start with f_0 = 1,
/// sweep F's ambient basis in index order and adjoin the first vector outside
/// the current left G-span, until the span is all of F. Each adjoin must grow
/// the k-dimension by exactly dim_k G, otherwise the module is not free over
/// G and NotFree is thrown.
inline std::vector<AlgebraElement> compute_left_basis(const AlgebraPtr& f, const Subspace& g) {
    if (g.algebra() != f) throw AlgebraMismatch();
    if (!g.is_subring()) throw NotASubring("left basis requires a subring");
    const std::size_t m = f->dim();
    const std::size_t dg = g.dim();

    std::vector<AlgebraElement> basis{AlgebraElement::unit(f)};
    std::vector<AlgebraElement> span_gens;
    auto extend_span = [&](const AlgebraElement& fi) {
        for (std::size_t t = 0; t < dg; ++t) span_gens.push_back(g.basis_vector(t) * fi);
    };
    extend_span(basis.front());
    Subspace span = Subspace::span_elements(f, span_gens);
    if (span.dim() != dg) throw NotFree("G*1 has wrong dimension");

    for (std::size_t idx = 0; idx < m && span.dim() < m; ++idx) {
        auto cand = AlgebraElement::basis_element(f, idx);
        if (span.contains(cand)) continue;
        basis.push_back(cand);
        extend_span(cand);
        span = Subspace::span_elements(f, span_gens);
        if (span.dim() != basis.size() * dg)
            throw NotFree("left span dimension is not a multiple of dim G");
    }
    if (span.dim() != m || basis.size() * dg != m)
        throw NotFree("left G-span does not exhaust the algebra");
    return basis;
}

/// The nested subspaces of an extension: L_k = left G-span of f_0..f_k,
/// S_k = { a : L_k a <= L_k }, D_0 = F and D_k = { a : L_{k-1} a <= L_k }.
/// dims_over_S[k] = dim_k D_k / dim_k S_k, the dimension of D_k as a right
/// S_k-space.
struct Ladder {
    std::vector<Subspace> L;
    std::vector<Subspace> S;
    std::vector<Subspace> D;
    std::vector<std::size_t> dims_over_S;
};

/// A division ring extension G <= F presented inside one structure-constant
/// algebra: F is the ambient algebra, G a multiplicatively closed unital
/// subspace, and f_0 = 1, f_1, ..., f_{n-1} a left basis of F over G.
///
/// The row map phi sends a to the n x n matrix over G with
/// f_i * a = sum_j phi(a)[i][j] * f_j; it is a unital ring embedding of F
/// into the n x n matrix ring over G.
class Extension {
public:
    /// Builds from generators of G (closed up via subring_closure); the left
    /// basis is computed greedily unless given explicitly, in which case it
    /// is validated (f_0 = 1, per-step freeness).
    static Extension build(const AlgebraPtr& f, const Subspace& g_carrier,
                           std::optional<std::vector<AlgebraElement>> explicit_basis = std::nullopt,
                           std::string label = {}) {
        if (!g_carrier.is_subring()) throw NotASubring("extension subring G");
        std::vector<AlgebraElement> basis;
        if (explicit_basis) {
            basis = std::move(*explicit_basis);
            validate_left_basis(f, g_carrier, basis);
        } else {
            basis = compute_left_basis(f, g_carrier);
        }
        return Extension(f, g_carrier, std::move(basis), std::move(label));
    }

    const AlgebraPtr& F() const { return f_; }
    const Subspace& G() const { return g_carrier_; }
    const SubalgebraView& G_view() const { return g_view_; }
    const AlgebraPtr& G_algebra() const { return g_view_.algebra(); }
    const std::vector<AlgebraElement>& left_basis() const { return basis_; }
    std::size_t n() const { return basis_.size(); }
    std::size_t dim_G() const { return g_carrier_.dim(); }
    const std::string& label() const { return label_; }
    const Ladder& ladder() const { return ladder_; }

    /// Unique left-G coordinates of x in the basis {f_i}: x = sum_i a_i f_i.
    /// Entries are elements of the standalone G algebra.
    std::vector<AlgebraElement> left_coordinates(const AlgebraElement& x) const {
        auto sol = solve_columns(coord_matrix_, Matrix::column(x.coords(), f_->field()));
        if (!sol) throw NotFree("left coordinates do not exist");  // cannot happen for a valid extension
        return collect_g_rows(sol->col(0));
    }

    /// phi(a): row i holds the left-G coordinates of f_i * a.
    std::vector<std::vector<AlgebraElement>> phi(const AlgebraElement& a) const {
        if (a.algebra() != f_) throw AlgebraMismatch();
        const std::size_t m = f_->dim();
        Matrix rhs(f_->field(), m, n());
        for (std::size_t i = 0; i < n(); ++i) {
            auto prod = basis_[i] * a;
            for (std::size_t r = 0; r < m; ++r) rhs.at(r, i) = prod.coord(r);
        }
        auto sol = solve_columns(coord_matrix_, rhs);
        if (!sol) throw NotFree("phi coordinates do not exist");
        std::vector<std::vector<AlgebraElement>> grid;
        grid.reserve(n());
        for (std::size_t i = 0; i < n(); ++i) grid.push_back(collect_g_rows(sol->col(i)));
        return grid;
    }

    /// phi(a) flattened to k-coordinates, entry (i,j) block-major:
    /// index ((i*n + j)*dim_G + t).
    std::vector<Scalar> phi_flat(const AlgebraElement& a) const {
        auto grid = phi(a);
        std::vector<Scalar> flat;
        flat.reserve(n() * n() * dim_G());
        for (const auto& row : grid)
            for (const auto& entry : row)
                for (const auto& c : entry.coords()) flat.push_back(c);
        return flat;
    }

    /// Columns = phi_flat of F's ambient basis vectors; the whole embedding
    /// as one k-linear map.
    const Matrix& phi_matrix() const { return phi_matrix_; }

private:
    Extension(AlgebraPtr f, Subspace g_carrier, std::vector<AlgebraElement> basis,
              std::string label)
        : f_(std::move(f)),
          g_carrier_(std::move(g_carrier)),
          g_view_(SubalgebraView::from_subring(g_carrier_, label.empty() ? "G" : label + ".G")),
          basis_(std::move(basis)),
          label_(std::move(label)),
          coord_matrix_(build_coord_matrix()),
          phi_matrix_(build_phi_matrix()),
          ladder_(build_ladder()) {}

    static void validate_left_basis(const AlgebraPtr& f, const Subspace& g,
                                    const std::vector<AlgebraElement>& basis) {
        if (basis.empty()) throw ValidationError("left basis is empty");
        if (basis.front() != AlgebraElement::unit(f))
            throw ValidationError("left basis must start with f_0 = 1");
        const std::size_t dg = g.dim();
        std::vector<AlgebraElement> gens;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (basis[i].algebra() != f) throw AlgebraMismatch();
            for (std::size_t t = 0; t < dg; ++t) gens.push_back(g.basis_vector(t) * basis[i]);
            if (Subspace::span_elements(f, gens).dim() != (i + 1) * dg)
                throw NotFree("explicit left basis is not free over G");
        }
        if (basis.size() * dg != f->dim())
            throw NotFree("explicit left basis does not span F over G");
    }

    Matrix build_coord_matrix() const {
        const std::size_t m = f_->dim();
        const std::size_t dg = g_carrier_.dim();
        Matrix c(f_->field(), m, n() * dg);
        for (std::size_t i = 0; i < n(); ++i)
            for (std::size_t t = 0; t < dg; ++t) {
                auto v = g_carrier_.basis_vector(t) * basis_[i];
                for (std::size_t r = 0; r < m; ++r) c.at(r, i * dg + t) = v.coord(r);
            }
        return c;
    }

    std::vector<AlgebraElement> collect_g_rows(const std::vector<Scalar>& lambda) const {
        const std::size_t dg = g_carrier_.dim();
        std::vector<AlgebraElement> out;
        out.reserve(n());
        for (std::size_t i = 0; i < n(); ++i) {
            std::vector<Scalar> coords(lambda.begin() + static_cast<std::ptrdiff_t>(i * dg),
                                       lambda.begin() + static_cast<std::ptrdiff_t>((i + 1) * dg));
            out.emplace_back(g_view_.algebra(), std::move(coords));
        }
        return out;
    }

    Matrix build_phi_matrix() const {
        const std::size_t m = f_->dim();
        Matrix out(f_->field(), n() * n() * dim_G(), m);
        for (std::size_t s = 0; s < m; ++s) {
            auto flat = phi_flat(AlgebraElement::basis_element(f_, s));
            for (std::size_t r = 0; r < flat.size(); ++r) out.at(r, s) = flat[r];
        }
        return out;
    }

    /// Solution space of the block-vanishing conditions on phi images:
    /// S_k kills rows {(i,j) : i <= k, j > k}, D_k rows {(i,j) : i < k, j > k}.
    Subspace block_vanishing_space(std::size_t row_bound, std::size_t col_low) const {
        const std::size_t m = f_->dim();
        const std::size_t dg = dim_G();
        std::vector<std::vector<Scalar>> rows;
        for (std::size_t i = 0; i < row_bound; ++i)
            for (std::size_t j = col_low; j < n(); ++j)
                for (std::size_t t = 0; t < dg; ++t)
                    rows.push_back(phi_matrix_.row(((i * n() + j) * dg) + t));
        Matrix cond = Matrix::from_rows(f_->field(), m, rows);
        auto rn = rank_nullspace(cond);
        std::vector<std::vector<Scalar>> vecs;
        vecs.reserve(rn.nullspace.size());
        for (const auto& v : rn.nullspace) vecs.push_back(v.col(0));
        return Subspace::span(f_, vecs);
    }

    Ladder build_ladder() const {
        Ladder lad;
        const std::size_t dg = dim_G();
        std::vector<AlgebraElement> gens;
        for (std::size_t k = 0; k < n(); ++k) {
            for (std::size_t t = 0; t < dg; ++t) gens.push_back(g_carrier_.basis_vector(t) * basis_[k]);
            lad.L.push_back(Subspace::span_elements(f_, gens));
            if (lad.L.back().dim() != (k + 1) * dg)
                throw ValidationError("ladder L_k dimension mismatch");
            lad.S.push_back(block_vanishing_space(k + 1, k + 1));
            lad.D.push_back(k == 0 ? Subspace::whole(f_) : block_vanishing_space(k, k + 1));
        }
        if (lad.L.back() != Subspace::whole(f_)) throw ValidationError("L_{n-1} != F");
        if (lad.S.front() != g_carrier_) throw ValidationError("S_0 != G");
        if (lad.S.back() != Subspace::whole(f_) || lad.D.back() != Subspace::whole(f_))
            throw ValidationError("S_{n-1} or D_{n-1} != F");
        for (std::size_t k = 0; k < n(); ++k) {
            if (!lad.D[k].contains(lad.S[k])) throw ValidationError("S_k not contained in D_k");
            if (lad.S[k].dim() == 0 || lad.D[k].dim() % lad.S[k].dim() != 0)
                throw ValidationError("dim D_k not divisible by dim S_k");
            lad.dims_over_S.push_back(lad.D[k].dim() / lad.S[k].dim());
        }
        return lad;
    }

    AlgebraPtr f_;
    Subspace g_carrier_;
    SubalgebraView g_view_;
    std::vector<AlgebraElement> basis_;
    std::string label_;
    Matrix coord_matrix_;  // columns g_t * f_i, the left-coordinate system
    Matrix phi_matrix_;
    Ladder ladder_;
};

inline Ladder compute_ladder(const Extension& e) { return e.ladder(); }

/// Checks L_{k-1} + f_k * S_{k-1} = F and, when it holds, decomposes any
/// f as a + f_k * b with a in L_{k-1} and b in S_{k-1}.
class LemmaRegularCheck {
public:
    LemmaRegularCheck(const Extension& e, std::size_t k)
        : f_(e.F()), fk_(e.left_basis().at(check_k(e, k))), lprev_(e.ladder().L[k - 1]),
          sprev_(e.ladder().S[k - 1]), columns_(build_columns(e, k)) {
        holds_ = (rank(columns_) == f_->dim());
    }

    /// The basis element whose right S_{k-1}-multiples complete L_{k-1}.
    const AlgebraElement& f_k() const { return fk_; }

    bool holds() const { return holds_; }

    struct Decomposition {
        AlgebraElement a;  // in L_{k-1}
        AlgebraElement b;  // in S_{k-1}
    };

    Decomposition decompose(const AlgebraElement& f) const {
        if (!holds_) throw ValidationError("decomposition sampler requires the span to be all of F");
        if (f.algebra() != f_) throw AlgebraMismatch();
        auto sol = solve_columns(columns_, Matrix::column(f.coords(), f_->field()));
        if (!sol) throw ValidationError("decomposition solve failed");
        auto lambda = sol->col(0);
        std::vector<Scalar> a_coeffs(lambda.begin(),
                                     lambda.begin() + static_cast<std::ptrdiff_t>(lprev_.dim()));
        std::vector<Scalar> b_coeffs(lambda.begin() + static_cast<std::ptrdiff_t>(lprev_.dim()),
                                     lambda.end());
        return Decomposition{lprev_.combine(a_coeffs), sprev_.combine(b_coeffs)};
    }

private:
    static std::size_t check_k(const Extension& e, std::size_t k) {
        if (k < 1 || k >= e.n()) throw IndexOutOfRange("lemma_regular_check needs 1 <= k <= n-1");
        return k;
    }

    static Matrix build_columns(const Extension& e, std::size_t k) {
        const auto& lprev = e.ladder().L[k - 1];
        const auto& sprev = e.ladder().S[k - 1];
        std::vector<std::vector<Scalar>> cols;
        for (std::size_t r = 0; r < lprev.dim(); ++r) cols.push_back(lprev.basis_vector(r).coords());
        for (std::size_t r = 0; r < sprev.dim(); ++r)
            cols.push_back((e.left_basis()[k] * sprev.basis_vector(r)).coords());
        return Matrix::from_columns(e.F()->field(), e.F()->dim(), cols);
    }

    AlgebraPtr f_;
    AlgebraElement fk_;
    Subspace lprev_;
    Subspace sprev_;
    Matrix columns_;
    bool holds_ = false;
};

inline bool lemma_regular_check(const Extension& e, std::size_t k) {
    return LemmaRegularCheck(e, k).holds();
}

/// An element a with H1 * a = H2, for left G-subspaces of equal dimension.
/// The set { a : H1 a <= H2 } is a k-subspace; any nonzero member works,
/// since right multiplication by a nonzero element of a division ring is
/// injective and dimensions agree. Returns nullopt when that space is zero.
inline std::optional<AlgebraElement> transporter(const Extension& e, const Subspace& h1,
                                                 const Subspace& h2) {
    const auto& f = e.F();
    if (h1.algebra() != f || h2.algebra() != f) throw AlgebraMismatch();
    for (const Subspace* h : {&h1, &h2})
        for (std::size_t t = 0; t < e.dim_G(); ++t)
            for (std::size_t r = 0; r < h->dim(); ++r)
                if (!h->contains(e.G().basis_vector(t) * h->basis_vector(r)))
                    throw NotLeftSubmodule("transporter argument is not a left G-subspace");
    if (h1.dim() != h2.dim()) throw DimensionMismatch("transporter needs equal dimensions");
    if (h1.dim() == 0) throw DimensionMismatch("transporter needs nonzero subspaces");

    // rows annihilating H2: x in H2  <=>  K x = 0
    auto ann = rank_nullspace(h2.basis_matrix());
    std::vector<std::vector<Scalar>> cond_rows;
    for (std::size_t r = 0; r < h1.dim(); ++r) {
        Matrix lv = left_regular_rep(h1.basis_vector(r));
        for (const auto& y : ann.nullspace) {
            // row = y^T * L_v
            std::vector<Scalar> row(f->dim(), Scalar::zero(f->field()));
            for (std::size_t j = 0; j < f->dim(); ++j)
                for (std::size_t i = 0; i < f->dim(); ++i) row[j] += y.at(i, 0) * lv.at(i, j);
            cond_rows.push_back(std::move(row));
        }
    }
    Matrix cond = Matrix::from_rows(f->field(), f->dim(), cond_rows);
    auto rn = rank_nullspace(cond);
    if (rn.nullspace.empty()) return std::nullopt;
    // canonicalize the solution space so the representative is echelon-led
    std::vector<std::vector<Scalar>> vecs;
    for (const auto& v : rn.nullspace) vecs.push_back(v.col(0));
    return Subspace::span(f, vecs).basis_vector(0);
}

/// The dimension vectors (1,0),(2,1),...,(n,n-1),(1,1),(0,1): one per
/// indecomposable in the rank-2 pattern attached to an extension of left
/// dimension n. Always n+2 vectors.
inline std::vector<std::pair<std::size_t, std::size_t>> coxeter_catalog(std::size_t n) {
    if (n < 2) throw IndexOutOfRange("coxeter_catalog needs n >= 2");
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(n + 2);
    for (std::size_t i = 1; i <= n; ++i) out.emplace_back(i, i - 1);
    out.emplace_back(1, 1);
    out.emplace_back(0, 1);
    return out;
}

}  // namespace divring
