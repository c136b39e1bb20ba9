#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divring/extension.hpp"

namespace divring {

/// An n x n matrix with entries in a structure-constant algebra.
class RingMatrix {
public:
    RingMatrix(AlgebraPtr ring, std::size_t n)
        : ring_(std::move(ring)), n_(n), entries_(n * n, AlgebraElement::zero(ring_)) {}

    static RingMatrix identity(const AlgebraPtr& ring, std::size_t n) {
        RingMatrix m(ring, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = AlgebraElement::unit(ring);
        return m;
    }

    static RingMatrix unit(const AlgebraPtr& ring, std::size_t n, std::size_t i, std::size_t j) {
        if (i >= n || j >= n) throw IndexOutOfRange("matrix unit index");
        RingMatrix m(ring, n);
        m.at(i, j) = AlgebraElement::unit(ring);
        return m;
    }

    const AlgebraPtr& ring() const { return ring_; }
    std::size_t n() const { return n_; }

    AlgebraElement& at(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const AlgebraElement& at(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

    RingMatrix operator*(const RingMatrix& o) const {
        require_same(o);
        RingMatrix r(ring_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < n_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < n_; ++j)
                    r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
            }
        return r;
    }

    RingMatrix operator+(const RingMatrix& o) const {
        require_same(o);
        RingMatrix r(ring_, n_);
        for (std::size_t i = 0; i < entries_.size(); ++i)
            r.entries_[i] = entries_[i] + o.entries_[i];
        return r;
    }

    RingMatrix scaled(const Scalar& s) const {
        RingMatrix r(*this);
        for (auto& e : r.entries_) e = e.scaled(s);
        return r;
    }

    bool operator==(const RingMatrix& o) const {
        return ring_ == o.ring_ && n_ == o.n_ && entries_ == o.entries_;
    }
    bool operator!=(const RingMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    /// k-coordinates, entry (i,j) block-major (same layout as phi_flat).
    std::vector<Scalar> flatten() const {
        std::vector<Scalar> flat;
        flat.reserve(entries_.size() * ring_->dim());
        for (const auto& e : entries_)
            for (const auto& c : e.coords()) flat.push_back(c);
        return flat;
    }

private:
    void require_same(const RingMatrix& o) const {
        if (ring_ != o.ring_) throw AlgebraMismatch();
        if (n_ != o.n_) throw ShapeMismatch();
    }

    AlgebraPtr ring_;
    std::size_t n_;
    std::vector<AlgebraElement> entries_;
};

/// The upper-right a x b corner of an n x n matrix, a + b = n + 1. The block
/// overlaps the diagonal: rows 0..a-1, columns a-1..n-1.
struct CornerBlock {
    std::size_t a = 0;
    std::size_t b = 0;
    std::vector<AlgebraElement> entries;  // row-major, a*b entries over G

    const AlgebraElement& at(std::size_t i, std::size_t j) const { return entries[i * b + j]; }

    std::vector<Scalar> flatten() const {
        std::vector<Scalar> flat;
        for (const auto& e : entries)
            for (const auto& c : e.coords()) flat.push_back(c);
        return flat;
    }
};

inline CornerBlock corner_block(const RingMatrix& m, std::size_t a) {
    if (a < 1 || a > m.n()) throw IndexOutOfRange("corner block needs 1 <= a <= n");
    const std::size_t b = m.n() + 1 - a;
    CornerBlock block{a, b, {}};
    block.entries.reserve(a * b);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = a - 1; j < m.n(); ++j) block.entries.push_back(m.at(i, j));
    return block;
}

struct TightVerdict {
    std::size_t a = 0;
    bool tight = false;
    std::size_t rank = 0;
    std::size_t required_rank = 0;
};

struct TightReport {
    bool tight = false;
    std::vector<TightVerdict> per_a;
};

/// A division subring of the n x n matrix ring over G, spanned over k by
/// image_basis, with the standard matrix units understood. Construction
/// checks independence, closure, the identity, and probes the division
/// property of the spanned subring; a zero-divisor certificate aborts.
class EmbeddingModel {
public:
    static EmbeddingModel build(AlgebraPtr g, std::size_t n, std::vector<RingMatrix> image_basis,
                                std::uint64_t seed = 0, int trials = 64, std::string label = {}) {
        if (n < 1) throw ValidationError("embedding needs n >= 1");
        if (image_basis.empty()) throw ValidationError("embedding needs a nonempty image basis");
        for (const auto& m : image_basis)
            if (m.ring() != g || m.n() != n)
                throw ValidationError("image basis entries must be n x n over G");

        const std::size_t width = n * n * g->dim();
        std::vector<std::vector<Scalar>> flat;
        flat.reserve(image_basis.size());
        for (const auto& m : image_basis) flat.push_back(m.flatten());
        RowSpace span = RowSpace::span(g->field(), width, flat);
        if (span.dim() != image_basis.size())
            throw ValidationError("image basis is linearly dependent");
        if (!span.contains(RingMatrix::identity(g, n).flatten()))
            throw ValidationError("image does not contain the identity matrix");

        // structure constants of the spanned subring, in image_basis coordinates
        const std::size_t d = image_basis.size();
        Matrix basis_cols(g->field(), width, d);
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t r = 0; r < width; ++r) basis_cols.at(r, j) = flat[j][r];
        std::vector<std::vector<Scalar>> table(d * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                auto prod = (image_basis[i] * image_basis[j]).flatten();
                auto sol = solve_columns(basis_cols, Matrix::column(prod, g->field()));
                if (!sol)
                    throw ValidationError("image not closed under multiplication at pair (" +
                                          std::to_string(i) + "," + std::to_string(j) + ")");
                table[i * d + j] = sol->col(0);
            }
        auto unit_sol =
            solve_columns(basis_cols, Matrix::column(RingMatrix::identity(g, n).flatten(), g->field()));
        std::vector<std::string> names;
        for (std::size_t i = 0; i < d; ++i) names.push_back("m" + std::to_string(i));
        auto fhat = Algebra::create_verified(g->field(), std::move(names), std::move(table),
                                             unit_sol->col(0),
                                             label.empty() ? "image" : label + ".image");

        auto probe = division_probe(fhat, seed, trials);
        if (probe.certified_not_division)
            throw ValidationError("image subring certified not a division ring: witness " +
                                  probe.witness->to_string() + " with zero divisor " +
                                  probe.certificate->to_string());
        auto g_probe = division_probe(g, seed, trials);
        if (g_probe.certified_not_division)
            throw ValidationError("coefficient ring certified not a division ring: witness " +
                                  g_probe.witness->to_string() + " with zero divisor " +
                                  g_probe.certificate->to_string());

        return EmbeddingModel(std::move(g), n, std::move(image_basis), std::move(span),
                              std::move(basis_cols), std::move(fhat), std::move(label));
    }

    const AlgebraPtr& G() const { return g_; }
    std::size_t n() const { return n_; }
    const std::vector<RingMatrix>& image_basis() const { return image_basis_; }
    std::size_t dim_image() const { return image_basis_.size(); }
    const std::string& label() const { return label_; }

    /// The image subring as an abstract structure-constant algebra with
    /// basis image_basis.
    const AlgebraPtr& image_algebra() const { return fhat_; }

    const RowSpace& image_span() const { return span_; }

    RingMatrix grid_of(const AlgebraElement& fhat_elt) const {
        if (fhat_elt.algebra() != fhat_) throw AlgebraMismatch();
        RingMatrix out(g_, n_);
        for (std::size_t i = 0; i < dim_image(); ++i)
            if (!fhat_elt.coord(i).is_zero())
                out = out + image_basis_[i].scaled(fhat_elt.coord(i));
        return out;
    }

    std::optional<AlgebraElement> image_coordinates(const RingMatrix& m) const {
        if (m.ring() != g_ || m.n() != n_) throw AlgebraMismatch();
        auto sol = solve_columns(basis_cols_, Matrix::column(m.flatten(), g_->field()));
        if (!sol) return std::nullopt;
        return AlgebraElement(fhat_, sol->col(0));
    }

    /// The corner-block map for this a, as one k-matrix: column t is the
    /// flattened a x b block of image_basis[t].
    const Matrix& block_map(std::size_t a) const {
        if (a < 1 || a > n_) throw IndexOutOfRange("block map needs 1 <= a <= n");
        return block_maps_[a - 1];
    }

private:
    EmbeddingModel(AlgebraPtr g, std::size_t n, std::vector<RingMatrix> image_basis, RowSpace span,
                   Matrix basis_cols, AlgebraPtr fhat, std::string label)
        : g_(std::move(g)),
          n_(n),
          image_basis_(std::move(image_basis)),
          span_(std::move(span)),
          basis_cols_(std::move(basis_cols)),
          fhat_(std::move(fhat)),
          label_(std::move(label)) {
        for (std::size_t a = 1; a <= n_; ++a) {
            const std::size_t b = n_ + 1 - a;
            Matrix bm(g_->field(), a * b * g_->dim(), dim_image());
            for (std::size_t t = 0; t < dim_image(); ++t) {
                auto flat = corner_block(image_basis_[t], a).flatten();
                for (std::size_t r = 0; r < flat.size(); ++r) bm.at(r, t) = flat[r];
            }
            block_maps_.push_back(std::move(bm));
        }
    }

    AlgebraPtr g_;
    std::size_t n_;
    std::vector<RingMatrix> image_basis_;
    RowSpace span_;
    Matrix basis_cols_;
    AlgebraPtr fhat_;
    std::string label_;
    std::vector<Matrix> block_maps_;  // index a-1
};

/// a-tightness as k-linear surjectivity of the corner-block map. Uniqueness
/// of preimages never needs testing: two preimages would differ by a nonzero
/// singular matrix, impossible in a division subring.
inline TightVerdict is_a_tight(const EmbeddingModel& e, std::size_t a) {
    const std::size_t b = e.n() + 1 - a;
    const Matrix& bm = e.block_map(a);
    TightVerdict v;
    v.a = a;
    v.required_rank = a * b * e.G()->dim();
    v.rank = rank(bm);
    v.tight = (v.rank == v.required_rank);
    return v;
}

inline TightReport is_tight(const EmbeddingModel& e) {
    TightReport rep;
    rep.tight = true;
    for (std::size_t a = 1; a <= e.n(); ++a) {
        rep.per_a.push_back(is_a_tight(e, a));
        rep.tight = rep.tight && rep.per_a.back().tight;
    }
    return rep;
}

/// The unique image element whose a x b corner block is the given one, or
/// the linear obstruction: a functional (coefficients over the flattened
/// block space) vanishing on every image block but not on this one.
struct BlockSolve {
    std::optional<AlgebraElement> element;  // in image_algebra coordinates
    std::optional<RingMatrix> grid;
    std::optional<std::vector<Scalar>> obstruction;
    bool solved() const { return element.has_value(); }
};

inline BlockSolve solve_for_block(const EmbeddingModel& e, std::size_t a,
                                  const CornerBlock& block) {
    if (a < 1 || a > e.n()) throw IndexOutOfRange("solve_for_block needs 1 <= a <= n");
    const std::size_t b = e.n() + 1 - a;
    if (block.a != a || block.b != b || block.entries.size() != a * b)
        throw ShapeMismatch("corner block has wrong shape");
    for (const auto& entry : block.entries)
        if (entry.algebra() != e.G()) throw AlgebraMismatch();

    const Matrix& bm = e.block_map(a);
    auto target = block.flatten();
    auto sol = solve_linear(bm, Matrix::column(target, e.G()->field()));
    BlockSolve out;
    if (sol.solvable) {
        out.element = AlgebraElement(e.image_algebra(), sol.particular.col(0));
        out.grid = e.grid_of(*out.element);
        return out;
    }
    // functional vanishing on the image: left nullspace of the block map
    auto left_null = rank_nullspace(bm.transpose());
    for (const auto& y : left_null.nullspace) {
        Scalar pairing = Scalar::zero(e.G()->field());
        for (std::size_t r = 0; r < target.size(); ++r) pairing += y.at(r, 0) * target[r];
        if (!pairing.is_zero()) {
            out.obstruction = y.col(0);
            return out;
        }
    }
    throw ValidationError("unsolvable block with no obstruction functional");  // unreachable
}

/// The embedding defined by the right action of F on itself as a left
/// G-space: image basis = phi of F's ambient k-basis.
inline EmbeddingModel embed_from_extension(const Extension& e, std::uint64_t seed = 0,
                                           int trials = 64) {
    const auto& g = e.G_algebra();
    std::vector<RingMatrix> basis;
    basis.reserve(e.F()->dim());
    for (std::size_t s = 0; s < e.F()->dim(); ++s) {
        auto grid = e.phi(AlgebraElement::basis_element(e.F(), s));
        RingMatrix m(g, e.n());
        for (std::size_t i = 0; i < e.n(); ++i)
            for (std::size_t j = 0; j < e.n(); ++j) m.at(i, j) = grid[i][j];
        basis.push_back(std::move(m));
    }
    return EmbeddingModel::build(g, e.n(), std::move(basis), seed, trials, e.label());
}

/// Recovers the extension behind a 1-tight model: G re-embeds via the unique
/// matrices with first row (g, 0, ..., 0) and the left basis consists of the
/// unique matrices with unit-vector first rows.
inline Extension extension_from_tight(const EmbeddingModel& e) {
    if (!is_a_tight(e, 1).tight) throw NotOneTight();
    const auto& g = e.G();
    const auto& fhat = e.image_algebra();

    auto first_row_preimage = [&](std::vector<AlgebraElement> row) {
        CornerBlock block{1, e.n(), std::move(row)};
        auto sol = solve_for_block(e, 1, block);
        return *sol.element;  // 1-tightness makes this solvable
    };

    std::vector<AlgebraElement> g_copy;
    for (std::size_t t = 0; t < g->dim(); ++t) {
        std::vector<AlgebraElement> row(e.n(), AlgebraElement::zero(g));
        row[0] = AlgebraElement::basis_element(g, t);
        g_copy.push_back(first_row_preimage(std::move(row)));
    }
    std::vector<AlgebraElement> left_basis;
    for (std::size_t i = 0; i < e.n(); ++i) {
        std::vector<AlgebraElement> row(e.n(), AlgebraElement::zero(g));
        row[i] = AlgebraElement::unit(g);
        left_basis.push_back(first_row_preimage(std::move(row)));
    }

    Subspace g_sub = Subspace::span_elements(fhat, g_copy);
    if (!g_sub.is_subring())
        throw ValidationError("recovered G copy is not a subring");  // cannot happen when 1-tight
    return Extension::build(fhat, g_sub, std::move(left_basis),
                            e.label().empty() ? "recovered" : e.label() + ".recovered");
}

/// Round trip embed_from_extension(extension_from_tight(e)): compares the
/// image of the re-embedded model with the original image span, identifying
/// the recovered copy of G with G through the (0,0) entry of its grids.
inline bool roundtrip_image_identical(const EmbeddingModel& e, std::uint64_t seed = 0,
                                      int trials = 64) {
    Extension recovered = extension_from_tight(e);
    EmbeddingModel again = embed_from_extension(recovered, seed, trials);

    // recovered G basis vector r is an element of the original image; its
    // grid has first row (g, 0, ..., 0) and the iso we need sends it to g
    const auto& g_sub = recovered.G();
    std::vector<AlgebraElement> g_images;
    for (std::size_t r = 0; r < g_sub.dim(); ++r)
        g_images.push_back(e.grid_of(g_sub.basis_vector(r)).at(0, 0));

    std::vector<std::vector<Scalar>> mapped;
    for (const auto& grid2 : again.image_basis()) {
        RingMatrix mapped_grid(e.G(), e.n());
        for (std::size_t i = 0; i < e.n(); ++i)
            for (std::size_t j = 0; j < e.n(); ++j) {
                auto entry = AlgebraElement::zero(e.G());
                const auto& c = grid2.at(i, j);
                for (std::size_t r = 0; r < g_images.size(); ++r)
                    entry = entry + g_images[r].scaled(c.coord(r));
                mapped_grid.at(i, j) = entry;
            }
        mapped.push_back(mapped_grid.flatten());
    }
    RowSpace mapped_span = RowSpace::span(e.G()->field(), e.n() * e.n() * e.G()->dim(), mapped);
    return mapped_span == e.image_span();
}

/// Round trip extension_from_tight(embed_from_extension(e)): the recovered
/// extension must have the same n, dim G, ladder dimensions and dims_over_S.
inline bool roundtrip_ladder_match(const Extension& e, std::uint64_t seed = 0, int trials = 64) {
    Extension recovered = extension_from_tight(embed_from_extension(e, seed, trials));
    if (recovered.n() != e.n() || recovered.dim_G() != e.dim_G()) return false;
    const Ladder& a = e.ladder();
    const Ladder& b = recovered.ladder();
    if (a.dims_over_S != b.dims_over_S) return false;
    for (std::size_t k = 0; k < e.n(); ++k)
        if (a.L[k].dim() != b.L[k].dim() || a.S[k].dim() != b.S[k].dim() ||
            a.D[k].dim() != b.D[k].dim())
            return false;
    return true;
}

}  // namespace divring
