#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divring/extension.hpp"

namespace divring {

/// An (A,B)-bimodule over division k-algebras: a k-space of dimension m with
/// a left A-action and a right B-action given per basis element as m x m
/// matrices over k. coords(a * x) = left_action[a] * coords(x) and
/// coords(x * b) = right_action[b] * coords(x); the two commute.
class Bimodule {
public:
    Bimodule(AlgebraPtr left_ring, AlgebraPtr right_ring, std::size_t dim,
             std::vector<Matrix> left_action, std::vector<Matrix> right_action)
        : left_ring_(std::move(left_ring)),
          right_ring_(std::move(right_ring)),
          dim_(dim),
          left_action_(std::move(left_action)),
          right_action_(std::move(right_action)) {
        if (left_ring_->field() != right_ring_->field()) throw FieldMismatch("bimodule rings");
        if (left_action_.size() != left_ring_->dim() || right_action_.size() != right_ring_->dim())
            throw ShapeMismatch("bimodule action count");
        for (const auto& m : left_action_)
            if (m.rows() != dim_ || m.cols() != dim_) throw ShapeMismatch("left action shape");
        for (const auto& m : right_action_)
            if (m.rows() != dim_ || m.cols() != dim_) throw ShapeMismatch("right action shape");
    }

    const AlgebraPtr& left_ring() const { return left_ring_; }
    const AlgebraPtr& right_ring() const { return right_ring_; }
    const FieldSpec& field() const { return left_ring_->field(); }
    std::size_t dim() const { return dim_; }
    const Matrix& left_action(std::size_t i) const { return left_action_[i]; }
    const Matrix& right_action(std::size_t i) const { return right_action_[i]; }

    /// Action matrix of an arbitrary ring element, by linearity.
    Matrix left_action_of(const AlgebraElement& a) const {
        return combine(a, left_ring_, left_action_);
    }
    Matrix right_action_of(const AlgebraElement& b) const {
        return combine(b, right_ring_, right_action_);
    }

private:
    Matrix combine(const AlgebraElement& u, const AlgebraPtr& ring,
                   const std::vector<Matrix>& mats) const {
        if (u.algebra() != ring) throw AlgebraMismatch();
        Matrix out = Matrix::zeros(field(), dim_, dim_);
        for (std::size_t i = 0; i < mats.size(); ++i)
            if (!u.coord(i).is_zero()) out = out + mats[i].scaled(u.coord(i));
        return out;
    }

    AlgebraPtr left_ring_;
    AlgebraPtr right_ring_;
    std::size_t dim_;
    std::vector<Matrix> left_action_;
    std::vector<Matrix> right_action_;
};

/// Unit actions, multiplicativity on basis pairs (anti-multiplicativity on
/// the right), and commuting of the two actions. Failures are listed, never
/// thrown.
struct BimoduleReport {
    bool ok = true;
    std::vector<std::string> witnesses;
};

inline BimoduleReport verify_bimodule(const Bimodule& m) {
    BimoduleReport rep;
    auto fail = [&](std::string w) {
        rep.ok = false;
        rep.witnesses.push_back(std::move(w));
    };
    const auto& a = m.left_ring();
    const auto& b = m.right_ring();
    const Matrix id = Matrix::identity(m.field(), m.dim());

    if (m.left_action_of(AlgebraElement::unit(a)) != id) fail("left unit action != identity");
    if (m.right_action_of(AlgebraElement::unit(b)) != id) fail("right unit action != identity");

    for (std::size_t i = 0; i < a->dim(); ++i)
        for (std::size_t j = 0; j < a->dim(); ++j) {
            auto prod = AlgebraElement::basis_element(a, i) * AlgebraElement::basis_element(a, j);
            if (m.left_action_of(prod) != m.left_action(i) * m.left_action(j))
                fail("left action not multiplicative at pair (" + std::to_string(i) + "," +
                     std::to_string(j) + ")");
        }
    for (std::size_t i = 0; i < b->dim(); ++i)
        for (std::size_t j = 0; j < b->dim(); ++j) {
            // x*(e_i e_j) = (x*e_i)*e_j, so rho(e_i e_j) = rho(e_j) rho(e_i)
            auto prod = AlgebraElement::basis_element(b, i) * AlgebraElement::basis_element(b, j);
            if (m.right_action_of(prod) != m.right_action(j) * m.right_action(i))
                fail("right action not anti-multiplicative at pair (" + std::to_string(i) + "," +
                     std::to_string(j) + ")");
        }
    for (std::size_t i = 0; i < a->dim(); ++i)
        for (std::size_t j = 0; j < b->dim(); ++j)
            if (m.left_action(i) * m.right_action(j) != m.right_action(j) * m.left_action(i))
                fail("actions do not commute at pair (" + std::to_string(i) + "," +
                     std::to_string(j) + ")");
    return rep;
}

/// Throws NotDivisionCertified when the probe exhibits a zero divisor.
inline void require_division(const AlgebraPtr& ring, std::uint64_t seed = 0, int trials = 64) {
    auto probe = division_probe(ring, seed, trials);
    if (probe.certified_not_division)
        throw NotDivisionCertified("ring '" + ring->label() + "' has zero divisor certificate " +
                                   probe.certificate->to_string() + " for witness " +
                                   probe.witness->to_string());
}

/// Dimension of M as a right B-space: dim_k M / dim_k B (M is free since B
/// acts as a division ring; the probe precondition is enforced).
inline std::size_t right_dim(const Bimodule& m, std::uint64_t seed = 0, int trials = 64) {
    require_division(m.right_ring(), seed, trials);
    const std::size_t db = m.right_ring()->dim();
    if (m.dim() % db != 0)
        throw DimensionMismatch("module dimension not divisible by dim of the right ring");
    return m.dim() / db;
}

/// The right dual Hom_B(M, B) as a (B,A)-bimodule. A map phi is stored by
/// its k-matrix P with coords(phi(x)) = P coords(x); right-B-linearity
/// phi(x b) = phi(x) b pins the solution space
///     P rho_M(b) = rho_B(b) P for all b,
/// where rho_B is right multiplication on B itself. The left B-action is
/// (b phi)(x) = b phi(x) and the right A-action is (phi a)(x) = phi(a x).
inline Bimodule right_dual(const Bimodule& m, std::uint64_t seed = 0, int trials = 64) {
    require_division(m.right_ring(), seed, trials);
    const auto& a = m.left_ring();
    const auto& b = m.right_ring();
    const FieldSpec& f = m.field();
    const std::size_t db = b->dim();
    const std::size_t mm = m.dim();
    const std::size_t unknowns = db * mm;  // vec(P), index r*mm + c

    std::vector<std::vector<Scalar>> cond_rows;
    for (std::size_t t = 0; t < db; ++t) {
        Matrix rho_m = m.right_action(t);
        Matrix rho_b = right_regular_rep(AlgebraElement::basis_element(b, t));
        for (std::size_t r = 0; r < db; ++r)
            for (std::size_t c = 0; c < mm; ++c) {
                std::vector<Scalar> row(unknowns, Scalar::zero(f));
                for (std::size_t s = 0; s < mm; ++s) row[r * mm + s] += rho_m.at(s, c);
                for (std::size_t s = 0; s < db; ++s) row[s * mm + c] -= rho_b.at(r, s);
                cond_rows.push_back(std::move(row));
            }
    }
    Matrix cond = Matrix::from_rows(f, unknowns, cond_rows);
    auto rn = rank_nullspace(cond);
    const std::size_t dual_dim = rn.nullspace.size();

    std::vector<std::vector<Scalar>> basis_flat;
    basis_flat.reserve(dual_dim);
    for (const auto& v : rn.nullspace) basis_flat.push_back(v.col(0));
    Matrix basis_cols = Matrix::from_columns(f, unknowns, basis_flat);

    auto unflatten = [&](const std::vector<Scalar>& flat) {
        Matrix p(f, db, mm);
        for (std::size_t r = 0; r < db; ++r)
            for (std::size_t c = 0; c < mm; ++c) p.at(r, c) = flat[r * mm + c];
        return p;
    };
    auto flatten = [&](const Matrix& p) {
        std::vector<Scalar> flat(unknowns, Scalar::zero(f));
        for (std::size_t r = 0; r < db; ++r)
            for (std::size_t c = 0; c < mm; ++c) flat[r * mm + c] = p.at(r, c);
        return flat;
    };

    // expresses a transformed dual vector in the computed dual basis
    auto action_matrices = [&](auto&& transform, std::size_t count) {
        std::vector<Matrix> out;
        out.reserve(count);
        for (std::size_t t = 0; t < count; ++t) {
            Matrix images(f, unknowns, dual_dim);
            for (std::size_t u = 0; u < dual_dim; ++u) {
                Matrix img = transform(t, unflatten(basis_flat[u]));
                auto flat = flatten(img);
                for (std::size_t r = 0; r < unknowns; ++r) images.at(r, u) = flat[r];
            }
            auto coords = solve_columns(basis_cols, images);
            if (!coords)
                throw ValidationError("dual action does not preserve the dual space");
            out.push_back(std::move(*coords));
        }
        return out;
    };

    std::vector<Matrix> left_action = action_matrices(
        [&](std::size_t t, const Matrix& p) {
            return left_regular_rep(AlgebraElement::basis_element(b, t)) * p;
        },
        db);
    std::vector<Matrix> right_action = action_matrices(
        [&](std::size_t t, const Matrix& p) { return p * m.left_action(t); }, a->dim());

    return Bimodule(b, a, dual_dim, std::move(left_action), std::move(right_action));
}

/// Right dimensions along the tower M, M^r, M^rr, ...; the period is the
/// smallest shift under which the full (ring-pair, dimension) state repeats,
/// and it is only reported once two full cycles have been observed within
/// max_len. truncated means max_len was hit before any period was confirmed.
struct DimensionSequence {
    std::vector<std::size_t> entries;
    std::optional<std::size_t> period;
    bool truncated = false;
};

inline DimensionSequence dimension_sequence(const Bimodule& m, std::size_t max_len = 16,
                                            std::uint64_t seed = 0, int trials = 64) {
    if (max_len < 1) throw ValidationError("dimension_sequence needs max_len >= 1");
    require_division(m.left_ring(), seed, trials);
    require_division(m.right_ring(), seed, trials);

    DimensionSequence out;
    struct State {
        const Algebra* left;
        const Algebra* right;
        std::size_t dim;
        bool operator==(const State&) const = default;
    };
    std::vector<State> states;
    Bimodule cur = m;
    for (std::size_t t = 0; t < max_len; ++t) {
        std::size_t d = right_dim(cur, seed, trials);
        out.entries.push_back(d);
        states.push_back(State{cur.left_ring().get(), cur.right_ring().get(), d});
        if (t + 1 < max_len) cur = right_dual(cur, seed, trials);
    }
    for (std::size_t p = 1; 2 * p <= states.size(); ++p) {
        bool match = true;
        for (std::size_t t = 0; t + p < states.size(); ++t)
            if (!(states[t] == states[t + p])) {
                match = false;
                break;
            }
        if (match) {
            out.period = p;
            break;
        }
    }
    out.truncated = !out.period.has_value();
    return out;
}

/// The (G,F)-bimodule F attached to an extension: the ambient algebra as a
/// k-space, G acting by left multiplication through the inclusion, F by
/// right multiplication.
inline Bimodule bimodule_from_extension(const Extension& e) {
    const auto& f = e.F();
    const auto& g = e.G_algebra();
    std::vector<Matrix> left_action;
    left_action.reserve(g->dim());
    for (std::size_t t = 0; t < g->dim(); ++t)
        left_action.push_back(
            left_regular_rep(e.G_view().include(AlgebraElement::basis_element(g, t))));
    std::vector<Matrix> right_action;
    right_action.reserve(f->dim());
    for (std::size_t j = 0; j < f->dim(); ++j)
        right_action.push_back(right_regular_rep(AlgebraElement::basis_element(f, j)));
    return Bimodule(g, f, f->dim(), std::move(left_action), std::move(right_action));
}

}  // namespace divring
