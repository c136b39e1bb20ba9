#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divring/matrix.hpp"
#include "divring/rng.hpp"

namespace divring {

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// A finite-dimensional k-algebra presented by a basis and a multiplication
/// table e_i * e_j = sum_l c[i][j][l] e_l, together with the coordinates of
/// the two-sided unit. Immutable once built.
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    struct VerifyReport {
        bool associative = true;
        bool unital = true;
        std::vector<std::array<std::size_t, 3>> associativity_witnesses;
        std::vector<std::size_t> unit_witnesses;
        bool ok() const { return associative && unital; }
    };

    /// Builds the algebra without validating the table; see create_verified.
    static AlgebraPtr create(FieldSpec field, std::vector<std::string> basis_names,
                             std::vector<std::vector<Scalar>> table,
                             std::vector<Scalar> unit_coords, std::string label = {}) {
        auto a = AlgebraPtr(new Algebra(std::move(field), std::move(basis_names),
                                        std::move(table), std::move(unit_coords),
                                        std::move(label)));
        return a;
    }

    /// Builds and verifies; throws ValidationError naming the first witness
    /// if the table is non-associative or the unit fails.
    static AlgebraPtr create_verified(FieldSpec field, std::vector<std::string> basis_names,
                                      std::vector<std::vector<Scalar>> table,
                                      std::vector<Scalar> unit_coords, std::string label = {});

    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const std::string& label() const { return label_; }
    const std::vector<std::string>& basis_names() const { return basis_names_; }
    const std::vector<Scalar>& unit_coords() const { return unit_coords_; }

    const std::vector<Scalar>& table(std::size_t i, std::size_t j) const {
        return table_[i * dim_ + j];
    }

private:
    Algebra(FieldSpec field, std::vector<std::string> basis_names,
            std::vector<std::vector<Scalar>> table, std::vector<Scalar> unit_coords,
            std::string label)
        : field_(std::move(field)),
          dim_(basis_names.size()),
          basis_names_(std::move(basis_names)),
          table_(std::move(table)),
          unit_coords_(std::move(unit_coords)),
          label_(std::move(label)) {
        if (dim_ == 0) throw ValidationError("algebra must have dimension >= 1");
        if (table_.size() != dim_ * dim_) throw ShapeMismatch("structure table size");
        for (const auto& cell : table_)
            if (cell.size() != dim_) throw ShapeMismatch("structure table row size");
        if (unit_coords_.size() != dim_) throw ShapeMismatch("unit coordinate size");
    }

    FieldSpec field_;
    std::size_t dim_;
    std::vector<std::string> basis_names_;
    std::vector<std::vector<Scalar>> table_;  // (i * dim + j) -> coords of e_i e_j
    std::vector<Scalar> unit_coords_;
    std::string label_;
};

/// An element of a structure-constant algebra: coordinates in its basis.
class AlgebraElement {
public:
    AlgebraElement(AlgebraPtr alg, std::vector<Scalar> coords)
        : alg_(std::move(alg)), coords_(std::move(coords)) {
        if (coords_.size() != alg_->dim()) throw ShapeMismatch("element coordinate size");
    }

    static AlgebraElement zero(const AlgebraPtr& a) {
        return AlgebraElement(a, std::vector<Scalar>(a->dim(), Scalar::zero(a->field())));
    }

    static AlgebraElement unit(const AlgebraPtr& a) {
        return AlgebraElement(a, a->unit_coords());
    }

    static AlgebraElement basis_element(const AlgebraPtr& a, std::size_t i) {
        if (i >= a->dim()) throw IndexOutOfRange("basis index");
        auto e = zero(a);
        e.coords_[i] = Scalar::one(a->field());
        return e;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<Scalar>& coords() const { return coords_; }
    const Scalar& coord(std::size_t i) const { return coords_[i]; }

    bool is_zero() const {
        for (const auto& c : coords_)
            if (!c.is_zero()) return false;
        return true;
    }

    AlgebraElement operator+(const AlgebraElement& o) const {
        require_same(o);
        AlgebraElement r(*this);
        for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] += o.coords_[i];
        return r;
    }

    AlgebraElement operator-(const AlgebraElement& o) const {
        require_same(o);
        AlgebraElement r(*this);
        for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] -= o.coords_[i];
        return r;
    }

    AlgebraElement operator-() const {
        AlgebraElement r(*this);
        for (auto& c : r.coords_) c = -c;
        return r;
    }

    AlgebraElement scaled(const Scalar& s) const {
        AlgebraElement r(*this);
        for (auto& c : r.coords_) c *= s;
        return r;
    }

    /// Bilinear extension of the structure table.
    AlgebraElement operator*(const AlgebraElement& o) const {
        require_same(o);
        const std::size_t m = coords_.size();
        AlgebraElement r = zero(alg_);
        for (std::size_t i = 0; i < m; ++i) {
            if (coords_[i].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j) {
                if (o.coords_[j].is_zero()) continue;
                Scalar w = coords_[i] * o.coords_[j];
                const auto& cell = alg_->table(i, j);
                for (std::size_t l = 0; l < m; ++l) {
                    if (cell[l].is_zero()) continue;
                    r.coords_[l] += w * cell[l];
                }
            }
        }
        return r;
    }

    bool operator==(const AlgebraElement& o) const {
        require_same(o);
        return coords_ == o.coords_;
    }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ",";
            s += coords_[i].to_string();
        }
        return s + ")";
    }

private:
    void require_same(const AlgebraElement& o) const {
        if (alg_ != o.alg_) throw AlgebraMismatch();
    }

    AlgebraPtr alg_;
    std::vector<Scalar> coords_;
};

inline AlgebraElement multiply(const AlgebraElement& u, const AlgebraElement& v) { return u * v; }

/// Full associativity ((e_i e_j) e_l == e_i (e_j e_l) over all triples) and
/// two-sided unit check. Failures are reported with witnesses, never thrown.
inline Algebra::VerifyReport verify_algebra(const AlgebraPtr& a) {
    Algebra::VerifyReport rep;
    const std::size_t m = a->dim();
    for (std::size_t i = 0; i < m; ++i) {
        auto ei = AlgebraElement::basis_element(a, i);
        for (std::size_t j = 0; j < m; ++j) {
            auto ej = AlgebraElement::basis_element(a, j);
            auto eij = ei * ej;
            for (std::size_t l = 0; l < m; ++l) {
                auto el = AlgebraElement::basis_element(a, l);
                if (eij * el != ei * (ej * el)) {
                    rep.associative = false;
                    rep.associativity_witnesses.push_back({i, j, l});
                }
            }
        }
    }
    auto one = AlgebraElement::unit(a);
    for (std::size_t i = 0; i < m; ++i) {
        auto ei = AlgebraElement::basis_element(a, i);
        if (one * ei != ei || ei * one != ei) {
            rep.unital = false;
            rep.unit_witnesses.push_back(i);
        }
    }
    return rep;
}

inline AlgebraPtr Algebra::create_verified(FieldSpec field, std::vector<std::string> basis_names,
                                           std::vector<std::vector<Scalar>> table,
                                           std::vector<Scalar> unit_coords, std::string label) {
    auto a = create(std::move(field), std::move(basis_names), std::move(table),
                    std::move(unit_coords), label);
    auto rep = verify_algebra(a);
    if (!rep.associative) {
        auto w = rep.associativity_witnesses.front();
        throw ValidationError("algebra '" + label + "' not associative at triple (" +
                              std::to_string(w[0]) + "," + std::to_string(w[1]) + "," +
                              std::to_string(w[2]) + ")");
    }
    if (!rep.unital)
        throw ValidationError("algebra '" + label + "' unit fails on basis element " +
                              std::to_string(rep.unit_witnesses.front()));
    return a;
}

/// k-linear map v -> u*v in the algebra basis; column j holds u*e_j.
inline Matrix left_regular_rep(const AlgebraElement& u) {
    const auto& a = u.algebra();
    const std::size_t m = a->dim();
    Matrix rep(a->field(), m, m);
    for (std::size_t j = 0; j < m; ++j) {
        auto col = u * AlgebraElement::basis_element(a, j);
        for (std::size_t i = 0; i < m; ++i) rep.at(i, j) = col.coord(i);
    }
    return rep;
}

/// k-linear map v -> v*u; column j holds e_j*u.
inline Matrix right_regular_rep(const AlgebraElement& u) {
    const auto& a = u.algebra();
    const std::size_t m = a->dim();
    Matrix rep(a->field(), m, m);
    for (std::size_t j = 0; j < m; ++j) {
        auto col = AlgebraElement::basis_element(a, j) * u;
        for (std::size_t i = 0; i < m; ++i) rep.at(i, j) = col.coord(i);
    }
    return rep;
}

/// Exactly one of the two members is engaged: either the two-sided inverse,
/// or a nonzero zero-divisor certificate w with u*w = 0.
struct Inversion {
    std::optional<AlgebraElement> inverse;
    std::optional<AlgebraElement> zero_divisor;
    bool invertible() const { return inverse.has_value(); }
};

inline Inversion invert(const AlgebraElement& u) {
    if (u.is_zero()) throw ZeroElement("cannot invert zero");
    const auto& a = u.algebra();
    Matrix rep = left_regular_rep(u);
    auto rn = rank_nullspace(rep);
    if (!rn.nullspace.empty()) {
        return Inversion{std::nullopt, AlgebraElement(a, rn.nullspace.front().col(0))};
    }
    auto sol = solve_linear(rep, Matrix::column(a->unit_coords(), a->field()));
    // a nonsingular left regular representation always solves u*x = 1, and
    // in a finite-dimensional unital algebra that x is two-sided
    AlgebraElement inv(a, sol.particular.col(0));
    return Inversion{std::move(inv), std::nullopt};
}

/// Falsification probe for the division-ring axioms: inverts every basis
/// element, every pairwise sum of basis elements, and `trials` seeded random
/// nonzero elements. Over F_p with p^dim <= 4096 the probe enumerates all
/// nonzero elements instead and the verdict is definitive.
struct ProbeReport {
    bool certified_not_division = false;
    std::optional<AlgebraElement> witness;      // element with no inverse
    std::optional<AlgebraElement> certificate;  // w != 0 with witness*w == 0
    bool exhaustive = false;
    std::uint64_t seed = 0;
    int trials = 0;
    std::size_t inversions_checked = 0;
};

namespace detail {

inline bool small_finite(const AlgebraPtr& a, std::uint64_t limit = 4096) {
    if (a->field().is_rationals()) return false;
    std::uint64_t p = static_cast<std::uint64_t>(a->field().modulus());
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < a->dim(); ++i) {
        if (total > limit / p + 1) return false;
        total *= p;
        if (total > limit) return false;
    }
    return true;
}

}  // namespace detail

inline ProbeReport division_probe(const AlgebraPtr& a, std::uint64_t seed = 0, int trials = 64) {
    ProbeReport rep;
    rep.seed = seed;
    rep.trials = trials;
    auto check = [&](const AlgebraElement& u) -> bool {
        if (u.is_zero()) return true;
        ++rep.inversions_checked;
        auto inv = invert(u);
        if (inv.invertible()) return true;
        rep.certified_not_division = true;
        rep.witness = u;
        rep.certificate = inv.zero_divisor;
        return false;
    };

    const std::size_t m = a->dim();
    if (detail::small_finite(a)) {
        rep.exhaustive = true;
        const std::int64_t p = a->field().modulus();
        std::vector<std::int64_t> digits(m, 0);
        while (true) {
            std::size_t pos = 0;
            while (pos < m && digits[pos] == p - 1) digits[pos++] = 0;
            if (pos == m) break;
            ++digits[pos];
            std::vector<Scalar> coords;
            coords.reserve(m);
            for (auto d : digits) coords.push_back(Scalar::from_int(a->field(), d));
            if (!check(AlgebraElement(a, std::move(coords)))) return rep;
        }
        return rep;
    }

    for (std::size_t i = 0; i < m; ++i)
        if (!check(AlgebraElement::basis_element(a, i))) return rep;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            auto s = AlgebraElement::basis_element(a, i) + AlgebraElement::basis_element(a, j);
            if (!check(s)) return rep;
        }
    SeededRng rng(seed);
    for (int t = 0; t < trials; ++t) {
        AlgebraElement u = AlgebraElement::zero(a);
        do {
            std::vector<Scalar> coords;
            coords.reserve(m);
            for (std::size_t i = 0; i < m; ++i) coords.push_back(rng.scalar(a->field()));
            u = AlgebraElement(a, std::move(coords));
        } while (u.is_zero());
        if (!check(u)) return rep;
    }
    return rep;
}

/// A k-subspace of an algebra in canonical form: the basis rows are the
/// reduced row echelon form of any spanning set, so equal subspaces compare
/// equal as matrices.
class Subspace {
public:
    static Subspace span(AlgebraPtr alg, const std::vector<std::vector<Scalar>>& vectors) {
        RowSpace rs = RowSpace::span(alg->field(), alg->dim(), vectors);
        return Subspace(std::move(alg), std::move(rs));
    }

    static Subspace span_elements(const AlgebraPtr& alg,
                                  const std::vector<AlgebraElement>& elems) {
        std::vector<std::vector<Scalar>> vecs;
        vecs.reserve(elems.size());
        for (const auto& e : elems) {
            if (e.algebra() != alg) throw AlgebraMismatch();
            vecs.push_back(e.coords());
        }
        return span(alg, vecs);
    }

    static Subspace whole(const AlgebraPtr& alg) {
        std::vector<std::vector<Scalar>> vecs;
        for (std::size_t i = 0; i < alg->dim(); ++i)
            vecs.push_back(AlgebraElement::basis_element(alg, i).coords());
        return span(alg, vecs);
    }

    const AlgebraPtr& algebra() const { return alg_; }
    std::size_t dim() const { return space_.dim(); }

    AlgebraElement basis_vector(std::size_t i) const {
        if (i >= dim()) throw IndexOutOfRange("subspace basis index");
        return AlgebraElement(alg_, space_.basis_row(i));
    }

    std::vector<AlgebraElement> basis_vectors() const {
        std::vector<AlgebraElement> out;
        out.reserve(dim());
        for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_vector(i));
        return out;
    }

    const Matrix& basis_matrix() const { return space_.basis_matrix(); }

    /// Coordinates of u in the canonical basis, or nullopt when u is outside.
    std::optional<std::vector<Scalar>> coordinates(const AlgebraElement& u) const {
        if (u.algebra() != alg_) throw AlgebraMismatch();
        return space_.coordinates(u.coords());
    }

    bool contains(const AlgebraElement& u) const { return coordinates(u).has_value(); }

    bool contains(const Subspace& other) const {
        if (other.alg_ != alg_) throw AlgebraMismatch();
        for (std::size_t i = 0; i < other.dim(); ++i)
            if (!contains(other.basis_vector(i))) return false;
        return true;
    }

    AlgebraElement combine(const std::vector<Scalar>& coeffs) const {
        if (coeffs.size() != dim()) throw ShapeMismatch("subspace coefficient size");
        auto r = AlgebraElement::zero(alg_);
        for (std::size_t i = 0; i < dim(); ++i) r = r + basis_vector(i).scaled(coeffs[i]);
        return r;
    }

    bool operator==(const Subspace& o) const {
        return alg_ == o.alg_ && space_ == o.space_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    /// Closed under multiplication and contains the ambient unit.
    bool is_subring() const {
        if (!contains(AlgebraElement::unit(alg_))) return false;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                if (!contains(basis_vector(i) * basis_vector(j))) return false;
        return true;
    }

private:
    Subspace(AlgebraPtr alg, RowSpace space) : alg_(std::move(alg)), space_(std::move(space)) {}

    AlgebraPtr alg_;
    RowSpace space_;
};

/// Exact membership test; returns coordinates in the canonical basis on hit.
inline std::optional<std::vector<Scalar>> subspace_membership(const Subspace& v,
                                                              const AlgebraElement& u) {
    return v.coordinates(u);
}

/// Smallest k-subspace containing the generators (and 1 when include_unit)
/// that is closed under multiplication; fixpoint iteration over pairwise
/// basis products, capped at the ambient dimension.
inline Subspace subring_closure(const AlgebraPtr& a, const std::vector<AlgebraElement>& generators,
                                bool include_unit = true) {
    std::vector<AlgebraElement> seed = generators;
    for (const auto& g : seed)
        if (g.algebra() != a) throw AlgebraMismatch();
    if (include_unit) seed.push_back(AlgebraElement::unit(a));
    Subspace current = Subspace::span_elements(a, seed);
    for (std::size_t round = 0; round <= a->dim(); ++round) {
        std::vector<AlgebraElement> next = current.basis_vectors();
        bool closed = true;
        for (std::size_t i = 0; i < current.dim(); ++i)
            for (std::size_t j = 0; j < current.dim(); ++j) {
                auto prod = current.basis_vector(i) * current.basis_vector(j);
                if (!current.contains(prod)) {
                    closed = false;
                    next.push_back(std::move(prod));
                }
            }
        if (closed) return current;
        current = Subspace::span_elements(a, next);
    }
    return current;  // unreachable: dimension strictly grows per round
}

/// A subspace that is a subring, re-presented as a standalone
/// structure-constant algebra plus coordinate maps in both directions.
class SubalgebraView {
public:
    static SubalgebraView from_subring(const Subspace& carrier, std::string label = {}) {
        const auto& ambient = carrier.algebra();
        const std::size_t d = carrier.dim();
        if (d == 0) throw NotASubring("zero subspace is not a subring");
        auto unit_coords = carrier.coordinates(AlgebraElement::unit(ambient));
        if (!unit_coords) throw NotASubring("subspace does not contain the unit");
        std::vector<std::vector<Scalar>> table(d * d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                auto prod = carrier.basis_vector(i) * carrier.basis_vector(j);
                auto coords = carrier.coordinates(prod);
                if (!coords)
                    throw NotASubring("subspace not closed under multiplication at pair (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
                table[i * d + j] = std::move(*coords);
            }
        std::vector<std::string> names;
        names.reserve(d);
        for (std::size_t i = 0; i < d; ++i) names.push_back("g" + std::to_string(i));
        auto alg = Algebra::create_verified(ambient->field(), std::move(names), std::move(table),
                                            std::move(*unit_coords), std::move(label));
        return SubalgebraView(alg, carrier);
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const Subspace& carrier() const { return carrier_; }

    /// Ambient element lying in the carrier -> standalone coordinates.
    AlgebraElement restrict(const AlgebraElement& ambient_elt) const {
        auto coords = carrier_.coordinates(ambient_elt);
        if (!coords) throw NotASubring("element lies outside the subring");
        return AlgebraElement(alg_, std::move(*coords));
    }

    /// Standalone element -> ambient element.
    AlgebraElement include(const AlgebraElement& sub_elt) const {
        if (sub_elt.algebra() != alg_) throw AlgebraMismatch();
        return carrier_.combine(sub_elt.coords());
    }

private:
    SubalgebraView(AlgebraPtr alg, Subspace carrier)
        : alg_(std::move(alg)), carrier_(std::move(carrier)) {}

    AlgebraPtr alg_;
    Subspace carrier_;
};

}  // namespace divring
