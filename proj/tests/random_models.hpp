#pragma once

// Seeded generators of division ring extensions (and hence embedding models)
// used by the randomized suites: radical extensions of the rationals,
// simple extensions of prime fields, and towers F_{p^{2n}} / F_{p^2} found
// through the Frobenius fixed field. Everything is exact; irreducibility
// over F_p is decided by the x^{p^m} = x criterion, over the rationals by
// integer root/power checks valid for the binomials we draw.

#include <cstdint>
#include <numeric>
#include <vector>

#include "divring/extension.hpp"
#include "divring/rng.hpp"

namespace testmodels {

using namespace divring;

using Poly = std::vector<std::int64_t>;  // ascending coefficients mod p

inline Poly poly_trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline Poly poly_mod(Poly a, const Poly& f, std::int64_t p) {
    const std::size_t m = f.size() - 1;  // f monic of degree m
    a = poly_trim(std::move(a));
    while (a.size() > m) {
        std::int64_t lead = a.back();
        std::size_t shift = a.size() - 1 - m;
        for (std::size_t i = 0; i <= m; ++i)
            a[shift + i] = ((a[shift + i] - lead * f[i]) % p + p) % p;
        a = poly_trim(std::move(a));
    }
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(prod), f, p);
}

inline Poly poly_powmod_x(std::uint64_t e, const Poly& f, std::int64_t p) {
    Poly result{1};
    Poly base = poly_mod({0, 1}, f, p);
    while (e > 0) {
        if (e & 1) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

inline Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
    auto inv_mod = [&](std::int64_t x) {
        std::int64_t r = 1;
        for (std::int64_t e = p - 2; e > 0; e >>= 1, x = x * x % p)
            if (e & 1) r = r * x % p;
        return r;
    };
    a = poly_trim(std::move(a));
    b = poly_trim(std::move(b));
    while (!b.empty()) {
        // reduce a mod b after making b monic
        std::int64_t lead_inv = inv_mod(b.back());
        for (auto& c : b) c = c * lead_inv % p;
        Poly r = poly_mod(std::move(a), b, p);
        a = std::move(b);
        b = poly_trim(std::move(r));
    }
    return a;
}

inline bool poly_irreducible(const Poly& f, std::int64_t p) {
    const std::size_t m = f.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    auto pow_u64 = [&](std::size_t e) {
        std::uint64_t r = 1;
        for (std::size_t i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(p);
        return r;
    };
    Poly x = {0, 1};
    Poly xq = poly_powmod_x(pow_u64(m), f, p);
    Poly diff = xq;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    if (!poly_trim(diff).empty()) return false;
    for (std::size_t q = 2; q <= m; ++q) {
        if (m % q != 0) continue;
        bool is_prime = true;
        for (std::size_t d = 2; d * d <= q; ++d)
            if (q % d == 0) is_prime = false;
        if (!is_prime) continue;
        Poly xs = poly_powmod_x(pow_u64(m / q), f, p);
        Poly d = xs;
        d.resize(std::max<std::size_t>(d.size(), 2), 0);
        d[1] = ((d[1] - 1) % p + p) % p;
        Poly g = poly_gcd(f, poly_trim(d), p);
        if (g.size() > 1) return false;
    }
    return true;
}

/// k[x]/(f) for monic f of degree m, presented by structure constants in the
/// power basis 1, x, ..., x^{m-1}. `reduction` holds the coordinates of x^m.
inline AlgebraPtr power_basis_algebra(const FieldSpec& k, std::vector<Scalar> reduction,
                                      const std::string& label) {
    const std::size_t m = reduction.size();
    std::vector<std::vector<Scalar>> powers;  // x^t for t = 0 .. 2m-2
    for (std::size_t t = 0; t < m; ++t) {
        std::vector<Scalar> v(m, Scalar::zero(k));
        v[t] = Scalar::one(k);
        powers.push_back(std::move(v));
    }
    for (std::size_t t = m; t <= 2 * m - 2; ++t) {
        const auto& prev = powers[t - 1];
        std::vector<Scalar> v(m, Scalar::zero(k));
        for (std::size_t i = 0; i + 1 < m; ++i) v[i + 1] = prev[i];
        Scalar overflow = prev[m - 1];
        for (std::size_t i = 0; i < m; ++i) v[i] += overflow * reduction[i];
        powers.push_back(std::move(v));
    }
    std::vector<std::vector<Scalar>> table(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) table[i * m + j] = powers[i + j];
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m; ++i) names.push_back("x" + std::to_string(i));
    std::vector<Scalar> unit(m, Scalar::zero(k));
    unit[0] = Scalar::one(k);
    return Algebra::create_verified(k, std::move(names), std::move(table), std::move(unit), label);
}

inline bool is_perfect_power(long long d, int e) {
    if (d == 0) return true;
    long long sign = d < 0 ? -1 : 1;
    if (sign < 0 && e % 2 == 0) return false;
    long long a = std::abs(d);
    for (long long r = 1; ; ++r) {
        long long v = 1;
        for (int i = 0; i < e; ++i) v *= r;
        if (v == a) return true;
        if (v > a) return false;
    }
}

/// Q[x]/(x^n - d) with d drawn so the binomial is irreducible: for n = 3,
/// d must not be a cube; for n = 4, d must be neither a square nor -4 r^4.
inline Extension random_radical_extension(std::size_t n, SeededRng& rng) {
    auto q = FieldSpec::rationals();
    long long d = 0;
    while (true) {
        d = static_cast<long long>(rng.below(60)) - 30;
        if (d == 0) continue;
        if (n == 2 && d > 0 && is_perfect_power(d, 2)) continue;
        if (n == 3 && is_perfect_power(d, 3)) continue;
        if (n == 4) {
            if (d > 0 && is_perfect_power(d, 2)) continue;
            if (d < 0 && (-d) % 4 == 0 && is_perfect_power((-d) / 4, 4)) continue;
        }
        break;
    }
    std::vector<Scalar> reduction(n, Scalar::zero(q));
    reduction[0] = Scalar::from_int(q, d);
    auto f = power_basis_algebra(q, std::move(reduction), "radical");
    return Extension::build(f, subring_closure(f, {}, true), std::nullopt, "radical");
}

inline Poly random_irreducible(std::size_t m, std::int64_t p, SeededRng& rng) {
    while (true) {
        Poly f(m + 1, 0);
        f[m] = 1;
        for (std::size_t i = 0; i < m; ++i) f[i] = static_cast<std::int64_t>(rng.below(p));
        if (f[0] == 0) f[0] = 1 + static_cast<std::int64_t>(rng.below(p - 1));
        if (poly_irreducible(f, p)) return f;
    }
}

/// F_{p^n} over F_p with a random irreducible minimal polynomial.
inline Extension random_prime_field_extension(std::size_t n, SeededRng& rng) {
    const std::int64_t p = (rng.below(2) == 0) ? 3 : 5;
    auto k = FieldSpec::prime_field(p);
    Poly f = random_irreducible(n, p, rng);
    std::vector<Scalar> reduction(n, Scalar::zero(k));
    for (std::size_t i = 0; i < n; ++i) reduction[i] = Scalar::from_int(k, ((-f[i]) % p + p) % p);
    auto alg = power_basis_algebra(k, std::move(reduction), "fpn");
    return Extension::build(alg, subring_closure(alg, {}, true), std::nullopt, "fpn");
}

/// F_{p^{2n}} over the subfield F_{p^2}, which is recovered exactly as the
/// kernel of Frob^2 - id (Frobenius is k-linear in characteristic p).
inline Extension random_tower_extension(std::size_t n, SeededRng& rng) {
    const std::int64_t p = 3;
    const std::size_t m = 2 * n;
    auto k = FieldSpec::prime_field(p);
    Poly f = random_irreducible(m, p, rng);
    std::vector<Scalar> reduction(m, Scalar::zero(k));
    for (std::size_t i = 0; i < m; ++i) reduction[i] = Scalar::from_int(k, ((-f[i]) % p + p) % p);
    auto alg = power_basis_algebra(k, std::move(reduction), "tower");

    Matrix frob(k, m, m);
    for (std::size_t t = 0; t < m; ++t) {
        auto e = AlgebraElement::basis_element(alg, t);
        auto power = AlgebraElement::unit(alg);
        for (std::int64_t i = 0; i < p; ++i) power = power * e;
        for (std::size_t r = 0; r < m; ++r) frob.at(r, t) = power.coord(r);
    }
    Matrix frob2 = frob * frob - Matrix::identity(k, m);
    auto rn = rank_nullspace(frob2);
    std::vector<std::vector<Scalar>> vecs;
    for (const auto& v : rn.nullspace) vecs.push_back(v.col(0));
    Subspace g = Subspace::span(alg, vecs);
    return Extension::build(alg, g, std::nullopt, "tower");
}

/// `count` extensions of left dimension n, cycling through the three kinds.
inline std::vector<Extension> random_extensions(std::size_t n, std::size_t count,
                                                std::uint64_t seed) {
    SeededRng rng(seed);
    std::vector<Extension> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        switch (i % 3) {
            case 0: out.push_back(random_radical_extension(n, rng)); break;
            case 1: out.push_back(random_prime_field_extension(n, rng)); break;
            default: out.push_back(random_tower_extension(n, rng)); break;
        }
    }
    return out;
}

}  // namespace testmodels
