#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "divring/errors.hpp"

namespace divring {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// The exact ground field k: either the rationals or a prime field F_p.
class FieldSpec {
public:
    enum class Kind { Rationals, PrimeField };

    static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }

    /// Prime fields require a verified prime 2 <= p < 2^31.
    static FieldSpec prime_field(std::int64_t p) {
        if (p < 2 || p >= (std::int64_t{1} << 31))
            throw ValidationError("prime field modulus out of range: " + std::to_string(p));
        if (!is_prime(p))
            throw ValidationError("prime field modulus is not prime: " + std::to_string(p));
        return FieldSpec(Kind::PrimeField, p);
    }

    Kind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == Kind::Rationals; }
    std::int64_t modulus() const { return p_; }

    bool operator==(const FieldSpec& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string describe() const {
        return is_rationals() ? "Q" : "F_" + std::to_string(p_);
    }

    static bool is_prime(std::int64_t n) {
        if (n < 2) return false;
        for (std::int64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

private:
    FieldSpec(Kind kind, std::int64_t p) : kind_(kind), p_(p) {}

    Kind kind_;
    std::int64_t p_;
};

/// An exact element of the field named by a FieldSpec. Rational values are
/// kept in lowest terms with positive denominator; prime-field values are
/// canonical residues in [0, p).
class Scalar {
public:
    Scalar() : field_(FieldSpec::rationals()), rat_(0), res_(0) {}

    static Scalar zero(const FieldSpec& f) { return from_int(f, 0); }
    static Scalar one(const FieldSpec& f) { return from_int(f, 1); }

    static Scalar from_int(const FieldSpec& f, std::int64_t v) {
        Scalar s;
        s.field_ = f;
        if (f.is_rationals()) {
            s.rat_ = v;
        } else {
            std::int64_t p = f.modulus();
            s.res_ = ((v % p) + p) % p;
        }
        return s;
    }

    static Scalar rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw DivisionByZero("rational with zero denominator");
        Scalar s;
        s.field_ = FieldSpec::rationals();
        s.rat_ = den < 0 ? BigRational(-num, -den) : BigRational(num, den);
        return s;
    }

    static Scalar residue(const FieldSpec& f, std::int64_t v) {
        if (f.is_rationals()) throw FieldMismatch("residue requires a prime field");
        return from_int(f, v);
    }

    /// Parses the serialized form: "num", "num/den" over Q, a residue over F_p.
    static Scalar parse(const FieldSpec& f, std::string_view text) {
        std::string t(text);
        if (t.empty()) throw ParseError("empty scalar literal");
        if (f.is_rationals()) {
            auto slash = t.find('/');
            try {
                if (slash == std::string::npos) {
                    Scalar s;
                    s.field_ = f;
                    s.rat_ = BigRational(BigInt(t));
                    return s;
                }
                BigInt num(t.substr(0, slash));
                BigInt den(t.substr(slash + 1));
                return rational(num, den);
            } catch (const std::exception&) {
                throw ParseError("bad rational literal: '" + t + "'");
            }
        }
        try {
            std::size_t pos = 0;
            long long v = std::stoll(t, &pos);
            if (pos != t.size()) throw ParseError("");
            return from_int(f, v);
        } catch (const std::exception&) {
            throw ParseError("bad residue literal: '" + t + "'");
        }
    }

    const FieldSpec& field() const { return field_; }
    bool is_zero() const { return field_.is_rationals() ? rat_ == 0 : res_ == 0; }
    bool is_one() const { return field_.is_rationals() ? rat_ == 1 : res_ == 1; }

    Scalar operator+(const Scalar& o) const {
        check_same(o);
        Scalar r(*this);
        if (field_.is_rationals()) r.rat_ = rat_ + o.rat_;
        else r.res_ = (res_ + o.res_) % field_.modulus();
        return r;
    }

    Scalar operator-(const Scalar& o) const {
        check_same(o);
        Scalar r(*this);
        if (field_.is_rationals()) r.rat_ = rat_ - o.rat_;
        else r.res_ = ((res_ - o.res_) % field_.modulus() + field_.modulus()) % field_.modulus();
        return r;
    }

    Scalar operator*(const Scalar& o) const {
        check_same(o);
        Scalar r(*this);
        if (field_.is_rationals()) r.rat_ = rat_ * o.rat_;
        else r.res_ = mul_mod(res_, o.res_, field_.modulus());
        return r;
    }

    Scalar operator-() const {
        Scalar r(*this);
        if (field_.is_rationals()) r.rat_ = -rat_;
        else r.res_ = (field_.modulus() - res_) % field_.modulus();
        return r;
    }

    Scalar inv() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        Scalar r(*this);
        if (field_.is_rationals()) {
            r.rat_ = 1 / rat_;
        } else {
            r.res_ = inv_mod(res_, field_.modulus());
        }
        return r;
    }

    Scalar operator/(const Scalar& o) const {
        check_same(o);
        if (o.is_zero()) throw DivisionByZero();
        return *this * o.inv();
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const {
        check_same(o);
        return field_.is_rationals() ? rat_ == o.rat_ : res_ == o.res_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Canonical serialization: "num/den" with reduced positive denominator
    /// over Q ("3", "-1/2"), the residue integer over F_p.
    std::string to_string() const {
        return field_.is_rationals() ? rat_.str() : std::to_string(res_);
    }

    const BigRational& rational_value() const { return rat_; }
    std::int64_t residue_value() const { return res_; }

private:
    void check_same(const Scalar& o) const {
        if (field_ != o.field_)
            throw FieldMismatch("scalars over " + field_.describe() + " and " + o.field_.describe());
    }

    static std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t p) {
        // residues and p fit in 31 bits, so the product fits in int64
        return (a * b) % p;
    }

    static std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
        // extended Euclid
        std::int64_t t = 0, new_t = 1, r = p, new_r = a;
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (r != 1) throw DivisionByZero("residue not invertible");
        return ((t % p) + p) % p;
    }

    FieldSpec field_;
    BigRational rat_;
    std::int64_t res_ = 0;
};

}  // namespace divring
