#pragma once

#include <cstdint>
#include <random>

#include "divring/scalars.hpp"

namespace divring {

/// Deterministic random stream for probes. All draws go through the raw
/// mt19937_64 output (no distribution objects), so identical seeds give
/// identical streams on every platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next() { return eng_(); }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : eng_() % n; }

    /// Rationals draw small integers in [-9, 9]; prime fields draw residues.
    Scalar scalar(const FieldSpec& f) {
        if (f.is_rationals())
            return Scalar::from_int(f, static_cast<std::int64_t>(below(19)) - 9);
        return Scalar::from_int(f, static_cast<std::int64_t>(below(static_cast<std::uint64_t>(f.modulus()))));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace divring
