#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "divring/bimodule.hpp"

namespace divring {

/// The two equivalent readings of an extension with left dimension n >= 2:
///   condition2[k]  -- dim of D_k over S_k equals 2, for 0 <= k < n-1;
///   sequence_match -- the right dimension sequence of the (G,F)-bimodule F
///                     begins with (1,2,...,2,1,n) of length n+2.
/// The two booleans are provably equivalent, so a disagreement is flagged as
/// a library bug rather than a result.
struct GarciaReport {
    std::vector<bool> condition2;
    bool condition2_all = true;
    std::vector<std::size_t> sequence;  // first n+2 computed entries
    std::vector<std::size_t> target;    // 1, 2 (n-1 times), 1, n
    bool sequence_match = false;
    std::optional<std::size_t> period;

    enum class Verdict { ConsistentPositive, ConsistentNegative, Inconsistent };
    Verdict verdict = Verdict::Inconsistent;

    static const char* verdict_name(Verdict v) {
        switch (v) {
            case Verdict::ConsistentPositive: return "consistent-positive";
            case Verdict::ConsistentNegative: return "consistent-negative";
            default: return "inconsistent";
        }
    }
};

inline GarciaReport garcia_report(const Extension& e, std::uint64_t seed = 0, int trials = 64) {
    const std::size_t n = e.n();
    if (n < 2) throw ValidationError("garcia_report needs an extension with n >= 2");

    GarciaReport rep;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        bool two = (e.ladder().dims_over_S[k] == 2);
        rep.condition2.push_back(two);
        rep.condition2_all = rep.condition2_all && two;
    }

    rep.target.push_back(1);
    for (std::size_t i = 0; i + 1 < n; ++i) rep.target.push_back(2);
    rep.target.push_back(1);
    rep.target.push_back(n);

    auto seq = dimension_sequence(bimodule_from_extension(e), n + 2, seed, trials);
    rep.sequence = seq.entries;
    rep.period = seq.period;
    rep.sequence_match = (rep.sequence == rep.target);

    if (rep.condition2_all == rep.sequence_match)
        rep.verdict = rep.condition2_all ? GarciaReport::Verdict::ConsistentPositive
                                         : GarciaReport::Verdict::ConsistentNegative;
    else
        rep.verdict = GarciaReport::Verdict::Inconsistent;
    return rep;
}

}  // namespace divring
