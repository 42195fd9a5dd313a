#pragma once

// Brute-force sparse convolution by entry-pair enumeration. This is THE
// reference every engine is judged against; it must stay independent of the
// transform and hashing machinery.

#include "sparseconv/errors.hpp"
#include "sparseconv/vec.hpp"

namespace sparseconv {

inline SparseVec oracle_conv(const SparseVec& a, const SparseVec& b,
                             const Limits& limits = default_limits()) {
    const Index out_len = (a.length() && b.length()) ? a.length() + b.length() - 1 : 0;
    if (a.empty() || b.empty()) return SparseVec(out_len);
    if (u128(a.l0()) * b.l0() > limits.schoolbook_guard)
        throw guard_error("oracle_conv: pair count exceeds the guard");
    std::vector<Entry> pairs;
    pairs.reserve(a.l0() * b.l0());
    for (const auto& ea : a.entries())
        for (const auto& eb : b.entries()) pairs.push_back({ea.index + eb.index, ea.value * eb.value});
    return SparseVec::from_pairs(out_len, std::move(pairs));
}

}  // namespace sparseconv
