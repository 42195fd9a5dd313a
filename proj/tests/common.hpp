#pragma once

// Shared instance generators for the unit and acceptance suites.

#include <set>
#include <utility>
#include <vector>

#include "sparseconv/rng.hpp"
#include "sparseconv/vec.hpp"

namespace sparseconv::testing {

inline SparseVec random_vec(Rng& rng, Index n, std::size_t l0, u64 max_val) {
    if (l0 > n) l0 = std::size_t(n);
    std::vector<Entry> entries;
    entries.reserve(l0);
    if (n > 0 && l0 > 0) {
        if (l0 * 3 >= n) {
            std::vector<Index> all(n);
            for (Index i = 0; i < n; ++i) all[i] = i;
            for (std::size_t i = 0; i < l0; ++i) {
                const std::size_t j = i + std::size_t(rng.below(n - i));
                std::swap(all[i], all[j]);
            }
            all.resize(l0);
            std::sort(all.begin(), all.end());
            for (Index idx : all) entries.push_back({idx, Int::from_u64(rng.range(1, max_val))});
        } else {
            std::set<Index> picked;
            while (picked.size() < l0) picked.insert(rng.below(n));
            for (Index idx : picked) entries.push_back({idx, Int::from_u64(rng.range(1, max_val))});
        }
    }
    return SparseVec::from_sorted(n, std::move(entries));
}

struct Instance {
    SparseVec a, b;
};

// A mixed-regime instance: log-uniform length up to max_n, log-uniform support
// sizes up to max_l0, log-uniform values up to max_val.
inline Instance random_instance(Rng& rng, Index max_n_log2, unsigned max_l0_log2,
                                unsigned max_val_log2) {
    const Index n = Index(1) << rng.range(0, max_n_log2);
    const auto draw_l0 = [&]() -> std::size_t {
        const unsigned bits = unsigned(rng.range(0, max_l0_log2));
        const std::size_t cap = std::size_t(1) << bits;
        return std::size_t(rng.range(0, cap));
    };
    const u64 max_val = u64(1) << rng.range(0, max_val_log2);
    Instance inst;
    inst.a = random_vec(rng, n, draw_l0(), max_val);
    inst.b = random_vec(rng, n, draw_l0(), max_val);
    return inst;
}

}  // namespace sparseconv::testing
