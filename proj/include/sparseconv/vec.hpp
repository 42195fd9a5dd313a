#pragma once

// Vector representations shared by every engine. SparseVec is canonical at
// every API boundary: entries sorted by strictly increasing index, all values
// nonzero, indices inside the declared length.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "sparseconv/errors.hpp"
#include "sparseconv/int.hpp"

namespace sparseconv {

using Index = std::uint64_t;

struct Entry {
    Index index = 0;
    Int value;

    friend bool operator==(const Entry& a, const Entry& b) {
        return a.index == b.index && a.value == b.value;
    }
};

class SparseVec {
public:
    SparseVec() = default;
    explicit SparseVec(Index length) : length_(length) {}

    // Canonicalizes arbitrary pairs: sorts, merges duplicate indices by
    // addition, and drops zero values.
    static SparseVec from_pairs(Index length, std::vector<Entry> pairs) {
        std::sort(pairs.begin(), pairs.end(),
                  [](const Entry& a, const Entry& b) { return a.index < b.index; });
        SparseVec v(length);
        for (auto& e : pairs) {
            if (e.index >= length) throw contract_error("SparseVec: index outside declared length");
            if (!v.entries_.empty() && v.entries_.back().index == e.index) {
                v.entries_.back().value += e.value;
            } else {
                v.entries_.push_back(std::move(e));
            }
        }
        v.prune_zeros();
        return v;
    }

    // Takes entries already sorted with distinct indices and nonzero values.
    static SparseVec from_sorted(Index length, std::vector<Entry> entries) {
        SparseVec v(length);
        v.entries_ = std::move(entries);
        return v;
    }

    Index length() const { return length_; }
    bool empty() const { return entries_.empty(); }
    std::size_t l0() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

    bool nonnegative() const {
        for (const auto& e : entries_)
            if (e.value.is_negative()) return false;
        return true;
    }

    friend bool operator==(const SparseVec& a, const SparseVec& b) {
        return a.length_ == b.length_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }

    // Entry-wise equality regardless of the declared lengths.
    static bool same_entries(const SparseVec& a, const SparseVec& b) {
        return a.entries_ == b.entries_;
    }

    void validate() const {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (entries_[i].value.is_zero()) throw internal_error("SparseVec: stored zero");
            if (entries_[i].index >= length_) throw internal_error("SparseVec: index out of range");
            if (i > 0 && entries_[i - 1].index >= entries_[i].index)
                throw internal_error("SparseVec: indices not strictly increasing");
        }
    }

private:
    void prune_zeros() {
        entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                      [](const Entry& e) { return e.value.is_zero(); }),
                       entries_.end());
    }

    Index length_ = 0;
    std::vector<Entry> entries_;
};

using DenseVec = std::vector<Int>;

struct Norms {
    Index l0 = 0;
    Int l1;
    Int linf;
};

// ---- core operations ----

// (d-th derivative)_i = i^d * V_i; the entry at index 0 vanishes for d >= 1.
inline SparseVec derivative(const SparseVec& v, unsigned d) {
    if (d > 2) throw contract_error("derivative: order must be 0, 1 or 2");
    if (d == 0) return v;
    std::vector<Entry> out;
    out.reserve(v.l0());
    for (const auto& e : v.entries()) {
        if (e.index == 0) continue;
        Int scale = Int::from_u64(e.index);
        if (d == 2) scale *= Int::from_u64(e.index);
        out.push_back({e.index, e.value * scale});
    }
    return SparseVec::from_sorted(v.length(), std::move(out));
}

inline Norms norms(const SparseVec& v) {
    Norms n;
    n.l0 = v.l0();
    for (const auto& e : v.entries()) {
        Int a = e.value.abs();
        if (a > n.linf) n.linf = a;
        n.l1 += a;
    }
    return n;
}

inline Int mass(const SparseVec& v) {
    Int s;
    for (const auto& e : v.entries()) s += e.value.abs();
    return s;
}

// Folds V in half: output length ceil(n/2), value at i is V_i + V_{i+ceil(n/2)}.
inline SparseVec fold_half(const SparseVec& v) {
    if (v.length() == 0) throw contract_error("fold_half: length must be >= 1");
    const Index half = (v.length() + 1) / 2;
    std::vector<Entry> pairs;
    pairs.reserve(v.l0());
    for (const auto& e : v.entries()) pairs.push_back({e.index % half, e.value});
    return SparseVec::from_pairs(half, std::move(pairs));
}

// Cyclic fold: value at i is the sum of V_j over j = i (mod m).
inline SparseVec fold_mod(const SparseVec& v, Index m) {
    if (m == 0) throw contract_error("fold_mod: modulus must be >= 1");
    std::vector<Entry> pairs;
    pairs.reserve(v.l0());
    for (const auto& e : v.entries()) pairs.push_back({e.index % m, e.value});
    return SparseVec::from_pairs(m, std::move(pairs));
}

inline DenseVec to_dense(const SparseVec& v, const Limits& limits = default_limits()) {
    if (v.length() > limits.memory_guard)
        throw guard_error("to_dense: length exceeds the memory guard");
    DenseVec d(v.length());
    for (const auto& e : v.entries()) d[e.index] = e.value;
    return d;
}

inline SparseVec from_dense(const DenseVec& d, Index n) {
    if (n < d.size()) throw contract_error("from_dense: declared length shorter than data");
    std::vector<Entry> out;
    for (Index i = 0; i < d.size(); ++i)
        if (!d[i].is_zero()) out.push_back({i, d[i]});
    return SparseVec::from_sorted(n, std::move(out));
}

// ---- sparse merges used by the Las Vegas drivers ----

inline SparseVec pointwise_max(const SparseVec& a, const SparseVec& b) {
    std::vector<Entry> out;
    out.reserve(a.l0() + b.l0());
    auto ia = a.entries().begin(), ea = a.entries().end();
    auto ib = b.entries().begin(), eb = b.entries().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->index < ib->index)) {
            out.push_back(*ia++);
        } else if (ia == ea || ib->index < ia->index) {
            out.push_back(*ib++);
        } else {
            out.push_back({ia->index, std::max(ia->value, ib->value)});
            ++ia;
            ++ib;
        }
    }
    return SparseVec::from_sorted(std::max(a.length(), b.length()), std::move(out));
}

inline SparseVec pointwise_add(const SparseVec& a, const SparseVec& b) {
    std::vector<Entry> out;
    out.reserve(a.l0() + b.l0());
    auto ia = a.entries().begin(), ea = a.entries().end();
    auto ib = b.entries().begin(), eb = b.entries().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && ia->index < ib->index)) {
            out.push_back(*ia++);
        } else if (ia == ea || ib->index < ia->index) {
            out.push_back(*ib++);
        } else {
            Int sum = ia->value + ib->value;
            if (!sum.is_zero()) out.push_back({ia->index, std::move(sum)});
            ++ia;
            ++ib;
        }
    }
    return SparseVec::from_sorted(std::max(a.length(), b.length()), std::move(out));
}

// True when a <= b holds coordinate-wise (both canonical).
inline bool pointwise_le(const SparseVec& a, const SparseVec& b) {
    auto ib = b.entries().begin(), eb = b.entries().end();
    for (const auto& e : a.entries()) {
        while (ib != eb && ib->index < e.index) {
            if (ib->value.is_negative()) return false;
            ++ib;
        }
        if (ib == eb || ib->index != e.index) {
            if (e.value.signum() > 0) return false;
        } else {
            if (e.value > ib->value) return false;
            ++ib;
        }
    }
    for (; ib != eb; ++ib)
        if (ib->value.is_negative()) return false;
    return true;
}

}  // namespace sparseconv
