#pragma once

// The 1-sparsity decision on bucket moments: for a nonnegative vector V with
// moments x = |V|_1, y = |dV|_1, z = |d2V|_1, Cauchy-Schwarz gives y^2 <= x*z
// with equality exactly when V has at most one nonzero entry. Buckets passing
// the equality test surrender their unique position as y/x and value as x.

#include <cstdint>

#include "sparseconv/int.hpp"
#include "sparseconv/vec.hpp"

namespace sparseconv {

struct BucketMoments {
    Int x;  // |V|_1
    Int y;  // |dV|_1
    Int z;  // |d2V|_1
};

inline BucketMoments moments(const SparseVec& v) {
    BucketMoments m;
    for (const auto& e : v.entries()) {
        const Int i = Int::from_u64(e.index);
        m.x += e.value;
        m.y += e.value * i;
        m.z += e.value * i * i;
    }
    return m;
}

struct SparsityVerdict {
    enum Kind { Zero, One, Many } kind = Many;
    Index position = 0;  // meaningful for One
    Int value;           // meaningful for One

    bool is_one() const { return kind == One; }
};

// Decides whether the moments describe a 0-, 1- or many-sparse vector. The
// divisibility and range clauses cannot fire on genuine moments; they convert
// a corrupted input into the safe verdict Many instead of a wrong recovery.
inline SparsityVerdict classify(const BucketMoments& m, Index max_index) {
    SparsityVerdict v;
    if (m.x.is_zero()) {
        v.kind = SparsityVerdict::Zero;
        return v;
    }
    if (m.x.is_negative() || m.y.is_negative() || m.z.is_negative()) return v;
    if (m.y * m.y != m.x * m.z) return v;
    const auto qr = Int::divmod(m.y, m.x);
    if (!qr.rem.is_zero()) return v;
    if (!qr.quot.fits_u64() || qr.quot.as_u64() >= max_index) return v;
    v.kind = SparsityVerdict::One;
    v.position = qr.quot.as_u64();
    v.value = m.x;
    return v;
}

}  // namespace sparseconv
