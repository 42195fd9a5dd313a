#pragma once

// Prime-field scalar arithmetic, brute-force primitive elements, and Chinese
// remaindering. Field elements are residues in [0, p) held in 32-bit words;
// every prime this project touches in field contexts is far below 2^32.

#include <cstdint>
#include <vector>

#include "sparseconv/errors.hpp"
#include "sparseconv/int.hpp"

namespace sparseconv {

struct PrimeFieldCtx {
    u32 p = 0;

    u32 add(u32 a, u32 b) const {
        const u32 s = a + b;
        return s >= p ? s - p : s;
    }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
    u32 mul(u32 a, u32 b) const { return u32(u64(a) * b % p); }
    u32 neg(u32 a) const { return a ? p - a : 0; }
    u32 pow(u32 a, u64 e) const {
        u64 r = 1 % p, x = a;
        while (e) {
            if (e & 1) r = r * x % p;
            x = x * x % p;
            e >>= 1;
        }
        return u32(r);
    }
    u32 inv(u32 a) const {
        if (a == 0) throw contract_error("prime field: inverse of zero");
        return pow(a, p - 2);
    }
};

namespace detail {

inline std::vector<u64> factor_u64(u64 n) {
    std::vector<u64> fs;
    for (u64 f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
        if (n % f == 0) {
            fs.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace detail

// Smallest beta >= 2 of multiplicative order exactly p-1, certified against
// every prime factor of p-1.
inline u32 find_primitive(u32 p) {
    if (p < 3) throw contract_error("find_primitive: p must be an odd prime");
    const PrimeFieldCtx f{p};
    const std::vector<u64> factors = detail::factor_u64(p - 1);
    for (u32 beta = 2; beta < p; ++beta) {
        bool primitive = true;
        for (u64 q : factors) {
            if (f.pow(beta, (p - 1) / q) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return beta;
    }
    throw internal_error("find_primitive: no generator found");
}

// Unique value in [0, product of primes) congruent to every residue; Garner's
// mixed-radix combination with exact arithmetic.
inline Int crt_reconstruct(const std::vector<std::pair<u64, u64>>& residues) {
    for (std::size_t i = 0; i < residues.size(); ++i)
        for (std::size_t j = i + 1; j < residues.size(); ++j)
            if (residues[i].second == residues[j].second)
                throw contract_error("crt_reconstruct: duplicate modulus");
    Int x;
    Int modulus(1);
    for (const auto& [r, p] : residues) {
        const u64 xr = x.mod_u64(p);
        const u64 diff = (r % p) >= xr ? (r % p) - xr : (r % p) + p - xr;
        const u64 minv = PrimeFieldCtx{u32(p)}.inv(u32(modulus.mod_u64(p)));
        const u64 step = u64(u128(diff) * minv % p);
        x += modulus * Int::from_u64(step);
        modulus *= Int::from_u64(p);
    }
    return x;
}

}  // namespace sparseconv
