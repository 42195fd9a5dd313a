#pragma once

// Exact linear and cyclic convolution of dense integer vectors. Entries are
// reduced modulo word-sized NTT-friendly primes, transformed per prime, and
// reconstructed by CRT with a symmetric lift, so arbitrary-precision (and
// signed) coefficients come back exactly. Floating-point transforms are
// deliberately absent: every caller depends on exact equalities.

#include <cstdint>
#include <mutex>
#include <vector>

#include "sparseconv/errors.hpp"
#include "sparseconv/int.hpp"
#include "sparseconv/vec.hpp"

namespace sparseconv {

namespace detail {

// ---- Montgomery arithmetic for odd moduli < 2^63 ----

struct MontPrime {
    u64 p = 0;
    u64 ninv = 0;  // -p^{-1} mod 2^64
    u64 r2 = 0;    // 2^128 mod p
    u64 g = 0;     // multiplicative generator
    int two_adicity = 0;

    void init(u64 prime) {
        p = prime;
        u64 inv = p;  // Newton: inv *= 2 - p*inv doubles correct bits
        for (int i = 0; i < 5; ++i) inv *= 2 - p * inv;
        ninv = -inv;
        const u128 r = (u128(1) << 64) % p;
        r2 = u64(r * r % p);
    }

    u64 redc(u128 t) const {
        const u64 m = u64(t) * ninv;
        const u64 hi = u64((t + u128(m) * p) >> 64);
        return hi >= p ? hi - p : hi;
    }
    u64 mul(u64 a, u64 b) const { return redc(u128(a) * b); }
    u64 to_mont(u64 a) const { return mul(a, r2); }
    u64 from_mont(u64 a) const { return redc(a); }
    u64 add(u64 a, u64 b) const {
        const u64 s = a + b;
        return s >= p ? s - p : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 pow(u64 base_mont, u64 e) const {
        u64 r = to_mont(1), x = base_mont;
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }
};

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

inline u64 powmod_u64(u64 base, u64 e, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// NTT primes of the form c * 2^28 + 1 just under 2^62, found deterministically
// at first use; 2^28 bounds the transform length.
inline constexpr int kNttLog = 28;

inline const std::vector<MontPrime>& ntt_primes(std::size_t count) {
    static std::vector<MontPrime> primes;
    static std::mutex mu;
    static u64 next_c = (u64(1) << (62 - kNttLog)) - 1;
    std::lock_guard<std::mutex> lock(mu);
    while (primes.size() < count) {
        for (;; --next_c) {
            if (next_c == 0) throw internal_error("ntt_primes: ladder exhausted");
            const u64 p = (next_c << kNttLog) + 1;
            if (!is_prime_u64(p)) continue;
            // factor p-1 = 2^28 * c to certify a generator
            std::vector<u64> factors{2};
            u64 c = next_c;
            for (u64 f = 3; f * f <= c && f < (1u << 20); f += 2) {
                if (c % f == 0) {
                    factors.push_back(f);
                    while (c % f == 0) c /= f;
                }
            }
            if (c > 1) {
                if (!is_prime_u64(c)) continue;  // incomplete factorization; skip candidate
                factors.push_back(c);
            }
            u64 g = 0;
            for (u64 cand = 2; cand < 1000; ++cand) {
                bool ok = true;
                for (u64 f : factors) {
                    if (powmod_u64(cand, (p - 1) / f, p) == 1) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    g = cand;
                    break;
                }
            }
            if (g == 0) continue;
            MontPrime mp;
            mp.init(p);
            mp.g = g;
            mp.two_adicity = kNttLog;
            primes.push_back(mp);
            --next_c;
            break;
        }
    }
    return primes;
}

// Per-thread root tables; regrown when a larger transform shows up.
struct NttTables {
    u64 p = 0;
    std::size_t n = 0;
    std::vector<u64> root, iroot;  // Montgomery domain, root[i] = w^i for w of order n
    std::vector<u64> inv_n_mont;   // inv(2^k) per log
};

inline NttTables& ntt_tables(const MontPrime& mp, std::size_t n) {
    thread_local std::vector<NttTables> cache;
    NttTables* slot = nullptr;
    for (auto& t : cache) {
        if (t.p == mp.p) {
            slot = &t;
            break;
        }
    }
    if (!slot) {
        cache.emplace_back();
        slot = &cache.back();
        slot->p = mp.p;
    }
    if (slot->n >= n) return *slot;
    slot->n = n;
    const int logn = __builtin_ctzll(n);
    const u64 w = mp.pow(mp.to_mont(mp.g), (mp.p - 1) >> logn);
    const u64 iw = mp.pow(w, mp.p - 2);
    slot->root.assign(n, 0);
    slot->iroot.assign(n, 0);
    slot->root[0] = slot->iroot[0] = mp.to_mont(1);
    for (std::size_t i = 1; i < n; ++i) {
        slot->root[i] = mp.mul(slot->root[i - 1], w);
        slot->iroot[i] = mp.mul(slot->iroot[i - 1], iw);
    }
    slot->inv_n_mont.assign(logn + 1, 0);
    const u64 inv2 = mp.pow(mp.to_mont(2), mp.p - 2);
    slot->inv_n_mont[0] = mp.to_mont(1);
    for (int k = 1; k <= logn; ++k) slot->inv_n_mont[k] = mp.mul(slot->inv_n_mont[k - 1], inv2);
    return *slot;
}

inline void ntt_inplace(const MontPrime& mp, std::vector<u64>& a, bool invert) {
    const std::size_t n = a.size();
    if (n == 1) return;
    const NttTables& tab = ntt_tables(mp, n);
    const std::size_t table_n = tab.n;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const std::vector<u64>& roots = invert ? tab.iroot : tab.root;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t step = table_n / len;
        for (std::size_t i = 0; i < n; i += len) {
            std::size_t r = 0;
            for (std::size_t j = 0; j < half; ++j, r += step) {
                const u64 u = a[i + j];
                const u64 v = mp.mul(a[i + j + half], roots[r]);
                a[i + j] = mp.add(u, v);
                a[i + j + half] = mp.sub(u, v);
            }
        }
    }
    if (invert) {
        const u64 inv_n = tab.inv_n_mont[__builtin_ctzll(n)];
        for (auto& x : a) x = mp.mul(x, inv_n);
    }
}

// Linear convolution of residues (values already reduced mod mp.p).
inline std::vector<u64> conv_mod(const MontPrime& mp, const std::vector<u64>& a,
                                 const std::vector<u64>& b) {
    const std::size_t out_len = a.size() + b.size() - 1;
    std::size_t L = 1;
    while (L < out_len) L <<= 1;
    if (L > (std::size_t(1) << kNttLog)) throw guard_error("conv_mod: transform too long");
    std::vector<u64> fa(L, 0), fb(L, 0);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = mp.to_mont(a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = mp.to_mont(b[i]);
    ntt_inplace(mp, fa, false);
    ntt_inplace(mp, fb, false);
    for (std::size_t i = 0; i < L; ++i) fa[i] = mp.mul(fa[i], fb[i]);
    ntt_inplace(mp, fa, true);
    fa.resize(out_len);
    for (auto& x : fa) x = mp.from_mont(x);
    return fa;
}

}  // namespace detail

// ---- plans ----

// A plan fixes the prime set for one convolution: enough primes that their
// product strictly exceeds twice the worst-case coefficient magnitude (the
// factor two leaves room for the symmetric lift of signed results).
struct NttPlan {
    std::vector<detail::MontPrime> primes;
    Int modulus;                        // product of the primes
    std::vector<std::vector<u64>> inv;  // inv[i][j] = p_j^{-1} mod p_i, j < i

    static NttPlan for_bound(const Int& coeff_bound) {
        NttPlan plan;
        plan.modulus = Int(1);
        const Int need = coeff_bound * Int(2);
        std::size_t k = 0;
        while (plan.modulus <= need) {
            const auto& ladder = detail::ntt_primes(k + 1);
            plan.primes.push_back(ladder[k]);
            plan.modulus *= Int::from_u64(ladder[k].p);
            ++k;
        }
        plan.inv.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            const u64 pi = plan.primes[i].p;
            plan.inv[i].resize(i);
            for (std::size_t j = 0; j < i; ++j)
                plan.inv[i][j] = detail::powmod_u64(plan.primes[j].p % pi, pi - 2, pi);
        }
        return plan;
    }
};

namespace detail {

inline Int max_abs(const DenseVec& v) {
    Int m;
    for (const auto& x : v) {
        Int a = x.abs();
        if (a > m) m = a;
    }
    return m;
}

// Garner reconstruction of one coefficient from its residues, lifted into
// (-P/2, P/2].
inline Int crt_lift(const NttPlan& plan, const std::vector<std::vector<u64>>& residues,
                    std::size_t idx) {
    const std::size_t k = plan.primes.size();
    std::vector<u64> mixed(k);
    for (std::size_t i = 0; i < k; ++i) {
        const u64 pi = plan.primes[i].p;
        u64 t = residues[i][idx] % pi;
        for (std::size_t j = 0; j < i; ++j) {
            const u64 mj = mixed[j] % pi;
            const u64 diff = t >= mj ? t - mj : t + pi - mj;
            t = mulmod_u64(diff, plan.inv[i][j], pi);
        }
        mixed[i] = t;
    }
    Int x;
    for (std::size_t i = k; i-- > 0;) {
        x = x * plan.primes[i].p + Int::from_u64(mixed[i]);
    }
    Int twice = x * Int(2);
    if (twice > plan.modulus) x -= plan.modulus;
    return x;
}

}  // namespace detail

// ---- public operations ----

// Schoolbook double loop; the reference for the NTT path and the path of
// choice for tiny instances. Optional m folds the result cyclically.
inline DenseVec conv_schoolbook(const DenseVec& a, const DenseVec& b, Index m = 0,
                                const Limits& limits = default_limits()) {
    if (a.empty() || b.empty()) return m ? DenseVec(m) : DenseVec{};
    if (u128(a.size()) * b.size() > limits.schoolbook_guard)
        throw guard_error("conv_schoolbook: product count exceeds the guard");
    DenseVec out(m ? m : a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            const std::size_t k = m ? (i + j) % m : i + j;
            out[k] += a[i] * b[j];
        }
    }
    return out;
}

inline DenseVec linear_conv_dense(const DenseVec& a, const DenseVec& b,
                                  const Limits& limits = default_limits()) {
    if (a.empty() || b.empty()) return {};
    const std::size_t out_len = a.size() + b.size() - 1;
    if (out_len > limits.memory_guard)
        throw guard_error("linear_conv_dense: output exceeds the memory guard");
    if (out_len < 64) return conv_schoolbook(a, b, 0, limits);

    const Int bound = Int::from_u64(std::min(a.size(), b.size())) * detail::max_abs(a) *
                      detail::max_abs(b);
    if (bound.is_zero()) return DenseVec(out_len);
    const NttPlan plan = NttPlan::for_bound(bound);

    std::vector<std::vector<u64>> residues(plan.primes.size());
    for (std::size_t pi = 0; pi < plan.primes.size(); ++pi) {
        const auto& mp = plan.primes[pi];
        std::vector<u64> ra(a.size()), rb(b.size());
        for (std::size_t i = 0; i < a.size(); ++i) ra[i] = a[i].mod_u64(mp.p);
        for (std::size_t i = 0; i < b.size(); ++i) rb[i] = b[i].mod_u64(mp.p);
        residues[pi] = detail::conv_mod(mp, ra, rb);
    }
    DenseVec out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] = detail::crt_lift(plan, residues, i);
    return out;
}

// Cyclic convolution: index-wise mod-m fold of the linear result.
inline DenseVec cyclic_conv_dense(const DenseVec& a, const DenseVec& b, Index m,
                                  const Limits& limits = default_limits()) {
    if (m == 0) throw contract_error("cyclic_conv_dense: m must be >= 1");
    if (a.empty() || b.empty()) return DenseVec(m);
    if (m < 64 && u128(a.size()) * b.size() <= limits.schoolbook_guard)
        return conv_schoolbook(a, b, m, limits);
    DenseVec lin = linear_conv_dense(a, b, limits);
    DenseVec out(m);
    for (std::size_t i = 0; i < lin.size(); ++i) {
        if (!lin[i].is_zero()) out[i % m] += lin[i];
    }
    return out;
}

// ---- word-sized fast path ----
// Exact convolution of u64 sequences whose coefficient bound is certified by
// the caller; used by the Kronecker-substitution polynomial kernels where
// entries are small field residues.
inline std::vector<u64> conv_u64_exact(const std::vector<u64>& a, const std::vector<u64>& b,
                                       u64 max_a, u64 max_b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t out_len = a.size() + b.size() - 1;
    const u128 prod = u128(max_a) * max_b;
    const u128 bound = prod * std::min(a.size(), b.size());
    if (bound / std::min(a.size(), b.size()) != prod)
        throw internal_error("conv_u64_exact: bound overflows 128 bits");
    if (out_len < 32 && !(bound >> 64)) {
        std::vector<u64> out(out_len, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return out;
    }
    const auto& ladder = detail::ntt_primes(2);
    const auto& p0 = ladder[0];
    if (bound < p0.p) {
        std::vector<u64> ra(a), rb(b);
        return detail::conv_mod(p0, ra, rb);
    }
    const auto& p1 = ladder[1];
    if (bound >= u128(p0.p) * p1.p)
        throw internal_error("conv_u64_exact: bound exceeds two-prime capacity");
    std::vector<u64> ra(a.size()), rb(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) ra[i] = a[i] % p0.p;
    for (std::size_t i = 0; i < b.size(); ++i) rb[i] = b[i] % p0.p;
    std::vector<u64> r0 = detail::conv_mod(p0, ra, rb);
    for (std::size_t i = 0; i < a.size(); ++i) ra[i] = a[i] % p1.p;
    for (std::size_t i = 0; i < b.size(); ++i) rb[i] = b[i] % p1.p;
    std::vector<u64> r1 = detail::conv_mod(p1, ra, rb);
    // two-prime Garner into u128, result guaranteed below the bound
    const u64 inv01 = detail::powmod_u64(p0.p % p1.p, p1.p - 2, p1.p);
    std::vector<u64> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) {
        const u64 d = r1[i] >= r0[i] % p1.p ? r1[i] - r0[i] % p1.p : r1[i] + p1.p - r0[i] % p1.p;
        const u64 t = detail::mulmod_u64(d, inv01, p1.p);
        const u128 val = u128(t) * p0.p + r0[i];
        if (val >> 64) throw internal_error("conv_u64_exact: fold-back overflow");
        out[i] = u64(val);
    }
    return out;
}

}  // namespace sparseconv
