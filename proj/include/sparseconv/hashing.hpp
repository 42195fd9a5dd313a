#pragma once

// The two hash families behind the randomized engines: linear hashing
// without primes, h(x) = (ax mod N) mod m with N a power of two and a random
// odd multiplier, and random-prime modular hashing h(x) = x mod p.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "sparseconv/errors.hpp"
#include "sparseconv/rng.hpp"
#include "sparseconv/vec.hpp"

namespace sparseconv {

struct LinearHash {
    Index n = 0;       // key universe [0, n); evaluation is defined on [0, 2n)
    Index m_user = 0;  // requested bucket count
    Index m_eff = 0;   // m_user when odd, else m_user - 1 (floor 1)
    Index N = 0;       // smallest power of two > n * m_eff
    Index a = 0;       // odd multiplier, 1 <= a < N

    Index eval(Index x) const { return Index((u128(a) * x) & (N - 1)) % m_eff; }

    // Residues phi with h(x) + h(y) = h(x+y) + phi (mod m_user) for all keys.
    // At most two offsets for odd m_user, at most six for even.
    std::vector<Index> phi_offsets() const {
        std::vector<Index> phi;
        const Index base[2] = {0, N % m_eff};
        if (m_user % 2 == 1) {
            phi.assign(base, base + 2);
        } else {
            for (Index b : base)
                for (Index s : {m_user - 1, Index(0), Index(1)}) phi.push_back((b + s) % m_user);
        }
        std::sort(phi.begin(), phi.end());
        phi.erase(std::unique(phi.begin(), phi.end()), phi.end());
        return phi;
    }
};

inline LinearHash sample_linear(Index n, Index m, Rng& rng) {
    if (m < 1 || n < m) throw contract_error("sample_linear: need n >= m >= 1");
    LinearHash h;
    h.n = n;
    h.m_user = m;
    h.m_eff = (m % 2 == 1) ? m : std::max<Index>(m - 1, 1);
    const u128 prod = u128(n) * h.m_eff;
    if (prod >> 62) throw guard_error("sample_linear: n * m too large for word arithmetic");
    h.N = 1;
    while (h.N <= u64(prod)) h.N <<= 1;
    h.a = 2 * rng.below(h.N / 2) + 1;
    return h;
}

inline Index eval_linear(const LinearHash& h, Index x) { return h.eval(x); }

struct PrimeHash {
    Index m = 0;  // requested bucket scale
    Index p = 0;  // prime in [m, 2m]

    Index eval(Index x) const { return x % p; }
};

// ---- prime generation ----

// Exactly the primes in [lo, hi], ascending, by a segmented deterministic sieve.
inline std::vector<Index> primes_in_range(Index lo, Index hi,
                                          const Limits& limits = default_limits()) {
    if (hi < lo) return {};
    if (hi > limits.sieve_guard) throw guard_error("primes_in_range: bound exceeds sieve guard");
    Index root = 1;
    while ((root + 1) * (root + 1) <= hi) ++root;

    std::vector<char> small(root + 1, 1);
    std::vector<Index> base;
    for (Index i = 2; i <= root; ++i) {
        if (!small[i]) continue;
        base.push_back(i);
        for (Index j = i * i; j <= root; j += i) small[j] = 0;
    }

    const Index span = hi - lo + 1;
    std::vector<char> seg(span, 1);
    for (Index p : base) {
        Index start = std::max(p * p, (lo + p - 1) / p * p);
        for (Index j = start; j <= hi; j += p) seg[j - lo] = 0;
    }
    std::vector<Index> out;
    for (Index i = 0; i < span; ++i) {
        const Index v = lo + i;
        if (v >= 2 && seg[i] && (v <= root ? small[v] : true)) out.push_back(v);
    }
    return out;
}

namespace detail {

// Sieve results for [m, 2m] memoized per m; safe under concurrent lookup.
inline std::shared_ptr<const std::vector<Index>> primes_for_interval(Index m,
                                                                     const Limits& limits) {
    static std::map<Index, std::shared_ptr<const std::vector<Index>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto primes =
        std::make_shared<const std::vector<Index>>(primes_in_range(m, 2 * m, limits));
    if (cache.size() > 512) cache.clear();
    cache.emplace(m, primes);
    return primes;
}

}  // namespace detail

inline PrimeHash sample_prime_hash(Index m, Rng& rng, const Limits& limits = default_limits()) {
    if (m < 2) throw contract_error("sample_prime_hash: need m >= 2");
    auto primes = detail::primes_for_interval(m, limits);
    if (primes->empty()) throw internal_error("sample_prime_hash: empty prime interval");
    PrimeHash h;
    h.m = m;
    h.p = (*primes)[rng.below(primes->size())];
    return h;
}

// ---- vector hashing: h(V)_j = sum of V_i over h(i) = j ----

inline DenseVec hash_vector(const LinearHash& h, const SparseVec& v) {
    DenseVec out(h.m_user);
    for (const auto& e : v.entries()) out[h.eval(e.index)] += e.value;
    return out;
}

inline DenseVec hash_vector(const PrimeHash& h, const SparseVec& v) {
    DenseVec out(h.p);
    for (const auto& e : v.entries()) out[e.index % h.p] += e.value;
    return out;
}

// Sparse image of the hashed vector, for engines that keep buckets sparse.
inline SparseVec hash_vector_sparse(const LinearHash& h, const SparseVec& v) {
    std::vector<Entry> pairs;
    pairs.reserve(v.l0());
    for (const auto& e : v.entries()) pairs.push_back({h.eval(e.index), e.value});
    return SparseVec::from_pairs(h.m_user, std::move(pairs));
}

}  // namespace sparseconv
