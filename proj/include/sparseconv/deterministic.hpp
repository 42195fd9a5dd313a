#pragma once

// The fully deterministic engine: a support superset is computed recursively
// by folding both inputs in half, then the convolution is evaluated and
// interpolated over a battery of small extension fields F_p[X]/(X^(p-1)-beta)
// whose omega = X+1 has provably large order, and the integer entries are
// recovered by Chinese remaindering. No randomness anywhere on this path:
// outputs and prime plans are pure functions of the inputs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

#include "sparseconv/dense_conv.hpp"
#include "sparseconv/errors.hpp"
#include "sparseconv/ext_field.hpp"
#include "sparseconv/hashing.hpp"
#include "sparseconv/prime_field.hpp"
#include "sparseconv/vandermonde.hpp"
#include "sparseconv/vec.hpp"

namespace sparseconv {

namespace detail {

inline u64 ceil_log2_int(const Int& v) {
    if (v <= Int(1)) return 0;
    Int m = v - Int(1);
    return m.bit_length();
}

inline const ExtFieldCtx& ext_field_for(u32 p, const Limits& limits) {
    static std::map<u32, std::unique_ptr<ExtFieldCtx>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it == cache.end())
        it = cache.emplace(p, std::make_unique<ExtFieldCtx>(ExtFieldCtx::build(p, limits))).first;
    return *it->second;
}

}  // namespace detail

// Prime battery for one convolution. Every prime exceeds
// max(ceil(log2 n'), 6), so omega's order bound 2^p covers the output length
// and the order lemma applies; enough primes are taken that their product
// reaches 2^(bitlen(n') + bitlen(|A|_inf) + bitlen(|B|_inf)) >= n'|A|inf|B|inf,
// which bounds every output entry.
struct PrimePlan {
    std::vector<u32> primes;
    Int modulus;

    static PrimePlan build(const Int& n_prime, const Int& a_inf, const Int& b_inf, bool signed_lift,
                           const Limits& limits = default_limits()) {
        const u64 threshold = std::max<u64>(detail::ceil_log2_int(n_prime), 6);
        u64 need_bits = u64(n_prime.bit_length()) + a_inf.bit_length() + b_inf.bit_length();
        PrimePlan plan;
        plan.modulus = Int(1);
        u64 lo = threshold + 1, span = std::max<u64>(threshold, 16);
        std::size_t extra = signed_lift ? 1 : 0;
        while (true) {
            for (Index p : primes_in_range(lo, lo + span, limits)) {
                if (plan.modulus.bit_length() > need_bits) {
                    if (extra == 0) return plan;
                    --extra;
                }
                plan.primes.push_back(u32(p));
                plan.modulus *= Int::from_u64(p);
            }
            lo += span + 1;
        }
    }
};

struct DetReport {
    double total_ms = 0;
    std::size_t top_level_primes = 0;
    std::size_t top_level_support = 0;  // |T| at the outermost call
    Index output_l0 = 0;
};

// Algorithm contract: T must cover supp(A*B); returns exactly A*B. Accepts
// signed inputs (the public deterministic entry restricts to nonnegative
// because the support recursion needs it).
inline SparseVec conv_with_support(const SparseVec& a, const SparseVec& b,
                                   const std::vector<Index>& t_set, unsigned threads = 1,
                                   const Limits& limits = default_limits()) {
    const Index out_len =
        (a.length() && b.length()) ? a.length() + b.length() - 1 : 0;
    if (a.empty() || b.empty() || t_set.empty()) return SparseVec(out_len);

    std::vector<Index> support(t_set);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    if (support.back() >= out_len) throw contract_error("conv_with_support: T outside output range");

    const Norms na = norms(a), nb = norms(b);
    const bool signed_lift = !a.nonnegative() || !b.nonnegative();
    Int n_prime = Int::from_u64(std::max(a.length(), b.length()));
    if (na.linf > n_prime) n_prime = na.linf;
    if (nb.linf > n_prime) n_prime = nb.linf;
    const PrimePlan plan = PrimePlan::build(n_prime, na.linf, nb.linf, signed_lift, limits);

    const std::size_t k = plan.primes.size();
    const std::size_t s = support.size();
    std::vector<std::vector<u64>> residues(k, std::vector<u64>(s, 0));

    auto run_prime = [&](std::size_t pi) {
        const u32 p = plan.primes[pi];
        const ExtFieldCtx& ctx = detail::ext_field_for(p, limits);
        const ExtElem omega = ctx.omega();
        auto reduce = [&](const SparseVec& v) {
            SparsePolyFq f;
            f.exps.reserve(v.l0());
            f.coeffs.reserve(v.l0());
            for (const auto& e : v.entries()) {
                const u32 r = u32(e.value.mod_u64(p));
                if (r == 0) continue;
                f.exps.push_back(e.index);
                f.coeffs.push_back(ctx.from_const(r));
            }
            return f;
        };
        const SparsePolyFq cp = field_sparse_conv(ctx, reduce(a), reduce(b), support, omega);
        // collect residues aligned with the support set; pruned entries are 0
        std::size_t j = 0;
        for (std::size_t i = 0; i < cp.exps.size(); ++i) {
            while (j < s && support[j] < cp.exps[i]) ++j;
            if (j >= s || support[j] != cp.exps[i])
                throw internal_error("conv_with_support: interpolation escaped T");
            const ExtElem& c = cp.coeffs[i];
            for (std::size_t w = 1; w < c.size(); ++w)
                if (c[w]) throw internal_error("conv_with_support: non-scalar field result");
            residues[pi][j] = c[0];
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, unsigned(k)));
    if (workers == 1) {
        for (std::size_t pi = 0; pi < k; ++pi) run_prime(pi);
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mu;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t pi = w; pi < k; pi += workers) run_prime(pi);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    std::vector<Entry> out;
    std::vector<std::pair<u64, u64>> rp(k);
    for (std::size_t j = 0; j < s; ++j) {
        for (std::size_t pi = 0; pi < k; ++pi) rp[pi] = {residues[pi][j], plan.primes[pi]};
        Int value = crt_reconstruct(rp);
        if (signed_lift && value * Int(2) > plan.modulus) value -= plan.modulus;
        if (!value.is_zero()) out.push_back({support[j], std::move(value)});
    }
    return SparseVec::from_sorted(out_len, std::move(out));
}

namespace detail {

inline SparseVec small_dense_conv(const SparseVec& a, const SparseVec& b, const Limits& limits) {
    const Index out_len = (a.length() && b.length()) ? a.length() + b.length() - 1 : 0;
    if (a.empty() || b.empty()) return SparseVec(out_len);
    return from_dense(conv_schoolbook(to_dense(a, limits), to_dense(b, limits), 0, limits),
                      out_len);
}

}  // namespace detail

inline SparseVec deterministic_conv(const SparseVec& a, const SparseVec& b, unsigned threads = 1,
                                    DetReport* report = nullptr,
                                    const Limits& limits = default_limits());

// Support superset by the folding recursion: both inputs are folded in half at
// h = ceil(n/2), the folded product is computed recursively, and each of its
// support indices k' expands into candidates {k', k'+h, k'+2h}. Nonnegativity
// makes folding cancellation-free, so the candidates cover supp(A*B).
inline std::vector<Index> support_superset(const SparseVec& a, const SparseVec& b,
                                           unsigned threads = 1,
                                           const Limits& limits = default_limits()) {
    if (a.empty() || b.empty()) return {};
    const Index n = std::max(a.length(), b.length());
    const Index out_len = a.length() + b.length() - 1;
    if (n <= 8) {
        const SparseVec c = detail::small_dense_conv(a, b, limits);
        std::vector<Index> t;
        for (const auto& e : c.entries()) t.push_back(e.index);
        return t;
    }
    const Index half = (n + 1) / 2;
    const SparseVec a_pad = SparseVec::from_sorted(n, std::vector<Entry>(a.entries()));
    const SparseVec b_pad = SparseVec::from_sorted(n, std::vector<Entry>(b.entries()));
    const SparseVec c_folded = deterministic_conv(fold_half(a_pad), fold_half(b_pad), threads,
                                                  nullptr, limits);
    std::vector<Index> t;
    t.reserve(3 * c_folded.l0());
    for (const auto& e : c_folded.entries()) {
        for (unsigned step = 0; step < 3; ++step) {
            const Index cand = e.index + Index(step) * half;
            if (cand < out_len) t.push_back(cand);
        }
    }
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    return t;
}

inline SparseVec deterministic_conv(const SparseVec& a, const SparseVec& b, unsigned threads,
                                    DetReport* report, const Limits& limits) {
    if (!a.nonnegative() || !b.nonnegative())
        throw contract_error("deterministic_conv: inputs must be nonnegative");
    const auto t0 = std::chrono::steady_clock::now();
    const Index out_len = (a.length() && b.length()) ? a.length() + b.length() - 1 : 0;
    SparseVec c(out_len);
    if (!a.empty() && !b.empty()) {
        const Index n = std::max(a.length(), b.length());
        if (n <= 8) {
            c = detail::small_dense_conv(a, b, limits);
        } else {
            const std::vector<Index> t_set = support_superset(a, b, threads, limits);
            if (report) report->top_level_support = t_set.size();
            c = conv_with_support(a, b, t_set, threads, limits);
        }
    }
    if (report) {
        report->total_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
        report->output_l0 = c.l0();
        if (!a.empty() && !b.empty()) {
            const Norms na = norms(a), nb = norms(b);
            Int n_prime = Int::from_u64(std::max(a.length(), b.length()));
            if (na.linf > n_prime) n_prime = na.linf;
            if (nb.linf > n_prime) n_prime = nb.linf;
            report->top_level_primes =
                PrimePlan::build(n_prime, na.linf, nb.linf, false, limits).primes.size();
        }
    }
    return c;
}

}  // namespace sparseconv
