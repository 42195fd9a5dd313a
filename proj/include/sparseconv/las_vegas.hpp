#pragma once

// Randomized always-correct convolution engines. Every driver shares one
// safety argument: each recovery round produces R with 0 <= R <= A*B (or the
// residual A*B - C) unconditionally, folds R into C by coordinate-wise max or
// sum, and only returns C once |C|_1 equals |A|_1 * |B|_1 -- which pins
// C = A*B exactly. Randomness affects the running time, never the output.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sparseconv/dense_conv.hpp"
#include "sparseconv/errors.hpp"
#include "sparseconv/hashing.hpp"
#include "sparseconv/rng.hpp"
#include "sparseconv/sparsity.hpp"
#include "sparseconv/vec.hpp"

namespace sparseconv {

struct LvConfig {
    double epsilon = 0.5;  // tail parameter of the high-probability driver
    Limits limits;
    std::uint64_t seed = 0;  // recorded by callers; drivers consume an Rng
};

struct EngineReport {
    std::string algorithm;
    std::uint64_t seed = 0;
    std::vector<Index> m_visited;
    std::uint64_t approx_rounds = 0;
    std::uint64_t residual_rounds = 0;
    double approx_ms = 0;
    double residual_ms = 0;
    double total_ms = 0;
    Index output_l0 = 0;
};

// Debug mode: carries the externally computed product and verifies the
// monotone-safety invariant 0 <= C <= A*B at every loop boundary.
struct LvDebug {
    const SparseVec* product = nullptr;
    std::uint64_t boundaries_checked = 0;

    void boundary(const SparseVec& c) {
        ++boundaries_checked;
        if (!c.nonnegative() || !pointwise_le(c, *product))
            throw internal_error("las vegas: intermediate C escaped [0, A*B]");
    }
};

namespace detail {

// Test-only fault hook: flips bucket moments before recovery. Used by the
// self-test harness to prove that debug mode catches safety violations.
inline void (*lv_fault_hook)(DenseVec& x, DenseVec& y, DenseVec& z) = nullptr;

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

inline Index conv_length(const SparseVec& a, const SparseVec& b) {
    if (a.length() == 0 || b.length() == 0) return 0;
    return a.length() + b.length() - 1;
}

inline SparseVec dense_direct_conv(const SparseVec& a, const SparseVec& b, const Limits& limits) {
    const Index out_len = conv_length(a, b);
    const DenseVec prod = linear_conv_dense(to_dense(a, limits), to_dense(b, limits), limits);
    return from_dense(prod, out_len);
}

// Recovers all 1-sparse buckets of the moment vectors into a sparse result.
inline SparseVec recover_buckets(const DenseVec& x, const DenseVec& y, const DenseVec& z,
                                 Index max_index) {
    std::vector<Entry> pairs;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k].is_zero()) continue;
        const SparsityVerdict v = classify({x[k], y[k], z[k]}, max_index);
        if (v.is_one()) pairs.push_back({v.position, v.value});
    }
    return SparseVec::from_pairs(max_index, std::move(pairs));
}

inline double log2d(double v) { return std::log2(v); }

// ceil with a floor of one, for the paper's repeat counts at tiny parameters
inline std::uint64_t repeat_count(double v) {
    const double c = std::ceil(v);
    return c < 1 ? 1 : std::uint64_t(c);
}

}  // namespace detail

// ---- single linear-hash recovery round ----

// Samples h : [n'] -> [m], builds the bucket moment vectors
//   X = h(A) *_m h(B)
//   Y = h(dA) *_m h(B) + h(A) *_m h(dB)
//   Z = h(d2A) *_m h(B) + 2 h(dA) *_m h(dB) + h(A) *_m h(d2B)
// and returns the sum of all 1-sparse buckets. Unconditionally 0 <= R <= A*B;
// each coordinate is exact except with probability O(|A*B|_0 / m).
inline SparseVec approx_conv_linear(const SparseVec& a, const SparseVec& b, Index m, Rng& rng,
                                    const Limits& limits = default_limits()) {
    const Index out_len = detail::conv_length(a, b);
    if (m < 1) throw contract_error("approx_conv_linear: m must be >= 1");
    if (m > limits.memory_guard) throw guard_error("approx_conv_linear: m exceeds memory guard");
    if (a.empty() || b.empty()) return SparseVec(out_len);
    if (m >= out_len) return detail::dense_direct_conv(a, b, limits);

    const LinearHash h = sample_linear(out_len, m, rng);
    const DenseVec ha = hash_vector(h, a), hb = hash_vector(h, b);
    const DenseVec hda = hash_vector(h, derivative(a, 1)), hdb = hash_vector(h, derivative(b, 1));
    const DenseVec hd2a = hash_vector(h, derivative(a, 2)), hd2b = hash_vector(h, derivative(b, 2));

    DenseVec x = cyclic_conv_dense(ha, hb, m, limits);
    DenseVec y = cyclic_conv_dense(hda, hb, m, limits);
    {
        const DenseVec y2 = cyclic_conv_dense(ha, hdb, m, limits);
        for (Index k = 0; k < m; ++k) y[k] += y2[k];
    }
    DenseVec z = cyclic_conv_dense(hd2a, hb, m, limits);
    {
        const DenseVec z2 = cyclic_conv_dense(hda, hdb, m, limits);
        const DenseVec z3 = cyclic_conv_dense(ha, hd2b, m, limits);
        for (Index k = 0; k < m; ++k) z[k] += z2[k] + z2[k] + z3[k];
    }
    if (detail::lv_fault_hook) detail::lv_fault_hook(x, y, z);
    return detail::recover_buckets(x, y, z, out_len);
}

// ---- prime-hash residual recovery ----

// Samples h(x) = x mod p with a random prime p in [m, 2m] and recovers the
// 1-sparse residue classes of the nonnegative residual A*B - C.
inline SparseVec residual_recover(const SparseVec& a, const SparseVec& b, const SparseVec& c,
                                  Index m, Rng& rng, const Limits& limits = default_limits()) {
    if (m < 2) throw contract_error("residual_recover: m must be >= 2");
    if (2 * m > limits.memory_guard) throw guard_error("residual_recover: m exceeds memory guard");
    const Index out_len = detail::conv_length(a, b);
    if (a.empty() || b.empty()) return SparseVec(out_len);

    const PrimeHash h = sample_prime_hash(m, rng, limits);
    const Index p = h.p;
    const DenseVec ha = hash_vector(h, a), hb = hash_vector(h, b);
    const DenseVec hda = hash_vector(h, derivative(a, 1)), hdb = hash_vector(h, derivative(b, 1));
    const DenseVec hd2a = hash_vector(h, derivative(a, 2)), hd2b = hash_vector(h, derivative(b, 2));

    DenseVec x = cyclic_conv_dense(ha, hb, p, limits);
    DenseVec y = cyclic_conv_dense(hda, hb, p, limits);
    DenseVec z = cyclic_conv_dense(hd2a, hb, p, limits);
    {
        const DenseVec y2 = cyclic_conv_dense(ha, hdb, p, limits);
        const DenseVec z2 = cyclic_conv_dense(hda, hdb, p, limits);
        const DenseVec z3 = cyclic_conv_dense(ha, hd2b, p, limits);
        for (Index k = 0; k < p; ++k) {
            y[k] += y2[k];
            z[k] += z2[k] + z2[k] + z3[k];
        }
    }
    {
        const DenseVec hc = hash_vector(h, c);
        const DenseVec hdc = hash_vector(h, derivative(c, 1));
        const DenseVec hd2c = hash_vector(h, derivative(c, 2));
        for (Index k = 0; k < p; ++k) {
            x[k] -= hc[k];
            y[k] -= hdc[k];
            z[k] -= hd2c[k];
        }
    }
    if (detail::lv_fault_hook) detail::lv_fault_hook(x, y, z);
    return detail::recover_buckets(x, y, z, out_len);
}

// ---- drivers ----

// Doubling-m driver: per m, runs max(1, ceil(2 log2 m)) recovery rounds and
// keeps their coordinate-wise maximum; returns once the mass check fires.
inline SparseVec simple_las_vegas(const SparseVec& a, const SparseVec& b, Rng& rng,
                                  const LvConfig& cfg = {}, EngineReport* report = nullptr,
                                  LvDebug* debug = nullptr) {
    detail::Stopwatch clock;
    if (report) report->algorithm = "lv-simple";
    const Index out_len = detail::conv_length(a, b);
    const Int target = mass(a) * mass(b);
    SparseVec c(out_len);
    for (Index m = 1;; m *= 2) {
        if (m > cfg.limits.memory_guard)
            throw guard_error("simple_las_vegas: bucket count exceeds memory guard");
        if (report) report->m_visited.push_back(m);
        const std::uint64_t rounds = detail::repeat_count(2 * detail::log2d(double(m)));
        c = SparseVec(out_len);
        for (std::uint64_t r = 0; r < rounds; ++r) {
            c = pointwise_max(c, approx_conv_linear(a, b, m, rng, cfg.limits));
            if (report) ++report->approx_rounds;
            if (debug) debug->boundary(c);
        }
        if (mass(c) == target) break;
    }
    if (report) {
        report->total_ms = clock.ms();
        report->approx_ms = report->total_ms;
        report->output_l0 = c.l0();
    }
    return c;
}

// Careful-schedule driver with tail guarantees: for mu = 0,1,2,... and
// nu = 0..mu it runs max(1, ceil(mu * 2^(nu/(1+eps)))) rounds at m = 2^(mu-nu),
// folding every round into C and checking the mass after each update.
inline SparseVec high_prob_las_vegas(const SparseVec& a, const SparseVec& b, const LvConfig& cfg,
                                     Rng& rng, EngineReport* report = nullptr,
                                     LvDebug* debug = nullptr) {
    if (!(cfg.epsilon > 0)) throw contract_error("high_prob_las_vegas: epsilon must be > 0");
    detail::Stopwatch clock;
    if (report) report->algorithm = "lv-hp";
    const Index out_len = detail::conv_length(a, b);
    const Int target = mass(a) * mass(b);
    SparseVec c(out_len);
    if (mass(c) == target) {  // empty inputs terminate before any sampling
        if (report) report->total_ms = clock.ms(), report->output_l0 = 0;
        return c;
    }
    for (std::uint64_t mu = 0;; ++mu) {
        for (std::uint64_t nu = 0; nu <= mu; ++nu) {
            if (mu - nu >= 63)
                throw guard_error("high_prob_las_vegas: bucket count exceeds word size");
            const Index m = Index(1) << (mu - nu);
            if (m > cfg.limits.memory_guard)
                throw guard_error("high_prob_las_vegas: bucket count exceeds memory guard");
            if (report) report->m_visited.push_back(m);
            const std::uint64_t rounds =
                detail::repeat_count(double(mu) * std::pow(2.0, double(nu) / (1.0 + cfg.epsilon)));
            for (std::uint64_t r = 0; r < rounds; ++r) {
                c = pointwise_max(c, approx_conv_linear(a, b, m, rng, cfg.limits));
                if (report) ++report->approx_rounds;
                if (debug) debug->boundary(c);
                if (mass(c) == target) {
                    if (report) {
                        report->total_ms = clock.ms();
                        report->approx_ms = report->total_ms;
                        report->output_l0 = c.l0();
                    }
                    return c;
                }
            }
        }
    }
}

// Accelerated driver: a few linear-hash rounds leave a sparse residual, which
// cheap prime-hash rounds then clear; C grows monotonically under both folds.
inline SparseVec fast_las_vegas(const SparseVec& a, const SparseVec& b, Rng& rng,
                                const LvConfig& cfg = {}, EngineReport* report = nullptr,
                                LvDebug* debug = nullptr) {
    detail::Stopwatch clock;
    if (report) report->algorithm = "lv-fast";
    const Index out_len = detail::conv_length(a, b);
    const Int target = mass(a) * mass(b);
    SparseVec c(out_len);
    if (mass(c) == target) {
        if (report) report->total_ms = clock.ms(), report->output_l0 = 0;
        return c;
    }
    const double log_n = detail::log2d(double(std::max<Index>(out_len, 4)));
    const std::uint64_t phase1_rounds = detail::repeat_count(3 * std::log2(log_n));
    for (Index m = 1;; m *= 2) {
        if (m > cfg.limits.memory_guard)
            throw guard_error("fast_las_vegas: bucket count exceeds memory guard");
        if (report) report->m_visited.push_back(m);
        detail::Stopwatch phase1;
        for (std::uint64_t r = 0; r < phase1_rounds; ++r) {
            c = pointwise_max(c, approx_conv_linear(a, b, m, rng, cfg.limits));
            if (report) ++report->approx_rounds;
            if (debug) debug->boundary(c);
        }
        if (report) report->approx_ms += phase1.ms();
        detail::Stopwatch phase2;
        const Index m_res = std::max<Index>(2, Index(std::ceil(double(m) / log_n)));
        const std::uint64_t phase2_rounds = detail::repeat_count(2 * detail::log2d(double(m)));
        for (std::uint64_t r = 0; r < phase2_rounds; ++r) {
            c = pointwise_add(c, residual_recover(a, b, c, m_res, rng, cfg.limits));
            if (report) ++report->residual_rounds;
            if (debug) debug->boundary(c);
        }
        if (report) report->residual_ms += phase2.ms();
        if (mass(c) == target) break;
    }
    if (report) {
        report->total_ms = clock.ms();
        report->output_l0 = c.l0();
    }
    return c;
}

// ---- top-level entry: length reduction ----

// Hashes both inputs into a universe of size |A|_0^3 * |B|_0^3, computes the
// three bucket-moment vectors with the accelerated driver (the hashed vectors
// are sparse), and reads the product off the 1-sparse buckets. When the
// reduced universe would not be smaller than the output, the accelerated
// driver is already in its fast regime and runs directly.
inline SparseVec sparse_conv(const SparseVec& a, const SparseVec& b, Rng& rng,
                             const LvConfig& cfg = {}, EngineReport* report = nullptr,
                             LvDebug* debug = nullptr) {
    detail::Stopwatch clock;
    if (report) report->algorithm = "lv-full";
    const Index out_len = detail::conv_length(a, b);
    if (a.empty() || b.empty()) {
        if (report) report->total_ms = clock.ms(), report->output_l0 = 0;
        return SparseVec(out_len);
    }
    const Int m_big = Int::from_u64(a.l0()) * Int::from_u64(a.l0()) * Int::from_u64(a.l0()) *
                      Int::from_u64(b.l0()) * Int::from_u64(b.l0()) * Int::from_u64(b.l0());
    if (m_big >= Int::from_u64(out_len)) {
        SparseVec c = fast_las_vegas(a, b, rng, cfg, report, debug);
        if (report) report->algorithm = "lv-full", report->total_ms = clock.ms();
        return c;
    }
    const Index m = m_big.as_u64();
    if (m > cfg.limits.memory_guard)
        throw guard_error("sparse_conv: reduced universe exceeds memory guard");

    const Int target = mass(a) * mass(b);
    const SparseVec da = derivative(a, 1), db = derivative(b, 1);
    const SparseVec d2a = derivative(a, 2), d2b = derivative(b, 2);
    for (;;) {
        if (report) report->m_visited.push_back(m);
        const LinearHash h = sample_linear(out_len, m, rng);
        const SparseVec ha = hash_vector_sparse(h, a), hb = hash_vector_sparse(h, b);
        const SparseVec hda = hash_vector_sparse(h, da), hdb = hash_vector_sparse(h, db);
        const SparseVec hd2a = hash_vector_sparse(h, d2a), hd2b = hash_vector_sparse(h, d2b);

        auto conv_m = [&](const SparseVec& u, const SparseVec& v) {
            return fold_mod(fast_las_vegas(u, v, rng, cfg), m);
        };
        const SparseVec x = conv_m(ha, hb);
        const SparseVec y = pointwise_add(conv_m(hda, hb), conv_m(ha, hdb));
        const SparseVec z2 = conv_m(hda, hdb);
        const SparseVec z =
            pointwise_add(conv_m(hd2a, hb), pointwise_add(pointwise_add(z2, z2), conv_m(ha, hd2b)));

        // classify every bucket with nonzero X; Y and Z are looked up by key
        std::vector<Entry> pairs;
        auto iy = y.entries().begin();
        auto iz = z.entries().begin();
        for (const auto& ex : x.entries()) {
            while (iy != y.entries().end() && iy->index < ex.index) ++iy;
            while (iz != z.entries().end() && iz->index < ex.index) ++iz;
            BucketMoments mom;
            mom.x = ex.value;
            if (iy != y.entries().end() && iy->index == ex.index) mom.y = iy->value;
            if (iz != z.entries().end() && iz->index == ex.index) mom.z = iz->value;
            const SparsityVerdict v = classify(mom, out_len);
            if (v.is_one()) pairs.push_back({v.position, v.value});
        }
        SparseVec c = SparseVec::from_pairs(out_len, std::move(pairs));
        if (debug) debug->boundary(c);
        if (mass(c) == target) {
            if (report) {
                report->total_ms = clock.ms();
                report->output_l0 = c.l0();
            }
            return c;
        }
    }
}

}  // namespace sparseconv
