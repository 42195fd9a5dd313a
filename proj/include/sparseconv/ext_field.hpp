#pragma once

// The extension field F_p[X]/(X^(p-1) - beta) with beta primitive mod p.
// Primitivity of beta makes the modulus irreducible, and the element
// omega = X + 1 has multiplicative order at least 2^p for p >= 7 -- the two
// facts the deterministic engine builds on. Elements are coefficient vectors
// of length p-1 over F_p, always kept reduced.

#include <cmath>
#include <cstdint>
#include <vector>

#include "sparseconv/errors.hpp"
#include "sparseconv/int.hpp"
#include "sparseconv/prime_field.hpp"

namespace sparseconv {

using ExtElem = std::vector<u32>;

class ExtFieldCtx {
public:
    static ExtFieldCtx build(u32 p, const Limits& limits = default_limits()) {
        if (p < 3) throw contract_error("ExtFieldCtx: p must be an odd prime");
        if (u64(p) - 1 > limits.ext_degree_guard)
            throw guard_error("ExtFieldCtx: extension degree exceeds guard");
        ExtFieldCtx ctx;
        ctx.fp_.p = p;
        ctx.beta_ = find_primitive(p);
        ctx.d_ = p - 1;
        return ctx;
    }

    u32 p() const { return fp_.p; }
    u32 beta() const { return beta_; }
    u32 degree() const { return d_; }
    const PrimeFieldCtx& base() const { return fp_; }

    ExtElem zero() const { return ExtElem(d_, 0); }
    ExtElem from_const(u32 c) const {
        ExtElem e(d_, 0);
        e[0] = c % fp_.p;
        return e;
    }
    ExtElem one() const { return from_const(1); }
    // omega = X + 1, the distinguished large-order element
    ExtElem omega() const {
        ExtElem e(d_, 0);
        e[0] = 1;
        if (d_ > 1) e[1] = 1;
        return e;
    }

    bool is_zero(const ExtElem& a) const {
        for (u32 c : a)
            if (c) return false;
        return true;
    }

    ExtElem add(const ExtElem& a, const ExtElem& b) const {
        ExtElem r(d_);
        for (u32 i = 0; i < d_; ++i) r[i] = fp_.add(a[i], b[i]);
        return r;
    }
    ExtElem sub(const ExtElem& a, const ExtElem& b) const {
        ExtElem r(d_);
        for (u32 i = 0; i < d_; ++i) r[i] = fp_.sub(a[i], b[i]);
        return r;
    }
    ExtElem scale(const ExtElem& a, u32 c) const {
        ExtElem r(d_);
        for (u32 i = 0; i < d_; ++i) r[i] = fp_.mul(a[i], c);
        return r;
    }

    // Schoolbook coefficient product with deferred reduction; the accumulator
    // bound d * (p-1)^2 stays far below 2^64 for guarded degrees. out must
    // not alias the inputs.
    void mul_into(u32* out, const u32* a, const u32* b) const {
        thread_local std::vector<u64> scratch;
        const u32 dd = d_;
        if (scratch.size() < 2 * std::size_t(dd)) scratch.resize(2 * dd);
        u64* acc = scratch.data();
        for (u32 i = 0; i < 2 * dd - 1; ++i) acc[i] = 0;
        for (u32 i = 0; i < dd; ++i) {
            const u64 ai = a[i];
            if (!ai) continue;
            u64* row = acc + i;
            for (u32 j = 0; j < dd; ++j) row[j] += ai * b[j];
        }
        for (u32 e = 2 * dd - 2; e >= dd; --e) {
            const u64 v = acc[e] % fp_.p;
            acc[e - dd] += v * beta_;
        }
        for (u32 i = 0; i < dd; ++i) out[i] = u32(acc[i] % fp_.p);
    }

    ExtElem mul(const ExtElem& a, const ExtElem& b) const {
        ExtElem r(d_);
        mul_into(r.data(), a.data(), b.data());
        return r;
    }

    ExtElem pow(const ExtElem& a, u64 e) const {
        ExtElem r = one(), x = a;
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }

    // Inverse by extended Euclid over F_p[X] against the modulus X^d - beta.
    ExtElem inv(const ExtElem& a) const {
        if (is_zero(a)) throw contract_error("ext field: inverse of zero");
        // r0 = modulus, r1 = a; t0 = 0, t1 = 1
        std::vector<u32> r0(d_ + 1, 0), r1(a.begin(), a.end());
        r0[0] = fp_.neg(beta_);
        r0[d_] = 1;
        std::vector<u32> t0{}, t1{1};
        auto deg = [](const std::vector<u32>& f) -> int {
            for (int i = int(f.size()) - 1; i >= 0; --i)
                if (f[i]) return i;
            return -1;
        };
        while (true) {
            const int d1 = deg(r1);
            if (d1 < 0) throw internal_error("ext field: gcd with reducible modulus");
            if (d1 == 0) break;
            // r0 -= quotient * r1, and the same combination on t
            const int d0 = deg(r0);
            if (d0 < d1) {
                std::swap(r0, r1);
                std::swap(t0, t1);
                continue;
            }
            const u32 lead_inv = fp_.inv(r1[d1]);
            std::vector<u32> q(d0 - d1 + 1, 0);
            std::vector<u32> rem(r0);
            for (int k = d0; k >= d1; --k) {
                const u32 c = fp_.mul(rem[k], lead_inv);
                if (!c) continue;
                q[k - d1] = c;
                for (int j = 0; j <= d1; ++j) rem[k - d1 + j] = fp_.sub(rem[k - d1 + j], fp_.mul(c, r1[j]));
            }
            // t_next = t0 - q * t1
            std::vector<u32> tq(q.size() + t1.size(), 0);
            for (std::size_t i = 0; i < q.size(); ++i) {
                if (!q[i]) continue;
                for (std::size_t j = 0; j < t1.size(); ++j)
                    tq[i + j] = fp_.add(tq[i + j], fp_.mul(q[i], t1[j]));
            }
            std::vector<u32> tn(std::max(t0.size(), tq.size()), 0);
            for (std::size_t i = 0; i < tn.size(); ++i) {
                const u32 x = i < t0.size() ? t0[i] : 0;
                const u32 y = i < tq.size() ? tq[i] : 0;
                tn[i] = fp_.sub(x, y);
            }
            r0 = std::move(r1);
            r1 = std::move(rem);
            t0 = std::move(t1);
            t1 = std::move(tn);
        }
        const u32 scale_by = fp_.inv(r1[0]);
        ExtElem out(d_, 0);
        for (std::size_t i = 0; i < t1.size() && i < d_; ++i) out[i] = fp_.mul(t1[i], scale_by);
        return out;
    }

private:
    PrimeFieldCtx fp_;
    u32 beta_ = 0;
    u32 d_ = 0;
};

// ---- multiplicative order ----

struct OrderResult {
    bool exact = false;
    Int value;  // the order when exact, otherwise a certified lower bound
};

// Exact order when q-1 = p^(p-1) - 1 fits a word and factors by trial
// division; otherwise certifies order > cap by direct powering.
inline OrderResult multiplicative_order(const ExtFieldCtx& ctx, const ExtElem& x, u64 cap = 1 << 16) {
    if (ctx.is_zero(x)) throw contract_error("multiplicative_order: zero element");
    const double bits = double(ctx.degree()) * std::log2(double(ctx.p()));
    if (bits < 63) {
        u64 q1 = 1;
        for (u32 i = 0; i < ctx.degree(); ++i) q1 *= ctx.p();
        q1 -= 1;  // group order
        u64 order = q1;
        for (u64 f : detail::factor_u64(q1)) {
            while (order % f == 0) {
                const ExtElem probe = ctx.pow(x, order / f);
                if (probe == ctx.one()) {
                    order /= f;
                } else {
                    break;
                }
            }
        }
        OrderResult r;
        r.exact = true;
        r.value = Int::from_u64(order);
        return r;
    }
    ExtElem acc = x;
    for (u64 i = 1; i <= cap; ++i) {
        if (acc == ctx.one()) {
            OrderResult r;
            r.exact = true;
            r.value = Int::from_u64(i);
            return r;
        }
        acc = ctx.mul(acc, x);
    }
    OrderResult r;
    r.exact = false;
    r.value = Int::from_u64(cap);
    return r;
}

}  // namespace sparseconv
