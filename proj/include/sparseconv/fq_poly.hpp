#pragma once

// Dense polynomials over the extension field, stored flat: coefficient i of a
// length-n polynomial occupies words [i*d, (i+1)*d). Multiplication maps the
// bivariate picture F_p[X][Y] onto a single integer convolution by Kronecker
// substitution (stride 2d-1 keeps X-products from overlapping), which lands in
// the exact NTT machinery; everything stays word-exact.

#include <cstdint>
#include <vector>

#include "sparseconv/dense_conv.hpp"
#include "sparseconv/errors.hpp"
#include "sparseconv/ext_field.hpp"

namespace sparseconv {

struct FqPoly {
    std::vector<u32> c;  // flat, length = coeff count * ctx.degree()

    std::size_t len(const ExtFieldCtx& ctx) const { return c.size() / ctx.degree(); }
};

namespace fq {

inline FqPoly make(const ExtFieldCtx& ctx, std::size_t n) {
    FqPoly f;
    f.c.assign(n * ctx.degree(), 0);
    return f;
}

inline u32* coeff(const ExtFieldCtx& ctx, FqPoly& f, std::size_t i) {
    return f.c.data() + i * ctx.degree();
}
inline const u32* coeff(const ExtFieldCtx& ctx, const FqPoly& f, std::size_t i) {
    return f.c.data() + i * ctx.degree();
}

inline void set_coeff(const ExtFieldCtx& ctx, FqPoly& f, std::size_t i, const ExtElem& v) {
    for (u32 j = 0; j < ctx.degree(); ++j) f.c[i * ctx.degree() + j] = v[j];
}

inline ExtElem get_coeff(const ExtFieldCtx& ctx, const FqPoly& f, std::size_t i) {
    ExtElem v(ctx.degree());
    for (u32 j = 0; j < ctx.degree(); ++j) v[j] = f.c[i * ctx.degree() + j];
    return v;
}

inline bool coeff_is_zero(const ExtFieldCtx& ctx, const FqPoly& f, std::size_t i) {
    for (u32 j = 0; j < ctx.degree(); ++j)
        if (f.c[i * ctx.degree() + j]) return false;
    return true;
}

// index of the highest nonzero coefficient, or -1 for the zero polynomial
inline std::ptrdiff_t degree(const ExtFieldCtx& ctx, const FqPoly& f) {
    for (std::ptrdiff_t i = std::ptrdiff_t(f.len(ctx)) - 1; i >= 0; --i)
        if (!coeff_is_zero(ctx, f, i)) return i;
    return -1;
}

inline FqPoly truncate(const ExtFieldCtx& ctx, const FqPoly& f, std::size_t n) {
    FqPoly out = make(ctx, n);
    const std::size_t take = std::min(n, f.len(ctx)) * ctx.degree();
    std::copy(f.c.begin(), f.c.begin() + take, out.c.begin());
    return out;
}

inline FqPoly add(const ExtFieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
    const auto& fp = ctx.base();
    FqPoly out = make(ctx, std::max(a.len(ctx), b.len(ctx)));
    for (std::size_t i = 0; i < out.c.size(); ++i) {
        const u32 x = i < a.c.size() ? a.c[i] : 0;
        const u32 y = i < b.c.size() ? b.c[i] : 0;
        out.c[i] = fp.add(x, y);
    }
    return out;
}

inline FqPoly sub(const ExtFieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
    const auto& fp = ctx.base();
    FqPoly out = make(ctx, std::max(a.len(ctx), b.len(ctx)));
    for (std::size_t i = 0; i < out.c.size(); ++i) {
        const u32 x = i < a.c.size() ? a.c[i] : 0;
        const u32 y = i < b.c.size() ? b.c[i] : 0;
        out.c[i] = fp.sub(x, y);
    }
    return out;
}

// coefficient reversal with respect to a declared degree bound n-1
inline FqPoly reverse(const ExtFieldCtx& ctx, const FqPoly& f, std::size_t n) {
    const u32 d = ctx.degree();
    FqPoly out = make(ctx, n);
    for (std::size_t i = 0; i < n && i < f.len(ctx); ++i)
        std::copy(f.c.begin() + i * d, f.c.begin() + (i + 1) * d,
                  out.c.begin() + (n - 1 - i) * d);
    return out;
}

inline FqPoly mul(const ExtFieldCtx& ctx, const FqPoly& a, const FqPoly& b) {
    const std::size_t la = a.len(ctx), lb = b.len(ctx);
    if (la == 0 || lb == 0) return make(ctx, 0);
    const u32 d = ctx.degree();
    FqPoly out = make(ctx, la + lb - 1);

    if (la * lb <= 16) {  // tiny products skip the transform machinery
        thread_local std::vector<u32> tmp;
        tmp.assign(d, 0);
        const auto& fp = ctx.base();
        for (std::size_t i = 0; i < la; ++i) {
            if (coeff_is_zero(ctx, a, i)) continue;
            for (std::size_t j = 0; j < lb; ++j) {
                if (coeff_is_zero(ctx, b, j)) continue;
                ctx.mul_into(tmp.data(), coeff(ctx, a, i), coeff(ctx, b, j));
                u32* dst = coeff(ctx, out, i + j);
                for (u32 k = 0; k < d; ++k) dst[k] = fp.add(dst[k], tmp[k]);
            }
        }
        return out;
    }

    const std::size_t stride = 2 * std::size_t(d) - 1;
    std::vector<u64> ka(la * stride, 0), kb(lb * stride, 0);
    for (std::size_t i = 0; i < la; ++i)
        for (u32 j = 0; j < d; ++j) ka[i * stride + j] = a.c[i * d + j];
    for (std::size_t i = 0; i < lb; ++i)
        for (u32 j = 0; j < d; ++j) kb[i * stride + j] = b.c[i * d + j];
    const std::vector<u64> prod = conv_u64_exact(ka, kb, ctx.p() - 1, ctx.p() - 1);

    const u64 p = ctx.p();
    const u64 beta = ctx.beta();
    for (std::size_t k = 0; k + 1 < la + lb; ++k) {
        const std::size_t base = k * stride;
        for (u32 e = 0; e < d; ++e) {
            u64 v = prod[base + e] % p;
            if (e + d <= 2 * std::size_t(d) - 2 && base + e + d < prod.size())
                v += (prod[base + e + d] % p) * beta;
            out.c[k * d + e] = u32(v % p);
        }
    }
    return out;
}

inline FqPoly mul_truncated(const ExtFieldCtx& ctx, const FqPoly& a, const FqPoly& b,
                            std::size_t n) {
    return truncate(ctx, mul(ctx, a, b), n);
}

// power-series inverse mod X^n by Newton iteration; requires an invertible
// constant term
inline FqPoly series_inv(const ExtFieldCtx& ctx, const FqPoly& a, std::size_t n) {
    if (a.len(ctx) == 0 || coeff_is_zero(ctx, a, 0))
        throw contract_error("series_inv: constant term not invertible");
    FqPoly b = make(ctx, 1);
    set_coeff(ctx, b, 0, ctx.inv(get_coeff(ctx, a, 0)));
    std::size_t k = 1;
    while (k < n) {
        const std::size_t k2 = std::min(2 * k, n);
        FqPoly t = mul_truncated(ctx, truncate(ctx, a, k2), b, k2);
        // t <- 2 - t
        const auto& fp = ctx.base();
        for (auto& w : t.c) w = fp.neg(w);
        t.c[0] = fp.add(t.c[0], 2 % ctx.p());
        b = mul_truncated(ctx, b, t, k2);
        k = k2;
    }
    return b;
}

// division with remainder by a monic divisor, via the reversal trick
struct DivRem {
    FqPoly quot;
    FqPoly rem;
};

inline DivRem divrem_monic(const ExtFieldCtx& ctx, const FqPoly& f, const FqPoly& g) {
    const std::ptrdiff_t df = degree(ctx, f);
    const std::ptrdiff_t dg = degree(ctx, g);
    if (dg < 0) throw contract_error("divrem_monic: zero divisor");
    DivRem out;
    if (df < dg) {
        out.quot = make(ctx, 0);
        out.rem = truncate(ctx, f, std::size_t(df + 1));
        return out;
    }
    const std::size_t k = std::size_t(df - dg) + 1;
    const FqPoly rf = reverse(ctx, truncate(ctx, f, std::size_t(df + 1)), std::size_t(df + 1));
    const FqPoly rg = reverse(ctx, truncate(ctx, g, std::size_t(dg + 1)), std::size_t(dg + 1));
    const FqPoly qrev = mul_truncated(ctx, truncate(ctx, rf, k), series_inv(ctx, rg, k), k);
    out.quot = reverse(ctx, qrev, k);
    const FqPoly qg = mul(ctx, out.quot, g);
    out.rem = truncate(ctx, sub(ctx, f, qg), std::size_t(dg));
    return out;
}

// Horner evaluation, for reference paths and tests.
inline ExtElem eval(const ExtFieldCtx& ctx, const FqPoly& f, const ExtElem& x) {
    ExtElem acc = ctx.zero();
    for (std::ptrdiff_t i = std::ptrdiff_t(f.len(ctx)) - 1; i >= 0; --i)
        acc = ctx.add(ctx.mul(acc, x), get_coeff(ctx, f, std::size_t(i)));
    return acc;
}

}  // namespace fq

}  // namespace sparseconv
