#pragma once

// Transposed Vandermonde products and solves over the extension field, and on
// top of them sparse polynomial evaluation, interpolation, and the field-level
// sparse convolution. Two routes ship: a quadratic classical route (running
// powers; master-polynomial synthetic division) and a quasi-linear route via
// subproduct trees and power-series division. They are exact and agree
// bit-for-bit; the dispatcher picks by size.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "sparseconv/errors.hpp"
#include "sparseconv/ext_field.hpp"
#include "sparseconv/fq_poly.hpp"

namespace sparseconv {

using PointSet = std::vector<ExtElem>;

inline constexpr std::size_t kTvQuadraticCutoff = 512;

namespace detail {

inline void require_distinct(const ExtFieldCtx& ctx, const PointSet& points) {
    PointSet sorted(points);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            throw contract_error("tv_solve: points must be pairwise distinct");
    (void)ctx;
}

// batch inversion: one field inverse plus 3(n-1) multiplications
inline std::vector<ExtElem> batch_inv(const ExtFieldCtx& ctx, const std::vector<ExtElem>& xs) {
    std::vector<ExtElem> pre(xs.size());
    ExtElem acc = ctx.one();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        pre[i] = acc;
        acc = ctx.mul(acc, xs[i]);
    }
    ExtElem inv_acc = ctx.inv(acc);
    std::vector<ExtElem> out(xs.size());
    for (std::size_t i = xs.size(); i-- > 0;) {
        out[i] = ctx.mul(inv_acc, pre[i]);
        inv_acc = ctx.mul(inv_acc, xs[i]);
    }
    return out;
}

// Subproduct tree over linear factors (1 - a_i X). Reversing a node of size s
// gives the monic polynomial prod (X - a_i) because every a_i is nonzero.
struct SubproductTree {
    std::vector<std::vector<FqPoly>> levels;  // levels[0] = leaves

    static SubproductTree build(const ExtFieldCtx& ctx, const PointSet& points) {
        SubproductTree t;
        std::vector<FqPoly> cur;
        cur.reserve(points.size());
        for (const auto& a : points) {
            FqPoly leaf = fq::make(ctx, 2);
            fq::set_coeff(ctx, leaf, 0, ctx.one());
            ExtElem na = a;
            for (auto& w : na) w = ctx.base().neg(w);
            fq::set_coeff(ctx, leaf, 1, na);
            cur.push_back(std::move(leaf));
        }
        t.levels.push_back(std::move(cur));
        while (t.levels.back().size() > 1) {
            const auto& prev = t.levels.back();
            std::vector<FqPoly> next;
            next.reserve((prev.size() + 1) / 2);
            for (std::size_t i = 0; i + 1 < prev.size(); i += 2)
                next.push_back(fq::mul(ctx, prev[i], prev[i + 1]));
            if (prev.size() % 2) next.push_back(prev.back());
            t.levels.push_back(std::move(next));
        }
        return t;
    }

    const FqPoly& root() const { return levels.back()[0]; }
};

}  // namespace detail

// ---- transposed Vandermonde product: y_j = sum_i x_i * a_i^j ----

inline std::vector<ExtElem> tv_mul_quadratic(const ExtFieldCtx& ctx, const PointSet& points,
                                             const std::vector<ExtElem>& x, std::size_t rows) {
    std::vector<ExtElem> pw(points.size(), ctx.one());
    std::vector<ExtElem> y(rows, ctx.zero());
    ExtElem tmp(ctx.degree());
    for (std::size_t j = 0; j < rows; ++j) {
        ExtElem acc = ctx.zero();
        for (std::size_t i = 0; i < points.size(); ++i) {
            ctx.mul_into(tmp.data(), x[i].data(), pw[i].data());
            acc = ctx.add(acc, tmp);
            if (j + 1 < rows) {
                ctx.mul_into(tmp.data(), pw[i].data(), points[i].data());
                pw[i] = tmp;
            }
        }
        y[j] = std::move(acc);
    }
    return y;
}

inline std::vector<ExtElem> tv_mul_fast(const ExtFieldCtx& ctx, const PointSet& points,
                                        const std::vector<ExtElem>& x, std::size_t rows) {
    // numerator/denominator pair of sum_i x_i / (1 - a_i X), merged up a tree
    const std::size_t n = points.size();
    std::vector<FqPoly> num;
    num.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        FqPoly f = fq::make(ctx, 1);
        fq::set_coeff(ctx, f, 0, x[i]);
        num.push_back(std::move(f));
    }
    detail::SubproductTree tree = detail::SubproductTree::build(ctx, points);
    for (std::size_t lvl = 0; lvl + 1 < tree.levels.size(); ++lvl) {
        const auto& denom = tree.levels[lvl];
        std::vector<FqPoly> next;
        next.reserve((num.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < num.size(); i += 2) {
            FqPoly left = fq::mul(ctx, num[i], denom[2 * i + 1]);
            FqPoly right = fq::mul(ctx, num[i + 1], denom[2 * i]);
            next.push_back(fq::add(ctx, left, right));
        }
        if (num.size() % 2) next.push_back(num.back());
        num = std::move(next);
    }
    FqPoly series;
    if (n == 0) {
        series = fq::make(ctx, 0);
    } else {
        series = fq::mul_truncated(ctx, num[0], fq::series_inv(ctx, tree.root(), rows), rows);
    }
    std::vector<ExtElem> y(rows, ctx.zero());
    for (std::size_t j = 0; j < rows && j < series.len(ctx); ++j)
        y[j] = fq::get_coeff(ctx, series, j);
    return y;
}

inline std::vector<ExtElem> tv_mul(const ExtFieldCtx& ctx, const PointSet& points,
                                   const std::vector<ExtElem>& x, std::size_t rows = 0) {
    if (points.size() != x.size()) throw contract_error("tv_mul: size mismatch");
    if (rows == 0) rows = points.size();
    if (rows == 0) return {};
    if (std::max(points.size(), rows) <= kTvQuadraticCutoff)
        return tv_mul_quadratic(ctx, points, x, rows);
    return tv_mul_fast(ctx, points, x, rows);
}

// ---- transposed Vandermonde solve: find x with tv_mul(points, x) = b ----

// Quadratic classical route: build P(X) = prod (X - a_i) once, then per point
// one synthetic division fused with two Horner sums; batch-invert P'(a_i).
inline std::vector<ExtElem> tv_solve_quadratic(const ExtFieldCtx& ctx, const PointSet& points,
                                               const std::vector<ExtElem>& b) {
    const std::size_t s = points.size();
    const auto& fp = ctx.base();
    const u32 d = ctx.degree();
    // master polynomial coefficients p_0..p_s, flat
    std::vector<u32> master((s + 1) * d, 0);
    master[0 * d + 0] = 1;  // P = 1
    ExtElem tmp(d);
    std::size_t cur = 0;  // current degree
    for (const auto& a : points) {
        // P <- P*(X - a): descending in-place update p_i = p_{i-1} - a*p_i
        for (std::size_t i = cur + 1; i + 1 > 0; --i) {
            u32* pi = master.data() + i * d;
            ctx.mul_into(tmp.data(), pi, a.data());
            if (i > 0) {
                const u32* prev = master.data() + (i - 1) * d;
                for (u32 k = 0; k < d; ++k) pi[k] = fp.sub(prev[k], tmp[k]);
            } else {
                for (u32 k = 0; k < d; ++k) pi[k] = fp.neg(tmp[k]);
            }
        }
        ++cur;
    }
    std::vector<ExtElem> dots(s, ctx.zero());
    std::vector<ExtElem> derivs(s, ctx.zero());
    ExtElem q(d), horner(d), tmp2(d);
    for (std::size_t i = 0; i < s; ++i) {
        const ExtElem& a = points[i];
        // q starts at the leading coefficient 1 = p_s
        std::fill(q.begin(), q.end(), 0);
        q[0] = 1;
        horner = q;
        ctx.mul_into(tmp.data(), q.data(), b[s - 1].data());
        ExtElem dot(tmp);
        for (std::size_t j = s - 1; j >= 1; --j) {
            // q_{j-1} = p_j + a * q_j
            ctx.mul_into(tmp.data(), a.data(), q.data());
            for (u32 k = 0; k < d; ++k) q[k] = fp.add(master[j * d + k], tmp[k]);
            ctx.mul_into(tmp.data(), q.data(), b[j - 1].data());
            for (u32 k = 0; k < d; ++k) dot[k] = fp.add(dot[k], tmp[k]);
            // horner = horner * a + q
            ctx.mul_into(tmp2.data(), horner.data(), a.data());
            for (u32 k = 0; k < d; ++k) horner[k] = fp.add(tmp2[k], q[k]);
        }
        dots[i] = dot;
        derivs[i] = horner;
    }
    std::vector<ExtElem> inv = detail::batch_inv(ctx, derivs);
    std::vector<ExtElem> x(s);
    for (std::size_t i = 0; i < s; ++i) x[i] = ctx.mul(dots[i], inv[i]);
    return x;
}

// Quasi-linear route: N = (sum b_j X^j) * prod(1 - a_i X) mod X^s has the
// partial-fraction numerators as values rev(N)(a_i) / P'(a_i).
inline std::vector<ExtElem> tv_solve_fast(const ExtFieldCtx& ctx, const PointSet& points,
                                          const std::vector<ExtElem>& b) {
    const std::size_t s = points.size();
    detail::SubproductTree tree = detail::SubproductTree::build(ctx, points);

    FqPoly g = fq::make(ctx, s);
    for (std::size_t j = 0; j < s; ++j) fq::set_coeff(ctx, g, j, b[j]);
    const FqPoly numer = fq::mul_truncated(ctx, g, tree.root(), s);
    const FqPoly numer_rev = fq::reverse(ctx, numer, s);

    // monic master polynomial and its derivative
    const FqPoly master = fq::reverse(ctx, tree.root(), s + 1);
    FqPoly master_deriv = fq::make(ctx, s);
    for (std::size_t i = 1; i <= s; ++i) {
        ExtElem c = fq::get_coeff(ctx, master, i);
        fq::set_coeff(ctx, master_deriv, i - 1, ctx.scale(c, u32(i % ctx.p())));
    }

    // remainder-tree descent for both polynomials at once, reusing the monic
    // reversals of the tree nodes
    struct Frame {
        std::size_t level, idx;
        FqPoly ra, rb;
    };
    std::vector<ExtElem> vals_n(s), vals_d(s);
    std::vector<Frame> stack;
    stack.push_back({tree.levels.size() - 1, 0, numer_rev, master_deriv});
    // leaf_start[level][idx]: first point index covered by that node
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.level == 0) {
            // node = (1 - a_i X) reversed = (X - a_i); remainder is the value
            const std::size_t i = f.idx;
            vals_n[i] = f.ra.len(ctx) ? fq::get_coeff(ctx, f.ra, 0) : ctx.zero();
            vals_d[i] = f.rb.len(ctx) ? fq::get_coeff(ctx, f.rb, 0) : ctx.zero();
            continue;
        }
        const std::size_t child_level = f.level - 1;
        const std::size_t li = 2 * f.idx, ri = 2 * f.idx + 1;
        const auto& kids = tree.levels[child_level];
        if (ri >= kids.size()) {  // odd tail carried up unchanged
            stack.push_back({child_level, li, std::move(f.ra), std::move(f.rb)});
            continue;
        }
        for (std::size_t which = 0; which < 2; ++which) {
            const std::size_t ci = which ? ri : li;
            const FqPoly& dnode = kids[ci];
            const std::size_t node_deg = dnode.len(ctx) - 1;
            const FqPoly monic = fq::reverse(ctx, dnode, node_deg + 1);
            Frame child;
            child.level = child_level;
            child.idx = ci;
            child.ra = fq::divrem_monic(ctx, f.ra, monic).rem;
            child.rb = fq::divrem_monic(ctx, f.rb, monic).rem;
            stack.push_back(std::move(child));
        }
    }

    std::vector<ExtElem> inv = detail::batch_inv(ctx, vals_d);
    std::vector<ExtElem> x(s);
    for (std::size_t i = 0; i < s; ++i) x[i] = ctx.mul(vals_n[i], inv[i]);
    return x;
}

// Gaussian elimination on the explicit matrix; the test-suite oracle for the
// two production routes.
inline std::vector<ExtElem> tv_solve_gaussian(const ExtFieldCtx& ctx, const PointSet& points,
                                              const std::vector<ExtElem>& b) {
    const std::size_t s = points.size();
    std::vector<std::vector<ExtElem>> m(s, std::vector<ExtElem>(s + 1));
    for (std::size_t i = 0; i < s; ++i) {
        ExtElem pw = ctx.one();
        for (std::size_t j = 0; j < s; ++j) {
            m[j][i] = pw;  // row j, column i: a_i^j
            if (j + 1 < s) pw = ctx.mul(pw, points[i]);
        }
    }
    for (std::size_t j = 0; j < s; ++j) m[j][s] = b[j];
    for (std::size_t col = 0; col < s; ++col) {
        std::size_t pivot = col;
        while (pivot < s && ctx.is_zero(m[pivot][col])) ++pivot;
        if (pivot == s) throw contract_error("tv_solve: singular system (duplicate points)");
        std::swap(m[col], m[pivot]);
        const ExtElem inv = ctx.inv(m[col][col]);
        for (std::size_t k = col; k <= s; ++k) m[col][k] = ctx.mul(m[col][k], inv);
        for (std::size_t row = 0; row < s; ++row) {
            if (row == col || ctx.is_zero(m[row][col])) continue;
            const ExtElem f = m[row][col];
            for (std::size_t k = col; k <= s; ++k)
                m[row][k] = ctx.sub(m[row][k], ctx.mul(f, m[col][k]));
        }
    }
    std::vector<ExtElem> x(s);
    for (std::size_t i = 0; i < s; ++i) x[i] = m[i][s];
    return x;
}

inline std::vector<ExtElem> tv_solve(const ExtFieldCtx& ctx, const PointSet& points,
                                     const std::vector<ExtElem>& b) {
    if (points.size() != b.size()) throw contract_error("tv_solve: size mismatch");
    if (points.empty()) return {};
    detail::require_distinct(ctx, points);
    if (points.size() <= kTvQuadraticCutoff) return tv_solve_quadratic(ctx, points, b);
    return tv_solve_fast(ctx, points, b);
}

// ---- sparse evaluation / interpolation ----

struct SparsePolyFq {
    std::vector<u64> exps;         // strictly increasing
    std::vector<ExtElem> coeffs;   // matching coefficients
};

// Evaluates A at omega^0 .. omega^(count-1). Points omega^{x_i} are prepared
// by repeated squaring; the reference route then runs running-power sums and
// the fast route a subproduct-tree series expansion.
inline std::vector<ExtElem> sparse_evaluate(const ExtFieldCtx& ctx, const SparsePolyFq& a,
                                            const ExtElem& omega, std::size_t count) {
    if (a.exps.empty()) return std::vector<ExtElem>(count, ctx.zero());
    PointSet points;
    points.reserve(a.exps.size());
    for (u64 e : a.exps) points.push_back(ctx.pow(omega, e));
    if (std::max(points.size(), count) <= kTvQuadraticCutoff)
        return tv_mul_quadratic(ctx, points, a.coeffs, count);
    return tv_mul_fast(ctx, points, a.coeffs, count);
}

// Interpolates the unique polynomial with support inside T from its values at
// omega^0 .. omega^(|T|-1); zero coefficients are pruned.
inline SparsePolyFq sparse_interpolate(const ExtFieldCtx& ctx, const std::vector<ExtElem>& values,
                                       const std::vector<u64>& t_set, const ExtElem& omega) {
    if (values.size() != t_set.size())
        throw contract_error("sparse_interpolate: |values| must equal |T|");
    PointSet points;
    points.reserve(t_set.size());
    for (u64 e : t_set) points.push_back(ctx.pow(omega, e));
    const std::vector<ExtElem> coeffs = tv_solve(ctx, points, values);
    SparsePolyFq out;
    for (std::size_t i = 0; i < t_set.size(); ++i) {
        if (ctx.is_zero(coeffs[i])) continue;
        out.exps.push_back(t_set[i]);
        out.coeffs.push_back(coeffs[i]);
    }
    return out;
}

// Field-level sparse convolution: evaluate, multiply pointwise, interpolate
// on the support superset T. Requires ord(omega) >= the output length and
// T sorted, covering supp(A*B).
inline SparsePolyFq field_sparse_conv(const ExtFieldCtx& ctx, const SparsePolyFq& a,
                                      const SparsePolyFq& b, const std::vector<u64>& t_set,
                                      const ExtElem& omega) {
    if (t_set.empty()) return {};
    const std::size_t s = t_set.size();
    const std::vector<ExtElem> ea = sparse_evaluate(ctx, a, omega, s);
    const std::vector<ExtElem> eb = sparse_evaluate(ctx, b, omega, s);
    std::vector<ExtElem> prod(s);
    for (std::size_t i = 0; i < s; ++i) prod[i] = ctx.mul(ea[i], eb[i]);
    return sparse_interpolate(ctx, prod, t_set, omega);
}

}  // namespace sparseconv
