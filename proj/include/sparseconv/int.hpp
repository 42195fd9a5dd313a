#pragma once

// Exact signed integers of arbitrary size. Sign-magnitude, 64-bit limbs,
// small-buffer optimized: values up to three limbs (the common case for
// vector entries and bucket moments) never touch the heap.

#include <array>
#include <cstdint>
#include <cstring>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace sparseconv {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

class Int {
public:
    Int() = default;

    Int(i64 v) {  // NOLINT: implicit by design, mirrors built-in integers
        if (v < 0) {
            sign_ = -1;
            set_u64(v == INT64_MIN ? (u64(1) << 63) : u64(-v));
        } else {
            set_u64(u64(v));
        }
    }

    static Int from_u64(u64 v) {
        Int r;
        r.set_u64(v);
        return r;
    }

    Int(const Int& o) { assign(o); }
    Int(Int&& o) noexcept { steal(o); }
    Int& operator=(const Int& o) {
        if (this != &o) {
            release();
            assign(o);
        }
        return *this;
    }
    Int& operator=(Int&& o) noexcept {
        if (this != &o) {
            release();
            steal(o);
        }
        return *this;
    }
    ~Int() { release(); }

    bool is_zero() const { return n_ == 0; }
    bool is_negative() const { return sign_ < 0; }
    int signum() const { return n_ == 0 ? 0 : sign_; }

    // Number of bits in the magnitude; 0 for zero.
    u32 bit_length() const {
        if (n_ == 0) return 0;
        const u64 top = limbs()[n_ - 1];
        return 64 * n_ - u32(__builtin_clzll(top));
    }

    bool fits_u64() const { return sign_ > 0 ? n_ <= 1 : n_ == 0; }
    u64 as_u64() const {
        if (!fits_u64()) throw std::overflow_error("Int: value does not fit u64");
        return n_ ? limbs()[0] : 0;
    }

    friend bool operator==(const Int& a, const Int& b) {
        if (a.signum() != b.signum() || a.n_ != b.n_) return false;
        return std::memcmp(a.limbs(), b.limbs(), a.n_ * 8) == 0;
    }
    friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
    friend bool operator<(const Int& a, const Int& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Int& a, const Int& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Int& a, const Int& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Int& a, const Int& b) { return cmp(a, b) >= 0; }

    static int cmp(const Int& a, const Int& b) {
        const int sa = a.signum(), sb = b.signum();
        if (sa != sb) return sa < sb ? -1 : 1;
        const int c = cmp_mag(a, b);
        return sa < 0 ? -c : c;
    }

    Int operator-() const {
        Int r(*this);
        if (r.n_) r.sign_ = -r.sign_;
        return r;
    }

    friend Int operator+(const Int& a, const Int& b) {
        Int r;
        add_signed(r, a, a.sign_, b, b.sign_);
        return r;
    }
    friend Int operator-(const Int& a, const Int& b) {
        Int r;
        add_signed(r, a, a.sign_, b, i8(-b.sign_));
        return r;
    }
    Int& operator+=(const Int& b) { return *this = *this + b; }
    Int& operator-=(const Int& b) { return *this = *this - b; }

    friend Int operator*(const Int& a, const Int& b) {
        Int r;
        if (a.n_ == 0 || b.n_ == 0) return r;
        if (a.n_ == 1 && b.n_ == 1) {
            const u128 p = u128(a.limbs()[0]) * b.limbs()[0];
            r.set_mag2(u64(p), u64(p >> 64));
        } else {
            mul_mag(r, a, b);
        }
        r.sign_ = i8(a.sign_ * b.sign_);
        if (r.n_ == 0) r.sign_ = 1;
        return r;
    }
    Int& operator*=(const Int& b) { return *this = *this * b; }

    // Truncated division: quotient rounds toward zero, remainder carries the
    // sign of the dividend; a == q*b + r holds exactly.
    struct DivResult;
    static DivResult divmod(const Int& a, const Int& b);
    friend Int operator/(const Int& a, const Int& b);
    friend Int operator%(const Int& a, const Int& b);

    // Magnitude modulo a word-sized modulus (ignores the sign).
    u64 mag_mod_u64(u64 m) const {
        u64 r = 0;
        for (u32 i = n_; i-- > 0;) r = u64((u128(r) << 64 | limbs()[i]) % m);
        return r;
    }

    // Value modulo m, reduced into [0, m).
    u64 mod_u64(u64 m) const {
        const u64 r = mag_mod_u64(m);
        return (sign_ < 0 && r != 0) ? m - r : r;
    }

    Int abs() const {
        Int r(*this);
        r.sign_ = 1;
        return r;
    }

    friend Int operator*(const Int& a, u64 b) { return a * Int::from_u64(b); }

    std::string to_string() const {
        if (n_ == 0) return "0";
        // Repeatedly divide the magnitude by 10^19 (largest power in a limb).
        constexpr u64 kChunk = 10000000000000000000ull;
        std::basic_string<u64> chunks;
        Int tmp(*this);
        while (tmp.n_ > 0) {
            u64 rem = 0;
            for (u32 i = tmp.n_; i-- > 0;) {
                const u128 cur = u128(rem) << 64 | tmp.limbs()[i];
                tmp.limbs()[i] = u64(cur / kChunk);
                rem = u64(cur % kChunk);
            }
            tmp.trim();
            chunks.push_back(rem);
        }
        std::string out = std::to_string(chunks.back());
        for (std::size_t i = chunks.size() - 1; i-- > 0;) {
            const std::string part = std::to_string(chunks[i]);
            out += std::string(19 - part.size(), '0') + part;
        }
        if (sign_ < 0) out.insert(out.begin(), '-');
        return out;
    }

    static Int from_string(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("Int: empty string");
        bool neg = false;
        std::size_t i = 0;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw std::invalid_argument("Int: no digits");
        Int r;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("Int: bad digit");
            r.mul_add_small(10, u64(s[i] - '0'));
        }
        if (neg && r.n_) r.sign_ = -1;
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Int& v) { return os << v.to_string(); }

private:
    using i8 = std::int8_t;
    static constexpr u32 kInline = 3;

    std::array<u64, kInline> inl_{};
    u64* heap_ = nullptr;
    u32 cap_ = kInline;
    u32 n_ = 0;
    i8 sign_ = 1;

    u64* limbs() { return heap_ ? heap_ : inl_.data(); }
    const u64* limbs() const { return heap_ ? heap_ : inl_.data(); }

    void release() {
        delete[] heap_;
        heap_ = nullptr;
        cap_ = kInline;
        n_ = 0;
        sign_ = 1;
    }

    void assign(const Int& o) {
        reserve(o.n_);
        std::memcpy(limbs(), o.limbs(), o.n_ * 8);
        n_ = o.n_;
        sign_ = o.sign_;
    }

    void steal(Int& o) noexcept {
        inl_ = o.inl_;
        heap_ = o.heap_;
        cap_ = o.cap_;
        n_ = o.n_;
        sign_ = o.sign_;
        o.heap_ = nullptr;
        o.cap_ = kInline;
        o.n_ = 0;
        o.sign_ = 1;
    }

    void reserve(u32 want) {
        if (want <= cap_) return;
        const u32 newcap = want + want / 2 + 1;
        u64* mem = new u64[newcap];
        std::memcpy(mem, limbs(), n_ * 8);
        delete[] heap_;
        heap_ = mem;
        cap_ = newcap;
    }

    void trim() {
        while (n_ > 0 && limbs()[n_ - 1] == 0) --n_;
        if (n_ == 0) sign_ = 1;
    }

    void set_u64(u64 v) {
        if (v == 0) {
            n_ = 0;
            return;
        }
        limbs()[0] = v;
        n_ = 1;
    }

    void set_mag2(u64 lo, u64 hi) {
        limbs()[0] = lo;
        limbs()[1] = hi;
        n_ = hi ? 2 : (lo ? 1 : 0);
    }

    // this = this * f + add (magnitude only; sign untouched)
    void mul_add_small(u64 f, u64 add) {
        u64 carry = add;
        for (u32 i = 0; i < n_; ++i) {
            const u128 cur = u128(limbs()[i]) * f + carry;
            limbs()[i] = u64(cur);
            carry = u64(cur >> 64);
        }
        if (carry) {
            reserve(n_ + 1);
            limbs()[n_++] = carry;
        }
    }

    static int cmp_mag(const Int& a, const Int& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_ ? -1 : 1;
        for (u32 i = a.n_; i-- > 0;) {
            if (a.limbs()[i] != b.limbs()[i]) return a.limbs()[i] < b.limbs()[i] ? -1 : 1;
        }
        return 0;
    }

    static void add_mag(Int& r, const Int& a, const Int& b) {
        const Int& big = a.n_ >= b.n_ ? a : b;
        const Int& small = a.n_ >= b.n_ ? b : a;
        r.reserve(big.n_ + 1);
        u64 carry = 0;
        u32 i = 0;
        for (; i < small.n_; ++i) {
            const u128 s = u128(big.limbs()[i]) + small.limbs()[i] + carry;
            r.limbs()[i] = u64(s);
            carry = u64(s >> 64);
        }
        for (; i < big.n_; ++i) {
            const u128 s = u128(big.limbs()[i]) + carry;
            r.limbs()[i] = u64(s);
            carry = u64(s >> 64);
        }
        r.n_ = big.n_;
        if (carry) r.limbs()[r.n_++] = carry;
    }

    // Requires |a| >= |b|.
    static void sub_mag(Int& r, const Int& a, const Int& b) {
        r.reserve(a.n_);
        u64 borrow = 0;
        u32 i = 0;
        for (; i < b.n_; ++i) {
            const u128 rhs = u128(b.limbs()[i]) + borrow;
            const u64 ai = a.limbs()[i];
            r.limbs()[i] = u64(u128(ai) - rhs);
            borrow = u128(ai) < rhs ? 1 : 0;
        }
        for (; i < a.n_; ++i) {
            const u64 ai = a.limbs()[i];
            r.limbs()[i] = ai - borrow;
            borrow = borrow && ai == 0 ? 1 : 0;
        }
        r.n_ = a.n_;
        r.trim();
    }

    static void add_signed(Int& r, const Int& a, i8 sa, const Int& b, i8 sb) {
        if (a.n_ == 0) {
            r = b;
            r.sign_ = r.n_ ? sb : i8(1);
            return;
        }
        if (b.n_ == 0) {
            r = a;
            r.sign_ = sa;
            return;
        }
        if (sa == sb) {
            Int tmp;
            add_mag(tmp, a, b);
            tmp.sign_ = sa;
            r = std::move(tmp);
            return;
        }
        const int c = cmp_mag(a, b);
        if (c == 0) {
            r = Int();
            return;
        }
        Int tmp;
        if (c > 0) {
            sub_mag(tmp, a, b);
            tmp.sign_ = sa;
        } else {
            sub_mag(tmp, b, a);
            tmp.sign_ = sb;
        }
        r = std::move(tmp);
    }

    static void mul_mag(Int& r, const Int& a, const Int& b) {
        Int tmp;
        tmp.reserve(a.n_ + b.n_);
        u64* t = tmp.limbs();
        std::memset(t, 0, (a.n_ + b.n_) * 8);
        for (u32 i = 0; i < a.n_; ++i) {
            u64 carry = 0;
            const u64 ai = a.limbs()[i];
            for (u32 j = 0; j < b.n_; ++j) {
                const u128 cur = u128(ai) * b.limbs()[j] + t[i + j] + carry;
                t[i + j] = u64(cur);
                carry = u64(cur >> 64);
            }
            t[i + b.n_] = carry;
        }
        tmp.n_ = a.n_ + b.n_;
        tmp.trim();
        r = std::move(tmp);
    }

    // Knuth algorithm D on magnitudes; requires |a| >= |b| > 0.
    static void divmod_mag(Int& quot, Int& rem, const Int& a, const Int& b) {
        if (b.n_ == 1) {
            const u64 d = b.limbs()[0];
            Int q;
            q.reserve(a.n_);
            u64 r = 0;
            for (u32 i = a.n_; i-- > 0;) {
                const u128 cur = u128(r) << 64 | a.limbs()[i];
                q.limbs()[i] = u64(cur / d);
                r = u64(cur % d);
            }
            q.n_ = a.n_;
            q.trim();
            quot = std::move(q);
            rem = Int::from_u64(r);
            return;
        }

        const u32 shift = u32(__builtin_clzll(b.limbs()[b.n_ - 1]));
        const u32 n = b.n_, m = a.n_ - b.n_;

        // normalized copies: u has an extra high limb
        std::basic_string<u64> u(a.n_ + 1, 0), v(n, 0);
        for (u32 i = 0; i < a.n_; ++i) u[i] = a.limbs()[i];
        for (u32 i = 0; i < n; ++i) v[i] = b.limbs()[i];
        if (shift) {
            for (u32 i = a.n_; i-- > 1;) u[i] = (u[i] << shift) | (u[i - 1] >> (64 - shift));
            u[0] <<= shift;
            u[a.n_] = shift ? a.limbs()[a.n_ - 1] >> (64 - shift) : 0;
            for (u32 i = n; i-- > 1;) v[i] = (v[i] << shift) | (v[i - 1] >> (64 - shift));
            v[0] <<= shift;
        }

        Int q;
        q.reserve(m + 1);
        const u64 vtop = v[n - 1], vsec = v[n - 2];
        for (u32 j = m + 1; j-- > 0;) {
            const u128 num = u128(u[j + n]) << 64 | u[j + n - 1];
            u128 qhat = num / vtop;
            u128 rhat = num % vtop;
            while (qhat >> 64 || u128(u64(qhat)) * vsec > (rhat << 64 | u[j + n - 2])) {
                --qhat;
                rhat += vtop;
                if (rhat >> 64) break;
            }
            const u64 qh = u64(qhat);
            // u[j..j+n] -= qh * v
            u64 borrow = 0, carry = 0;
            for (u32 i = 0; i < n; ++i) {
                const u128 p = u128(qh) * v[i] + carry;
                carry = u64(p >> 64);
                const u64 plo = u64(p);
                const u64 before = u[j + i];
                u[j + i] = before - plo - borrow;
                borrow = (u128(plo) + borrow > before) ? 1 : 0;
            }
            const u64 before = u[j + n];
            const bool neg = u128(carry) + borrow > before;
            u[j + n] = before - carry - borrow;
            q.limbs()[j] = qh;
            if (neg) {
                // estimate was one too large: add v back
                --q.limbs()[j];
                u64 c = 0;
                for (u32 i = 0; i < n; ++i) {
                    const u128 s = u128(u[j + i]) + v[i] + c;
                    u[j + i] = u64(s);
                    c = u64(s >> 64);
                }
                u[j + n] += c;
            }
        }
        q.n_ = m + 1;
        q.trim();
        quot = std::move(q);

        Int r;
        r.reserve(n);
        if (shift) {
            for (u32 i = 0; i < n - 1; ++i) r.limbs()[i] = (u[i] >> shift) | (u[i + 1] << (64 - shift));
            r.limbs()[n - 1] = u[n - 1] >> shift;
        } else {
            for (u32 i = 0; i < n; ++i) r.limbs()[i] = u[i];
        }
        r.n_ = n;
        r.trim();
        rem = std::move(r);
    }
};

struct Int::DivResult {
    Int quot;
    Int rem;
};

inline Int::DivResult Int::divmod(const Int& a, const Int& b) {
    if (b.n_ == 0) throw std::domain_error("Int: division by zero");
    DivResult qr;
    if (cmp_mag(a, b) < 0) {
        qr.rem = a;
        return qr;
    }
    divmod_mag(qr.quot, qr.rem, a, b);
    qr.quot.sign_ = i8(a.sign_ * b.sign_);
    qr.rem.sign_ = a.sign_;
    if (qr.quot.n_ == 0) qr.quot.sign_ = 1;
    if (qr.rem.n_ == 0) qr.rem.sign_ = 1;
    return qr;
}

inline Int operator/(const Int& a, const Int& b) { return Int::divmod(a, b).quot; }
inline Int operator%(const Int& a, const Int& b) { return Int::divmod(a, b).rem; }

}  // namespace sparseconv
