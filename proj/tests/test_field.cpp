#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"
#include "sparseconv/ext_field.hpp"
#include "sparseconv/prime_field.hpp"

using namespace sparseconv;

namespace {

// test-only dense polynomial division over F_p, independent of the library's
// field arithmetic: checks whether g divides X^(p-1) - beta
bool divides_modulus(u32 p, u32 beta, const std::vector<u32>& g) {
    std::vector<u32> r(p, 0);  // X^(p-1) - beta
    r[p - 1] = 1;
    r[0] = (p - beta) % p;
    const PrimeFieldCtx f{p};
    const std::size_t dg = g.size() - 1;
    for (std::size_t k = p - 1; k + 1 > dg; --k) {
        const u32 c = f.mul(r[k], f.inv(g[dg]));
        if (!c) continue;
        for (std::size_t j = 0; j <= dg; ++j) r[k - dg + j] = f.sub(r[k - dg + j], f.mul(c, g[j]));
    }
    for (u32 c : r)
        if (c) return false;
    return true;
}

ExtElem random_elem(const ExtFieldCtx& ctx, Rng& rng) {
    ExtElem e(ctx.degree());
    for (auto& c : e) c = u32(rng.below(ctx.p()));
    return e;
}

}  // namespace

TEST_CASE("find_primitive small cases") {
    REQUIRE(find_primitive(3) == 2);
    REQUIRE(find_primitive(5) == 2);
    REQUIRE(find_primitive(7) == 3);
}

TEST_CASE("F9 arithmetic facts") {
    const ExtFieldCtx f9 = ExtFieldCtx::build(3);
    REQUIRE(f9.beta() == 2);
    REQUIRE(f9.degree() == 2);
    // X * X = beta = 2
    ExtElem x(2, 0);
    x[1] = 1;
    REQUIRE(f9.mul(x, x) == f9.from_const(2));
    // order of X+1 is 8 = |F9*|
    const OrderResult ord = multiplicative_order(f9, f9.omega());
    REQUIRE(ord.exact);
    REQUIRE(ord.value == Int(8));
    // (X+1)^2 = 2X, (X+1)^4 = 2, (X+1)^8 = 1
    ExtElem two_x(2, 0);
    two_x[1] = 2;
    REQUIRE(f9.pow(f9.omega(), 2) == two_x);
    REQUIRE(f9.pow(f9.omega(), 4) == f9.from_const(2));
    REQUIRE(f9.pow(f9.omega(), 8) == f9.one());
}

TEST_CASE("irreducibility of X^(p-1) - beta, exhaustive for p in {3,5,7}") {
    for (u32 p : {3u, 5u, 7u}) {
        const u32 beta = find_primitive(p);
        // enumerate every monic factor candidate of degree 1 .. (p-1)/2
        for (u32 deg = 1; deg <= (p - 1) / 2; ++deg) {
            u64 count = 1;
            for (u32 i = 0; i < deg; ++i) count *= p;
            for (u64 code = 0; code < count; ++code) {
                std::vector<u32> g(deg + 1);
                u64 c = code;
                for (u32 i = 0; i < deg; ++i, c /= p) g[i] = u32(c % p);
                g[deg] = 1;
                REQUIRE(!divides_modulus(p, beta, g));
            }
        }
    }
}

TEST_CASE("order of X+1 in F_{7^6}") {
    const ExtFieldCtx f = ExtFieldCtx::build(7);
    const OrderResult ord = multiplicative_order(f, f.omega());
    REQUIRE(ord.exact);
    REQUIRE(ord.value >= Int(128));  // the 2^p lower bound at p = 7
    // the order divides the group order 7^6 - 1 = 117648
    const u64 value = ord.value.as_u64();
    REQUIRE(117648 % value == 0);
    REQUIRE(f.pow(f.omega(), value) == f.one());
    REQUIRE(f.pow(f.omega(), value / 2) != f.one());
}

TEST_CASE("beta as a constant has order dividing p-1") {
    const ExtFieldCtx f9 = ExtFieldCtx::build(3);
    const OrderResult ord = multiplicative_order(f9, f9.from_const(f9.beta()));
    REQUIRE(ord.exact);
    REQUIRE((2 % ord.value.as_u64()) == 0);
}

TEST_CASE("field axioms spot check") {
    Rng rng(61);
    for (u32 p : {3u, 5u, 7u, 11u, 13u}) {
        const ExtFieldCtx f = ExtFieldCtx::build(p);
        for (int iter = 0; iter < 2000; ++iter) {
            const ExtElem a = random_elem(f, rng);
            const ExtElem b = random_elem(f, rng);
            const ExtElem c = random_elem(f, rng);
            REQUIRE(f.mul(a, b) == f.mul(b, a));
            REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
    }
}

TEST_CASE("inverse axiom and pow") {
    Rng rng(62);
    for (u32 p : {3u, 5u, 7u, 11u}) {
        const ExtFieldCtx f = ExtFieldCtx::build(p);
        REQUIRE(f.pow(f.omega(), 0) == f.one());
        REQUIRE_THROWS_AS(f.inv(f.zero()), contract_error);
        for (int iter = 0; iter < 500; ++iter) {
            const ExtElem a = random_elem(f, rng);
            if (f.is_zero(a)) continue;
            REQUIRE(f.mul(a, f.inv(a)) == f.one());
        }
    }
}

TEST_CASE("crt_reconstruct") {
    REQUIRE(crt_reconstruct({{1, 3}, {2, 5}}) == Int(7));
    REQUIRE(crt_reconstruct({{0, 3}, {0, 5}, {0, 7}}) == Int(0));
    REQUIRE(crt_reconstruct({{4, 7}}) == Int(4));
    REQUIRE_THROWS_AS(crt_reconstruct({{1, 5}, {2, 5}}), contract_error);
    // exhaustive against search over the full residue range
    for (u64 target = 0; target < 15; ++target)
        REQUIRE(crt_reconstruct({{target % 3, 3}, {target % 5, 5}}) == Int::from_u64(target));
    for (u64 target = 0; target < 105; ++target)
        REQUIRE(crt_reconstruct({{target % 3, 3}, {target % 5, 5}, {target % 7, 7}}) ==
                Int::from_u64(target));
}

TEST_CASE("order lower-bound path on a field beyond word-size group order") {
    const ExtFieldCtx f = ExtFieldCtx::build(23);
    const OrderResult ord = multiplicative_order(f, f.omega(), 512);
    if (!ord.exact) {
        REQUIRE(ord.value == Int(512));
    } else {
        REQUIRE(ord.value > Int(512));
    }
}
