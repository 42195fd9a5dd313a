#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"
#include "sparseconv/hashing.hpp"

using namespace sparseconv;
using sparseconv::testing::random_vec;

TEST_CASE("sample_linear picks the documented parameters") {
    Rng rng(31);
    for (int iter = 0; iter < 50; ++iter) {
        const LinearHash h = sample_linear(8, 3, rng);
        REQUIRE(h.N == 32);  // smallest power of two > 24
        REQUIRE(h.m_eff == 3);
        REQUIRE(h.a % 2 == 1);
        REQUIRE(h.a < h.N);
    }
    const LinearHash h4 = sample_linear(8, 4, rng);
    REQUIRE(h4.m_eff == 3);
    REQUIRE(h4.N == 32);
    const LinearHash h1 = sample_linear(8, 1, rng);
    REQUIRE(h1.m_eff == 1);
    REQUIRE(h1.phi_offsets() == std::vector<Index>{0});
}

TEST_CASE("eval_linear worked examples") {
    LinearHash h;
    h.n = 8;
    h.m_user = 3;
    h.m_eff = 3;
    h.N = 32;
    h.a = 5;
    REQUIRE(eval_linear(h, 2) == 1);   // (10 mod 32) mod 3
    REQUIRE(eval_linear(h, 0) == 0);
    REQUIRE(eval_linear(h, 7) == 0);   // (35 mod 32) mod 3
    REQUIRE(h.phi_offsets() == std::vector<Index>({0, 2}));
    // x=3, y=4: h(3)+h(4)-h(7) = 0+2-0 = 2, in Phi
    const Index lhs = (h.eval(3) + h.eval(4) + h.m_user - h.eval(7)) % h.m_user;
    REQUIRE(lhs == 2);
}

TEST_CASE("almost-additivity holds exactly, odd and even m") {
    Rng rng(32);
    for (int iter = 0; iter < 100000; ++iter) {
        const Index n = 2 + rng.below(1 << 16);
        const Index m = 1 + rng.below(std::min<Index>(n, 512));
        const LinearHash h = sample_linear(n, m, rng);
        const auto phi = h.phi_offsets();
        REQUIRE(phi.size() <= 6);
        const Index x = rng.below(n);
        const Index y = rng.below(n);
        const Index lhs = (h.eval(x) + h.eval(y) + h.m_user - h.eval(x + y)) % h.m_user;
        const bool member = std::find(phi.begin(), phi.end(), lhs) != phi.end();
        REQUIRE(member);
    }
}

TEST_CASE("linear buckets stay inside [0, m_eff)") {
    Rng rng(33);
    for (int iter = 0; iter < 2000; ++iter) {
        const Index n = 2 + rng.below(1 << 12);
        const Index m = 1 + rng.below(std::min<Index>(n, 64));
        const LinearHash h = sample_linear(n, m, rng);
        const Index x = rng.below(2 * n);
        REQUIRE(h.eval(x) < h.m_eff);
    }
}

TEST_CASE("primes_in_range") {
    REQUIRE(primes_in_range(10, 20) == std::vector<Index>({11, 13, 17, 19}));
    REQUIRE(primes_in_range(2, 2) == std::vector<Index>({2}));
    REQUIRE(primes_in_range(24, 28).empty());
    REQUIRE(primes_in_range(1, 1).empty());
    Limits tight;
    tight.sieve_guard = 100;
    REQUIRE_THROWS_AS(primes_in_range(2, 101, tight), guard_error);
}

TEST_CASE("sample_prime_hash") {
    Rng rng(34);
    for (int iter = 0; iter < 200; ++iter) {
        const PrimeHash h = sample_prime_hash(10, rng);
        REQUIRE((h.p == 11 || h.p == 13 || h.p == 17 || h.p == 19));
    }
    for (int iter = 0; iter < 50; ++iter) {
        const PrimeHash h = sample_prime_hash(2, rng);
        REQUIRE((h.p == 2 || h.p == 3));
    }
    // additivity is plain modular arithmetic
    const PrimeHash h = sample_prime_hash(100, rng);
    for (int iter = 0; iter < 1000; ++iter) {
        const Index x = rng.below(1 << 20), y = rng.below(1 << 20);
        REQUIRE((h.eval(x) + h.eval(y)) % h.p == h.eval(x + y));
    }
}

TEST_CASE("hash_vector mass conservation and placement") {
    PrimeHash h;
    h.m = 8;
    h.p = 11;
    const SparseVec v = SparseVec::from_pairs(20, {{3, Int(5)}, {14, Int(2)}});
    const DenseVec buckets = hash_vector(h, v);
    REQUIRE(buckets.size() == 11);
    REQUIRE(buckets[3] == Int(7));

    Rng rng(35);
    for (int iter = 0; iter < 300; ++iter) {
        const Index n = 2 + rng.below(4096);
        const SparseVec w = random_vec(rng, n, std::size_t(rng.range(0, 40)), 1000);
        const Index m = 1 + rng.below(std::min<Index>(n, 128));
        const LinearHash lh = sample_linear(n, m, rng);
        Int total;
        for (const auto& x : hash_vector(lh, w)) total += x;
        REQUIRE(total == mass(w));
        REQUIRE(hash_vector(lh, SparseVec(n)) == DenseVec(m));
        const SparseVec sparse_img = hash_vector_sparse(lh, w);
        REQUIRE(mass(sparse_img) == mass(w));
    }
}

TEST_CASE("uniform differences, small-sample sanity") {
    // The acceptance suite runs the full 1e5-sample protocol; this is a
    // smoke-scale version of the same estimator.
    Rng rng(36);
    const Index n = 1 << 16, m = 251;
    const Index x = 123, y = 45678;
    std::vector<u64> freq(m, 0);
    const int samples = 20000;
    for (int s = 0; s < samples; ++s) {
        const LinearHash h = sample_linear(n, m, rng);
        freq[(h.eval(x) + m - h.eval(y)) % m]++;
    }
    const u64 worst = *std::max_element(freq.begin(), freq.end());
    REQUIRE(double(worst) / samples <= 8.0 / double(m));
}
