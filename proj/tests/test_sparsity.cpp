#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"
#include "sparseconv/sparsity.hpp"

using namespace sparseconv;
using sparseconv::testing::random_vec;

namespace {

SparseVec vec(Index n, std::vector<std::pair<Index, i64>> pairs) {
    std::vector<Entry> entries;
    for (auto& [i, v] : pairs) entries.push_back({i, Int(v)});
    return SparseVec::from_pairs(n, std::move(entries));
}

}  // namespace

TEST_CASE("moments worked examples") {
    const BucketMoments m0 = moments(vec(6, {}));
    REQUIRE((m0.x == Int(0) && m0.y == Int(0) && m0.z == Int(0)));
    const BucketMoments m1 = moments(vec(6, {{3, 5}}));
    REQUIRE((m1.x == Int(5) && m1.y == Int(15) && m1.z == Int(45)));
    const BucketMoments m2 = moments(vec(6, {{0, 1}, {1, 1}}));
    REQUIRE((m2.x == Int(2) && m2.y == Int(1) && m2.z == Int(1)));
}

TEST_CASE("classify worked examples") {
    REQUIRE(classify({Int(0), Int(0), Int(0)}, 10).kind == SparsityVerdict::Zero);
    const SparsityVerdict one = classify({Int(5), Int(15), Int(45)}, 10);
    REQUIRE(one.kind == SparsityVerdict::One);
    REQUIRE(one.position == 3);
    REQUIRE(one.value == Int(5));
    REQUIRE(classify({Int(2), Int(1), Int(1)}, 10).kind == SparsityVerdict::Many);
}

TEST_CASE("defensive clauses return Many on corrupted moments") {
    // not divisible: x=2, y=3, z chosen so y^2 = x*z would need z = 4.5
    REQUIRE(classify({Int(2), Int(3), Int(4)}, 10).kind == SparsityVerdict::Many);
    // divisible and tight but position out of range: moments of 5*e_9, max 8
    REQUIRE(classify({Int(5), Int(45), Int(405)}, 9).kind == SparsityVerdict::Many);
    REQUIRE(classify({Int(5), Int(45), Int(405)}, 10).kind == SparsityVerdict::One);
    // negative moment cannot arise from a nonnegative vector
    REQUIRE(classify({Int(2), Int(-2), Int(2)}, 10).kind == SparsityVerdict::Many);
}

TEST_CASE("exhaustive 1-sparsity over all 4096 small vectors") {
    // every nonnegative vector of length 6 with entries in {0..3}
    for (int code = 0; code < 4096; ++code) {
        std::vector<Entry> entries;
        int c = code;
        for (Index i = 0; i < 6; ++i, c /= 4) {
            if (c % 4) entries.push_back({i, Int(c % 4)});
        }
        const SparseVec v = SparseVec::from_sorted(6, std::move(entries));
        const SparsityVerdict verdict = classify(moments(v), 6);
        if (v.l0() == 0) {
            REQUIRE(verdict.kind == SparsityVerdict::Zero);
        } else if (v.l0() == 1) {
            REQUIRE(verdict.kind == SparsityVerdict::One);
            REQUIRE(verdict.position == v.entries()[0].index);
            REQUIRE(verdict.value == v.entries()[0].value);
        } else {
            REQUIRE(verdict.kind == SparsityVerdict::Many);
        }
    }
}

TEST_CASE("Cauchy-Schwarz on random nonnegative vectors") {
    Rng rng(41);
    for (int iter = 0; iter < 3000; ++iter) {
        const Index n = 1 + rng.below(1 << 14);
        const SparseVec v = random_vec(rng, n, std::size_t(rng.range(0, 30)), 1u << 16);
        const BucketMoments m = moments(v);
        REQUIRE(m.y * m.y <= m.x * m.z);
        const SparsityVerdict verdict = classify(m, n);
        if (verdict.kind == SparsityVerdict::One) {
            REQUIRE(v.l0() == 1);
            REQUIRE(verdict.position == v.entries()[0].index);
        }
        if (v.l0() <= 1) REQUIRE(verdict.kind != SparsityVerdict::Many);
    }
}
