#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"
#include "sparseconv/vec.hpp"

using namespace sparseconv;
using sparseconv::testing::random_vec;

namespace {

SparseVec vec(Index n, std::vector<std::pair<Index, i64>> pairs) {
    std::vector<Entry> entries;
    for (auto& [i, v] : pairs) entries.push_back({i, Int(v)});
    return SparseVec::from_pairs(n, std::move(entries));
}

}  // namespace

TEST_CASE("derivative by definition") {
    const SparseVec v = vec(8, {{3, 5}});
    REQUIRE(derivative(v, 0) == v);
    REQUIRE(derivative(v, 1) == vec(8, {{3, 15}}));
    REQUIRE(derivative(v, 2) == vec(8, {{3, 45}}));
}

TEST_CASE("derivative drops index zero only") {
    Rng rng(11);
    for (int iter = 0; iter < 200; ++iter) {
        const SparseVec v = random_vec(rng, 64, std::size_t(rng.range(0, 20)), 100);
        const bool has_zero = !v.empty() && v.entries().front().index == 0;
        for (unsigned d : {1u, 2u}) {
            const SparseVec dv = derivative(v, d);
            REQUIRE(dv.l0() == v.l0() - (has_zero ? 1 : 0));
            dv.validate();
        }
    }
}

TEST_CASE("norms") {
    Norms n0 = norms(vec(5, {}));
    REQUIRE(n0.l0 == 0);
    REQUIRE(n0.l1 == Int(0));
    REQUIRE(n0.linf == Int(0));
    Norms n1 = norms(vec(5, {{3, 5}}));
    REQUIRE((n1.l0 == 1 && n1.l1 == Int(5) && n1.linf == Int(5)));
    Norms n2 = norms(vec(5, {{1, 2}, {4, 3}}));
    REQUIRE((n2.l0 == 2 && n2.l1 == Int(5) && n2.linf == Int(3)));
}

TEST_CASE("fold_half examples") {
    REQUIRE(fold_half(vec(1, {{0, 7}})) == vec(1, {{0, 7}}));
    REQUIRE(fold_half(vec(4, {{0, 1}, {2, 3}})) == vec(2, {{0, 4}}));
    REQUIRE(fold_half(vec(5, {{1, 2}, {4, 6}})) == vec(3, {{1, 8}}));
}

TEST_CASE("fold_half preserves l1 mass for nonnegative vectors") {
    Rng rng(12);
    for (int iter = 0; iter < 300; ++iter) {
        const Index n = 1 + rng.below(200);
        const SparseVec v = random_vec(rng, n, std::size_t(rng.range(0, 16)), 1000);
        REQUIRE(mass(fold_half(v)) == mass(v));
        REQUIRE(fold_half(v).length() == (n + 1) / 2);
    }
}

TEST_CASE("to_dense and from_dense are mutually inverse") {
    const SparseVec v = vec(3, {{1, 2}});
    const DenseVec d = to_dense(v);
    REQUIRE(d.size() == 3);
    REQUIRE(d[1] == Int(2));
    REQUIRE((d[0].is_zero() && d[2].is_zero()));
    REQUIRE(from_dense(DenseVec(3), 3) == vec(3, {}));
    Rng rng(13);
    for (int iter = 0; iter < 200; ++iter) {
        const Index n = 1 + rng.below(64);
        const SparseVec w = random_vec(rng, n, std::size_t(rng.range(0, 10)), 50);
        REQUIRE(from_dense(to_dense(w), n) == w);
    }
}

TEST_CASE("to_dense refuses beyond the memory guard") {
    Limits tight;
    tight.memory_guard = 16;
    REQUIRE_THROWS_AS(to_dense(vec(17, {{0, 1}}), tight), guard_error);
}

TEST_CASE("canonicalization merges duplicates and drops zeros") {
    std::vector<Entry> pairs{{4, Int(2)}, {1, Int(3)}, {4, Int(-2)}, {2, Int(0)}};
    const SparseVec v = SparseVec::from_pairs(8, std::move(pairs));
    REQUIRE(v == vec(8, {{1, 3}}));
    v.validate();
}

TEST_CASE("pointwise merges") {
    const SparseVec a = vec(8, {{1, 3}, {4, 2}});
    const SparseVec b = vec(8, {{1, 1}, {5, 7}});
    REQUIRE(pointwise_max(a, b) == vec(8, {{1, 3}, {4, 2}, {5, 7}}));
    REQUIRE(pointwise_add(a, b) == vec(8, {{1, 4}, {4, 2}, {5, 7}}));
    REQUIRE(pointwise_le(a, pointwise_max(a, b)));
    REQUIRE(pointwise_le(b, pointwise_max(a, b)));
    REQUIRE(!pointwise_le(pointwise_add(a, b), a));
    REQUIRE(pointwise_le(vec(8, {}), a));
}
