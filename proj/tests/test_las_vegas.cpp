#include <catch2/catch_amalgamated.hpp>

#include "common.hpp"
#include "sparseconv/engines.hpp"
#include "sparseconv/las_vegas.hpp"
#include "sparseconv/oracle.hpp"

using namespace sparseconv;
using sparseconv::testing::random_vec;

namespace {

SparseVec vec(Index n, std::vector<std::pair<Index, i64>> pairs) {
    std::vector<Entry> entries;
    for (auto& [i, v] : pairs) entries.push_back({i, Int(v)});
    return SparseVec::from_pairs(n, std::move(entries));
}

}  // namespace

TEST_CASE("approx_conv_linear basics") {
    Rng rng(51);
    const SparseVec unit = vec(1, {{0, 1}});
    for (Index m : {1, 2, 5, 8}) {
        const SparseVec r = approx_conv_linear(unit, unit, m, rng);
        REQUIRE(r == vec(1, {{0, 1}}));
    }
    const SparseVec empty4(4);
    REQUIRE(approx_conv_linear(empty4, empty4, 3, rng).empty());
}

TEST_CASE("approx_conv_linear never exceeds the true product") {
    Rng rng(52);
    for (int iter = 0; iter < 400; ++iter) {
        const Index n = 2 + rng.below(512);
        const SparseVec a = random_vec(rng, n, std::size_t(rng.range(0, 24)), 1u << 12);
        const SparseVec b = random_vec(rng, n, std::size_t(rng.range(0, 24)), 1u << 12);
        const SparseVec truth = oracle_conv(a, b);
        const Index m = 1 + rng.below(64);
        const SparseVec r = approx_conv_linear(a, b, m, rng);
        REQUIRE(r.nonnegative());
        REQUIRE(pointwise_le(r, truth));
        REQUIRE(mass(r) <= mass(a) * mass(b));
    }
}

TEST_CASE("drivers match the oracle on random instances and fixed seeds") {
    for (const u64 seed : {u64(0), u64(1), ~u64(0)}) {
        Rng gen(seed ^ 0x1234);
        for (int iter = 0; iter < 30; ++iter) {
            const Index n = 2 + gen.below(1 << 12);
            const SparseVec a = random_vec(gen, n, std::size_t(gen.range(0, 32)), 1u << 10);
            const SparseVec b = random_vec(gen, n, std::size_t(gen.range(0, 32)), 1u << 10);
            const SparseVec truth = oracle_conv(a, b);

            Rng r1(seed), r2(seed), r3(seed), r4(seed + 7);
            REQUIRE(simple_las_vegas(a, b, r1) == truth);
            REQUIRE(fast_las_vegas(a, b, r2) == truth);
            REQUIRE(sparse_conv(a, b, r3) == truth);
            LvConfig cfg;
            cfg.epsilon = 0.25;
            REQUIRE(high_prob_las_vegas(a, b, cfg, r4) == truth);
        }
    }
}

TEST_CASE("identity and empty behavior across drivers") {
    Rng rng(53);
    const SparseVec unit = vec(1, {{0, 1}});
    const SparseVec b = random_vec(rng, 300, 12, 100);
    Rng r1(9), r2(9), r3(9);
    REQUIRE(SparseVec::same_entries(simple_las_vegas(unit, b, r1), b));
    REQUIRE(SparseVec::same_entries(fast_las_vegas(unit, b, r2), b));
    REQUIRE(SparseVec::same_entries(sparse_conv(unit, b, r3), b));

    const SparseVec empty(0);
    Rng r4(9);
    EngineReport rep;
    REQUIRE(simple_las_vegas(empty, empty, r4, {}, &rep).empty());
    REQUIRE(rep.m_visited == std::vector<Index>{1});
}

TEST_CASE("high-probability driver output is seed independent") {
    Rng gen(54);
    const SparseVec a = random_vec(gen, 2000, 25, 500);
    const SparseVec b = random_vec(gen, 2000, 25, 500);
    LvConfig cfg;
    for (double eps : {0.25, 0.5, 1.0}) {
        cfg.epsilon = eps;
        Rng r1(1), r2(999);
        const SparseVec c1 = high_prob_las_vegas(a, b, cfg, r1);
        const SparseVec c2 = high_prob_las_vegas(a, b, cfg, r2);
        REQUIRE(c1 == c2);
        REQUIRE(c1 == oracle_conv(a, b));
    }
}

TEST_CASE("residual recovery recovers handcrafted residuals") {
    // A = {(0,1),(3,1)}, B = {(0,1)}, C = {(0,1)}: residual is e_3
    const SparseVec a = vec(4, {{0, 1}, {3, 1}});
    const SparseVec b = vec(1, {{0, 1}});
    const SparseVec c = vec(4, {{0, 1}});
    bool recovered = false;
    Rng rng(55);
    for (int tries = 0; tries < 32 && !recovered; ++tries) {
        const SparseVec r = residual_recover(a, b, c, 3, rng);
        REQUIRE(r.nonnegative());
        REQUIRE(pointwise_le(r, vec(4, {{3, 1}})));
        if (r == vec(4, {{3, 1}})) recovered = true;
    }
    REQUIRE(recovered);  // p=3 isolates index 3, and p in {3,5} both do

    // C = A*B leaves nothing to recover
    const SparseVec full = oracle_conv(a, b);
    const SparseVec r0 = residual_recover(a, b, full, 5, rng);
    REQUIRE(r0.empty());
}

TEST_CASE("residual recovery bounded by the residual on random instances") {
    Rng rng(56);
    for (int iter = 0; iter < 200; ++iter) {
        const Index n = 2 + rng.below(256);
        const SparseVec a = random_vec(rng, n, std::size_t(rng.range(0, 16)), 1000);
        const SparseVec b = random_vec(rng, n, std::size_t(rng.range(0, 16)), 1000);
        const SparseVec truth = oracle_conv(a, b);
        const SparseVec r = residual_recover(a, b, SparseVec(truth.length()), 2 + rng.below(64), rng);
        REQUIRE(r.nonnegative());
        REQUIRE(pointwise_le(r, truth));
    }
}

TEST_CASE("monotone safety in debug mode, all drivers") {
    Rng gen(57);
    for (int iter = 0; iter < 25; ++iter) {
        const Index n = 2 + gen.below(2048);
        const SparseVec a = random_vec(gen, n, std::size_t(gen.range(0, 20)), 1u << 8);
        const SparseVec b = random_vec(gen, n, std::size_t(gen.range(0, 20)), 1u << 8);
        const SparseVec truth = oracle_conv(a, b);
        LvDebug dbg;
        dbg.product = &truth;
        Rng r1(iter), r2(iter), r3(iter), r4(iter);
        LvConfig cfg;
        REQUIRE(simple_las_vegas(a, b, r1, cfg, nullptr, &dbg) == truth);
        REQUIRE(fast_las_vegas(a, b, r2, cfg, nullptr, &dbg) == truth);
        REQUIRE(high_prob_las_vegas(a, b, cfg, r3, nullptr, &dbg) == truth);
        REQUIRE(sparse_conv(a, b, r4, cfg, nullptr, &dbg) == truth);
        REQUIRE(dbg.boundaries_checked > 0);
    }
}

TEST_CASE("length reduction path with tiny supports and large n") {
    Rng gen(58);
    for (int iter = 0; iter < 40; ++iter) {
        const Index n = (Index(1) << 16) + gen.below(1 << 20);
        const std::size_t la = 1 + std::size_t(gen.below(3));
        const std::size_t lb = 1 + std::size_t(gen.below(3));
        const SparseVec a = random_vec(gen, n, la, 1u << 16);
        const SparseVec b = random_vec(gen, n, lb, 1u << 16);
        // the reduced universe |A|_0^3 |B|_0^3 <= 729 is far below 2n-1,
        // so this exercises the hashing branch
        Rng r(iter * 31 + 1);
        EngineReport rep;
        const SparseVec c = sparse_conv(a, b, r, {}, &rep);
        REQUIRE(c == oracle_conv(a, b));
    }
}

TEST_CASE("single-entry inputs through the length reduction") {
    Rng r(59);
    const SparseVec a = vec(1 << 20, {{914, 7}});
    const SparseVec b = vec(1 << 20, {{100003, 11}});
    const SparseVec c = sparse_conv(a, b, r);
    REQUIRE(c == vec((1 << 21) - 1, {{100917, 77}}));
}

TEST_CASE("memory guard refusals") {
    LvConfig cfg;
    cfg.limits.memory_guard = 64;
    const SparseVec a = vec(4096, {{0, 1}, {4095, 1}});
    Rng r1(1);
    REQUIRE_THROWS_AS(approx_conv_linear(a, a, 128, r1, cfg.limits), guard_error);
}

TEST_CASE("fault injection is caught by the debug invariant") {
    const SparseVec a = vec(8, {{0, 1}, {4, 1}});
    const SparseVec truth = oracle_conv(a, a);
    // fake a passing 1-sparse bucket at position 1, where the product is zero
    static bool armed = true;
    armed = true;
    detail::lv_fault_hook = [](DenseVec& x, DenseVec& y, DenseVec& z) {
        if (!armed) return;
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (!x[k].is_zero()) {
                y[k] = x[k];
                z[k] = x[k];
                armed = false;
                return;
            }
        }
    };
    LvDebug dbg;
    dbg.product = &truth;
    Rng r(3);
    bool caught = false;
    try {
        simple_las_vegas(a, a, r, {}, nullptr, &dbg);
    } catch (const internal_error&) {
        caught = true;
    }
    detail::lv_fault_hook = nullptr;
    REQUIRE(caught);
}

TEST_CASE("engine reports carry the run trace") {
    Rng gen(60);
    const SparseVec a = random_vec(gen, 4096, 40, 100);
    const SparseVec b = random_vec(gen, 4096, 40, 100);
    EngineReport rep;
    RunOptions opt;
    opt.lv.seed = 5;
    const SparseVec c = run_engine(Algo::LvFast, a, b, opt, &rep);
    REQUIRE(c == oracle_conv(a, b));
    REQUIRE(rep.algorithm == "lv-fast");
    REQUIRE(rep.seed == 5);
    REQUIRE(!rep.m_visited.empty());
    REQUIRE(rep.output_l0 == c.l0());
    REQUIRE(rep.approx_rounds > 0);
}
