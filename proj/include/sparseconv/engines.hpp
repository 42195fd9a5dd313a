#pragma once

// Single dispatch point from algorithm names to engines, shared by the CLI,
// the benchmark harness, and the test suites.

#include <optional>
#include <string>

#include "sparseconv/deterministic.hpp"
#include "sparseconv/las_vegas.hpp"
#include "sparseconv/oracle.hpp"

namespace sparseconv {

enum class Algo { Det, LvSimple, LvHp, LvFast, LvFull, Dense, Oracle };

inline std::optional<Algo> algo_from_name(const std::string& name) {
    if (name == "det") return Algo::Det;
    if (name == "lv-simple") return Algo::LvSimple;
    if (name == "lv-hp") return Algo::LvHp;
    if (name == "lv-fast") return Algo::LvFast;
    if (name == "lv-full") return Algo::LvFull;
    if (name == "dense") return Algo::Dense;
    if (name == "oracle") return Algo::Oracle;
    return std::nullopt;
}

inline const char* algo_name(Algo a) {
    switch (a) {
        case Algo::Det: return "det";
        case Algo::LvSimple: return "lv-simple";
        case Algo::LvHp: return "lv-hp";
        case Algo::LvFast: return "lv-fast";
        case Algo::LvFull: return "lv-full";
        case Algo::Dense: return "dense";
        case Algo::Oracle: return "oracle";
    }
    return "?";
}

struct RunOptions {
    LvConfig lv;           // epsilon, limits, seed
    unsigned threads = 1;  // deterministic engine only
};

inline SparseVec run_engine(Algo algo, const SparseVec& a, const SparseVec& b,
                            const RunOptions& opt = {}, EngineReport* report = nullptr,
                            LvDebug* debug = nullptr) {
    Rng rng(opt.lv.seed);
    if (report) report->seed = opt.lv.seed;
    switch (algo) {
        case Algo::Det: {
            DetReport det;
            SparseVec c = deterministic_conv(a, b, opt.threads, &det, opt.lv.limits);
            if (report) {
                report->algorithm = "det";
                report->total_ms = det.total_ms;
                report->output_l0 = det.output_l0;
            }
            return c;
        }
        case Algo::LvSimple:
            return simple_las_vegas(a, b, rng, opt.lv, report, debug);
        case Algo::LvHp:
            return high_prob_las_vegas(a, b, opt.lv, rng, report, debug);
        case Algo::LvFast:
            return fast_las_vegas(a, b, rng, opt.lv, report, debug);
        case Algo::LvFull:
            return sparse_conv(a, b, rng, opt.lv, report, debug);
        case Algo::Dense: {
            detail::Stopwatch clock;
            const Index out_len = detail::conv_length(a, b);
            SparseVec c(out_len);
            if (!a.empty() && !b.empty()) c = detail::dense_direct_conv(a, b, opt.lv.limits);
            if (report) {
                report->algorithm = "dense";
                report->total_ms = clock.ms();
                report->output_l0 = c.l0();
            }
            return c;
        }
        case Algo::Oracle: {
            detail::Stopwatch clock;
            SparseVec c = oracle_conv(a, b, opt.lv.limits);
            if (report) {
                report->algorithm = "oracle";
                report->total_ms = clock.ms();
                report->output_l0 = c.l0();
            }
            return c;
        }
    }
    throw internal_error("run_engine: unknown algorithm");
}

}  // namespace sparseconv
