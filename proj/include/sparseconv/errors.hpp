#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sparseconv {

// Error taxonomy mirrored by the CLI exit codes (2/3/4/5).

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configured resource guard refused the operation (not a bug).
struct guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition.
struct contract_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal invariant failed; always a bug, never silent.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Resource guards, counted in vector elements (one element is roughly one
// machine word plus bignum overhead). Callers may tighten or relax them.
struct Limits {
    std::uint64_t memory_guard = std::uint64_t(1) << 26;       // dense lengths, bucket counts
    std::uint64_t schoolbook_guard = std::uint64_t(1) << 26;   // pairwise-product counts
    std::uint64_t sieve_guard = std::uint64_t(1) << 27;        // sieve upper bound
    std::uint64_t ext_degree_guard = 4096;                     // extension field degree p-1
};

inline const Limits& default_limits() {
    static const Limits limits{};
    return limits;
}

}  // namespace sparseconv
