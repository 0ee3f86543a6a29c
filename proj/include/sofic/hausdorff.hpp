#pragma once

// Nested weighted word sums g_N and the dimension estimates extracted from
// them. g_N runs over legal level-1 words, then over their level-2 fibers,
// and so on; the innermost quantity is either the exact fiber count or the
// sum-of-entries norm of the corresponding restricted-matrix product.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sofic/model.hpp"

namespace sofic::hausdorff {

enum class FiberMode { ExactFibers, NormSurrogate };

inline const char* to_string(FiberMode m) {
    return m == FiberMode::ExactFibers ? "exact-fibers" : "norm-surrogate";
}

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    FiberMode mode = FiberMode::ExactFibers;
    std::uint64_t node_budget = 100000000ull;  // enumeration nodes per call
    int workers = 1;
};

struct NestedSumResult {
    int length = 0;       // N
    double log_g = 0.0;   // natural log of g_N
    FiberMode mode = FiberMode::ExactFibers;
    std::vector<long long> words_per_level;  // completed words, levels 1..r-1
    std::uint64_t nodes_visited = 0;
    bool accelerated = false;
};

struct DimensionEstimate {
    int n_max = 0;
    FiberMode mode = FiberMode::ExactFibers;
    std::vector<double> e;  // e_N = log g_N / (N log m1), N = 1..n_max
    std::vector<double> d;  // d_N = log(g_{N+1}/g_N) / log m1, N = 1..n_max-1
    double estimate = 0.0;  // d_{n_max - 1}
    double uncertainty = 0.0;  // |e_{n_max} - d_{n_max-1}|
};

// g_N for a pruned, nonempty graph. Enumeration shards by a fixed-depth
// level-1 prefix with a deterministic pairwise log-sum-exp reduction, so the
// result does not depend on the worker count.
NestedSumResult nested_sum(const model::LabeledDigraph& g, int n, const Options& opt = {});

// Both diagnostic sequences plus the point estimate d_{n_max-1}. The
// difference quotients settle much faster than the raw ratios e_N whenever
// g_N is close to geometric, so d provides the point estimate and |e - d|
// the uncertainty band.
DimensionEstimate dimension_estimate(const model::LabeledDigraph& g, int n_max,
                                     const Options& opt = {});

// Same value as nested_sum with the norm-surrogate innermost quantity, but
// partial matrix products are grouped into projective classes (integer row
// vectors reduced by their gcd), so cost follows the class count rather than
// the word count. Falls back to plain enumeration past the class budget.
// Supported for r = 2 and r = 3.
struct AcceleratedResult {
    NestedSumResult sum;
    std::vector<std::vector<long long>> class_keys;  // observed canonical rays
    bool fell_back = false;
};

AcceleratedResult accelerated_nested_sum(const model::LabeledDigraph& g, int n,
                                         std::uint64_t class_budget = 4096,
                                         std::uint64_t node_budget = 100000000ull);

}  // namespace sofic::hausdorff
