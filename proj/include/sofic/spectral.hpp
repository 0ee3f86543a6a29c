#pragma once

// Graph-level spectral analysis: factor entropies through the determinized
// presentations, the Minkowski dimension of the sofic set, the uniform
// complexity certificate for planar systems, and the closed-form dimension
// available when all restricted matrices share a positive eigenvector.

#include <string>
#include <vector>

#include "sofic/hausdorff.hpp"
#include "sofic/model.hpp"
#include "sofic/perron.hpp"

namespace sofic::spectral {

struct EntropyResult {
    int level = 0;
    double value = 0.0;           // h_top(S^(i)) = log rho of the essential part
    double growth_delta = 0.0;    // |log N_i(k+1) - log N_i(k) - value| at k = 12
    bool growth_warning = false;  // delta exceeded 0.02
    int automaton_states = 0;
    int essential_states = 0;
};

// Entropy of the level-i factor via the essential (cycle-supported) part of
// the subset automaton, cross-checked against the finite-k growth of N_i(k).
// Transient states cannot change the exponential growth rate, so the
// essential restriction avoids overcounting from non-extendable states.
EntropyResult entropy_level(const model::LabeledDigraph& g, int level);

struct MinkowskiResult {
    double value = 0.0;
    double rho = 0.0;    // spectral radius of the total adjacency matrix
    double h_top = 0.0;  // log rho
    std::vector<EntropyResult> level_entropies;  // levels 1..r-1
};

// dim_M = h_top(S)/log m_r + sum_i (1/log m_i - 1/log m_{i+1}) h_top(S^(i)).
// Requires a primitive total adjacency matrix; throws otherwise.
MinkowskiResult minkowski_dimension(const model::LabeledDigraph& g);

struct UniformComplexityCertificate {
    enum class Verdict { Holds, Fails, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    char side = 0;        // 'L' or 'R' when verdict == Holds
    double lambda = 0.0;  // shared eigenvalue
    std::vector<double> vec;  // shared vector, unit sum
    struct PerMatrix {
        std::vector<int> prefix;
        double lambda_fit = 0.0;
        double residual = 0.0;
    };
    std::vector<PerMatrix> residuals;  // from the reported side
};

inline const char* to_string(UniformComplexityCertificate::Verdict v) {
    switch (v) {
        case UniformComplexityCertificate::Verdict::Holds: return "holds";
        case UniformComplexityCertificate::Verdict::Fails: return "fails";
        default: return "inconclusive";
    }
}

// Searches both sides for a positive vector v and one lambda with
// v A_s = lambda v (or A_s v = lambda v) across the occurring one-symbol
// prefixes. The candidate is the Perron vector of the summed matrix: a
// genuine common positive eigenvector is necessarily Perron for the sum.
// Defined for r = 2 presentations.
UniformComplexityCertificate uniform_complexity_check(const model::LabeledDigraph& g);

struct SharedEigenvectorResult {
    double dimension = 0.0;
    std::vector<double> vec;  // shared positive right eigenvector, unit sum
    std::vector<std::pair<std::vector<int>, double>> lambdas;  // per prefix in D_{r-1}
};

// Closed-form dimension when A_s v = lambda_s v for one positive v and all
// s in D_{r-1}; absent prefixes enter with lambda_s = 0 and drop out of the
// finite single-letter nested sum. Throws when no shared vector is found.
SharedEigenvectorResult shared_eigenvector_dimension(const model::LabeledDigraph& g);

struct ConjectureProbe {
    UniformComplexityCertificate certificate;
    double minkowski = 0.0;
    double hausdorff_estimate = 0.0;
    double gap = 0.0;  // |minkowski - hausdorff_estimate|
};

// Experimental evidence only: emits the uniform-complexity verdict next to
// both computed dimensions. Makes no truth claim either way.
ConjectureProbe conjecture_probe(const model::LabeledDigraph& g, int n_max,
                                 const hausdorff::Options& opt = {});

}  // namespace sofic::spectral
