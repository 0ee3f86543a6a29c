#pragma once

// Perron data for nonnegative matrices. The spectral radius comes from
// Gelfand iteration with repeated squaring (norm of A^(2^k) to the 1/2^k),
// which is insensitive to periodicity and reducibility; eigenvectors come
// from power iteration on A + I so convergence holds on primitive parts.

#include <vector>

#include "sofic/matrix.hpp"

namespace sofic::spectral {

struct PerronData {
    double rho = 0.0;
    std::vector<double> right;    // unit-sum when nonzero
    std::vector<double> left;
    double right_residual = 0.0;  // ||A v - rho v||_1 with ||v||_1 = 1
    double left_residual = 0.0;
    bool zero_matrix = false;
    int iterations = 0;
};

PerronData spectral_radius(const Matrix& m);

}  // namespace sofic::spectral
