#include "sofic/perron.hpp"

#include <cmath>
#include <stdexcept>

namespace sofic::spectral {

namespace {

// log rho(A) via lim (1/m) log ||A^m|| along m = 2^k. The entry-sum norm is
// submultiplicative on nonnegative matrices, so the estimates decrease to the
// limit; 56 squarings put the polynomial correction term below 1e-14.
double log_rho_gelfand(const Matrix& a) {
    double f0 = a.entry_sum();
    if (f0 == 0.0) return -1.0 / 0.0;
    Matrix s = a;
    s.scale(1.0 / f0);
    double log_norm = std::log(f0);  // log ||A^m|| for the current m
    double m = 1.0;
    for (int k = 0; k < 56; ++k) {
        s = s * s;
        double f = s.entry_sum();
        if (f == 0.0) return -1.0 / 0.0;  // nilpotent
        s.scale(1.0 / f);
        log_norm = 2.0 * log_norm + std::log(f);
        m *= 2.0;
    }
    return log_norm / m;
}

struct VecResult {
    std::vector<double> v;
    double residual;
    int iterations;
};

// Power iteration on A + I toward the rho-eigenvector; `rho` is the already
// known spectral radius, used only for the residual target.
VecResult power_vector(const Matrix& a, double rho, int max_iter) {
    std::size_t n = a.rows();
    std::vector<double> v(n, 1.0 / static_cast<double>(n));
    double residual = 0.0;
    int it = 0;
    for (; it < max_iter; ++it) {
        std::vector<double> w = matrix_times_col(a, v);
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) residual += std::abs(w[i] - rho * v[i]);
        if (residual <= 1e-13 * std::max(rho, 1.0)) break;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] += v[i];  // shift by identity keeps periodic parts converging
            total += w[i];
        }
        if (total == 0.0) break;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / total;
    }
    return {std::move(v), residual, it};
}

}  // namespace

PerronData spectral_radius(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("spectral_radius: matrix not square");
    PerronData out;
    std::size_t n = m.rows();
    if (n == 0 || m.is_zero()) {
        out.zero_matrix = m.is_zero();
        out.rho = 0.0;
        out.right.assign(n, 0.0);
        out.left.assign(n, 0.0);
        return out;
    }
    double lr = log_rho_gelfand(m);
    out.rho = std::isinf(lr) ? 0.0 : std::exp(lr);
    VecResult rv = power_vector(m, out.rho, 50000);
    VecResult lv = power_vector(m.transpose(), out.rho, 50000);
    out.right = std::move(rv.v);
    out.left = std::move(lv.v);
    out.right_residual = rv.residual;
    out.left_residual = lv.residual;
    out.iterations = std::max(rv.iterations, lv.iterations);
    return out;
}

}  // namespace sofic::spectral
