#pragma once

// Small dense matrices with nonnegative entries. Presentations have at most
// 64 vertices, so everything here is unapologetically O(n^3) row-major.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sofic {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    // The paper's matrix norm: the sum of all entries.
    double entry_sum() const {
        double s = 0.0;
        for (double v : data_) s += v;
        return s;
    }

    double max_entry() const {
        double m = 0.0;
        for (double v : data_) {
            if (v > m) m = v;
        }
        return m;
    }

    bool all_positive() const {
        for (double v : data_) {
            if (v <= 0.0) return false;
        }
        return true;
    }

    bool is_zero() const {
        for (double v : data_) {
            if (v != 0.0) return false;
        }
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void scale(double f) {
        for (double& v : data_) v *= f;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                double av = a(i, k);
                if (av == 0.0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += av * b(k, j);
            }
        }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix shape mismatch");
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Entry counts produced from a digraph are integral; the alias records intent.
using NonnegMatrix = Matrix;

inline std::vector<double> row_times_matrix(const std::vector<double>& v, const Matrix& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vector/matrix shape mismatch");
    std::vector<double> out(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double vi = v[i];
        if (vi == 0.0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += vi * m(i, j);
    }
    return out;
}

inline std::vector<double> matrix_times_col(const Matrix& m, const std::vector<double>& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("matrix/vector shape mismatch");
    std::vector<double> out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

}  // namespace sofic
