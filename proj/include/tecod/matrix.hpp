#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tecod {

/// Dense row-major complex matrix. Designs at desk scale are at most 8x8,
/// so no effort is spent on blocking or expression templates.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, {0.0, 0.0}) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::complex<double>& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const std::complex<double>& operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    ComplexMatrix hermitian() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const std::complex<double> v = a(r, k);
                for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += v * b(k, c);
            }
        return out;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
        ComplexMatrix out(a.rows_, a.cols_);
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
        return out;
    }

    std::vector<std::complex<double>> times(const std::vector<std::complex<double>>& v) const {
        std::vector<std::complex<double>> out(rows_, {0.0, 0.0});
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::complex<double>> data_;
};

}  // namespace tecod
