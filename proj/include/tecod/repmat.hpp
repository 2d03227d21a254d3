#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tecod/design.hpp"
#include "tecod/matrix.hpp"

namespace tecod {

/// Small integer matrix with entries in {-1, 0, +1}.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    int at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, int v) { a_[r * cols_ + c] = static_cast<std::int8_t>(v); }

    bool is_zero() const;
    bool operator==(const IntMatrix&) const = default;

    std::vector<std::complex<double>> times(std::span<const std::complex<double>> v) const;
    std::vector<std::complex<double>> times_conj(std::span<const std::complex<double>> v) const;

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int8_t> a_;
};

/// Per-relay processing pair: the relay transmits a scaled A r + B conj(r).
struct RelayMatrixPair {
    IntMatrix a;
    IntMatrix b;
};

/// One pair per design column, in column order.
struct RepresentationMatrixSet {
    std::size_t block_len = 0;  // T
    std::size_t num_train = 0;  // training copies in the expanded vector
    std::vector<RelayMatrixPair> pairs;
};

/// Builds the column-vector representation of a training-embedded design:
/// column j equals A_j v + B_j conj(v) with v = [training x (T-k), x1..xk].
/// Training slots are assigned per column top to bottom, which keeps the
/// assignment deterministic and the slot columns distinct.
RepresentationMatrixSet extract_rep_matrices(const LinearDesign& design);

/// Integer-exact check that A A^T + B B^T is the identity (entries are
/// real, so the transpose is the conjugate transpose).
bool partitions_identity(const RelayMatrixPair& pair);

/// Expanded symbol vector [training repeated num_train times, vars...].
std::vector<std::complex<double>> expanded_symbol_vector(std::complex<double> training,
                                                         std::span<const std::complex<double>> vars,
                                                         std::size_t num_train);

/// Codeword assembly through the representation route: column j is
/// A_j v + B_j conj(v).
ComplexMatrix assemble_codeword(const RepresentationMatrixSet& matrices,
                                std::span<const std::complex<double>> expanded);

}  // namespace tecod
