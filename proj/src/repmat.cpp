#include "tecod/repmat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tecod {

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](std::int8_t v) { return v == 0; });
}

std::vector<std::complex<double>> IntMatrix::times(
    std::span<const std::complex<double>> v) const {
    std::vector<std::complex<double>> out(rows_, {0.0, 0.0});
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) {
            const int e = at(r, c);
            if (e != 0) out[r] += static_cast<double>(e) * v[c];
        }
    return out;
}

std::vector<std::complex<double>> IntMatrix::times_conj(
    std::span<const std::complex<double>> v) const {
    std::vector<std::complex<double>> out(rows_, {0.0, 0.0});
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) {
            const int e = at(r, c);
            if (e != 0) out[r] += static_cast<double>(e) * std::conj(v[c]);
        }
    return out;
}

std::string IntMatrix::str() const {
    std::ostringstream out;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            const int v = at(r, c);
            out << (v >= 0 ? " " : "") << v << (c + 1 < cols_ ? " " : "");
        }
        out << "\n";
    }
    return out.str();
}

RepresentationMatrixSet extract_rep_matrices(const LinearDesign& design) {
    const DesignClass cls = classify(design);
    if (!cls.te_cod)
        throw std::invalid_argument("representation extraction needs a training-embedded design: '" +
                                    design.name() + "' does not qualify");

    const std::size_t T = design.rows();
    const std::size_t K = design.cols();
    const std::size_t k = design.num_vars();
    const std::size_t num_train = T - k;

    RepresentationMatrixSet set;
    set.block_len = T;
    set.num_train = num_train;
    set.pairs.reserve(K);

    for (std::size_t c = 0; c < K; ++c) {
        RelayMatrixPair pair{IntMatrix(T, T), IntMatrix(T, T)};
        std::size_t train_slot = 0;  // next training slot, top to bottom
        for (std::size_t r = 0; r < T; ++r) {
            const DesignEntry& e = design.entry(r, c);
            if (e.kind == DesignEntry::Kind::Train) {
                pair.a.set(r, train_slot++, 1);
            } else {
                const std::size_t col = num_train + static_cast<std::size_t>(e.var - 1);
                (e.conj ? pair.b : pair.a).set(r, col, e.sign);
            }
        }
        set.pairs.push_back(std::move(pair));
    }
    return set;
}

bool partitions_identity(const RelayMatrixPair& pair) {
    const std::size_t n = pair.a.rows();
    for (std::size_t r1 = 0; r1 < n; ++r1)
        for (std::size_t r2 = 0; r2 < n; ++r2) {
            int sum = 0;
            for (std::size_t c = 0; c < n; ++c)
                sum += pair.a.at(r1, c) * pair.a.at(r2, c) + pair.b.at(r1, c) * pair.b.at(r2, c);
            if (sum != (r1 == r2 ? 1 : 0)) return false;
        }
    return true;
}

std::vector<std::complex<double>> expanded_symbol_vector(std::complex<double> training,
                                                         std::span<const std::complex<double>> vars,
                                                         std::size_t num_train) {
    std::vector<std::complex<double>> out;
    out.reserve(num_train + vars.size());
    out.assign(num_train, training);
    out.insert(out.end(), vars.begin(), vars.end());
    return out;
}

ComplexMatrix assemble_codeword(const RepresentationMatrixSet& matrices,
                                std::span<const std::complex<double>> expanded) {
    const std::size_t T = matrices.block_len;
    ComplexMatrix X(T, matrices.pairs.size());
    for (std::size_t c = 0; c < matrices.pairs.size(); ++c) {
        const auto direct = matrices.pairs[c].a.times(expanded);
        const auto conjugated = matrices.pairs[c].b.times_conj(expanded);
        for (std::size_t r = 0; r < T; ++r) X(r, c) = direct[r] + conjugated[r];
    }
    return X;
}

}  // namespace tecod
