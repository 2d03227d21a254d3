#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tecod/matrix.hpp"
#include "tecod/symbolic.hpp"

namespace tecod {

/// Raised on malformed design files (bad tokens, ragged rows, broken
/// variable numbering).
class DesignParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One cell of a design grid: zero, the training constant, or a signed
/// (possibly conjugated) complex variable.
struct DesignEntry {
    enum class Kind { Zero, Train, Var };

    Kind kind = Kind::Zero;
    int var = 0;        // 1-based variable index, Var only
    bool conj = false;  // Var only
    int sign = 1;       // +1 or -1, Var only

    static DesignEntry zero() { return {}; }
    static DesignEntry train() { return {Kind::Train, 0, false, 1}; }
    static DesignEntry variable(int index, bool conj = false, int sign = 1) {
        return {Kind::Var, index, conj, sign};
    }

    SymExpr expr() const;
    std::complex<double> eval(std::complex<double> training,
                              std::span<const std::complex<double>> vars) const;

    bool operator==(const DesignEntry&) const = default;
};

/// A rows x cols grid of entries linear in the training constant and the
/// complex variables x1..xk. Construction validates dimensions and that
/// variable indices are 1..k with no gaps.
class LinearDesign {
public:
    LinearDesign(std::string name, std::size_t rows, std::size_t cols,
                 std::vector<DesignEntry> grid);

    const std::string& name() const { return name_; }
    std::size_t rows() const { return rows_; }      // channel uses T
    std::size_t cols() const { return cols_; }      // relays K
    std::size_t num_vars() const { return vars_; }  // complex variables k

    const DesignEntry& entry(std::size_t r, std::size_t c) const { return grid_[r * cols_ + c]; }

    bool has_zero_entries() const;
    bool has_train_entries() const;

    /// Numeric evaluation of the whole grid.
    ComplexMatrix evaluate(std::complex<double> training,
                           std::span<const std::complex<double>> vars) const;

    LinearDesign renamed(std::string name) const;

private:
    std::string name_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t vars_ = 0;
    std::vector<DesignEntry> grid_;
};

/// Class membership of a parsed design. A zero-training square design such
/// as the 2x2 orthogonal design satisfies both definitions at once.
struct DesignClass {
    bool cod = false;      // orthogonal design with plain zeros
    bool te_cod = false;   // training-embedded orthogonal design
};

/// Gram entry that breaks a verification, with its symbolic value.
struct GramIssue {
    std::size_t row = 0;  // design column index p (Gram row)
    std::size_t col = 0;  // design column index q (Gram column)
    SymExpr value;
    std::string expected;
};

struct CodReport {
    bool ok = false;
    std::vector<GramIssue> issues;
    std::vector<std::vector<SymExpr>> gram;
};

/// Parses the design-file grammar: one row per line, comma-separated
/// entries, tokens `0`, `a`, or `[-]x<N>[*]`; `#` starts a comment line.
LinearDesign parse_design(const std::string& text, const std::string& name = "design");

/// Exact symbolic X^H X of the design.
std::vector<std::vector<SymExpr>> symbolic_gram(const LinearDesign& design);

/// True orthogonal-design check: X^H X must equal (sum_i |x_i|^2) I
/// symbolically. Rejects designs containing training entries.
CodReport verify_cod(const LinearDesign& design);

/// Replaces every zero entry by the training constant. The input must pass
/// verify_cod.
LinearDesign te_embed(const LinearDesign& design);

/// Replaces every training entry by zero (inverse of te_embed).
LinearDesign strip_training(const LinearDesign& design);

/// Computes class membership. te_cod requires: no zero entries, each column
/// holds every variable exactly once plus rows-vars training entries, and
/// the design with training set to zero verifies as an orthogonal design.
DesignClass classify(const LinearDesign& design);

/// True when no Gram monomial multiplies two different variables, so the
/// quadratic decoding metric splits into per-symbol terms. Gram entries of
/// wider training-embedded designs may SUM single-variable terms of several
/// variables; that still separates.
bool ssd_structure_ok(const LinearDesign& design);

/// Doubling construction for square orthogonal designs on 2^a antennas in
/// a+1 variables, a in 1..4. Output passes verify_cod.
LinearDesign generate_square_cod(int a);

/// Built-in designs: "alamouti", "cod4-paper", "cod4-recursive", "cod43",
/// "cod8".
LinearDesign catalog_design(const std::string& name);
std::vector<std::string> catalog_names();

/// Loads either "catalog:<name>" or a design file from disk.
LinearDesign load_design(const std::string& spec);

}  // namespace tecod
