#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tecod {

/// One symbol occurrence inside a monomial. Symbol id 0 is the training
/// constant; id i >= 1 is the i-th complex design variable.
struct SymbolFactor {
    int id = 0;
    bool conj = false;

    auto operator<=>(const SymbolFactor&) const = default;
};

/// Product of symbol factors kept in canonical sorted order. Everything
/// this library produces has degree at most 2.
using Monomial = std::vector<SymbolFactor>;

/// Exact integer-coefficient combination of monomials. Design verification
/// runs entirely on these; no floating point enters the checks.
class SymExpr {
public:
    SymExpr() = default;

    /// coeff * product of the given factors.
    static SymExpr term(std::int64_t coeff, Monomial m);

    /// sign * symbol (optionally conjugated).
    static SymExpr symbol(int id, bool conj = false, int sign = 1);

    static SymExpr training() { return symbol(0); }
    static SymExpr variable(int index, bool conj = false, int sign = 1) {
        return symbol(index, conj, sign);
    }

    bool is_zero() const { return terms_.empty(); }

    SymExpr& operator+=(const SymExpr& other);
    SymExpr& operator-=(const SymExpr& other);
    friend SymExpr operator+(SymExpr a, const SymExpr& b) { return a += b; }
    friend SymExpr operator-(SymExpr a, const SymExpr& b) { return a -= b; }
    friend SymExpr operator*(const SymExpr& a, const SymExpr& b);

    SymExpr conjugate() const;

    /// Copy with every monomial containing symbol `id` dropped, i.e. the
    /// symbol substituted by zero.
    SymExpr without_symbol(int id) const;

    /// Distinct variable ids (id >= 1) appearing anywhere, ascending.
    std::vector<int> variable_ids() const;

    /// Numeric value with symbol id mapped to values[id] (values[0] is the
    /// training constant).
    std::complex<double> eval(const std::vector<std::complex<double>>& values) const;

    bool operator==(const SymExpr&) const = default;

    const std::map<Monomial, std::int64_t>& terms() const { return terms_; }

    /// Human-readable rendering, e.g. "|x1|^2 + |x2|^2" or "2Re(x3*.a)".
    std::string str() const;

private:
    void add_term(Monomial m, std::int64_t coeff);

    std::map<Monomial, std::int64_t> terms_;
};

/// a + conj(a), i.e. 2 Re(a) when `a` is a product expression.
SymExpr plus_conjugate(const SymExpr& a);

/// a - conj(a), i.e. 2i Im(a).
SymExpr minus_conjugate(const SymExpr& a);

}  // namespace tecod
