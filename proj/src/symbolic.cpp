#include "tecod/symbolic.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tecod {

namespace {

std::string factor_str(const SymbolFactor& f) {
    std::string s = f.id == 0 ? "a" : "x" + std::to_string(f.id);
    if (f.conj) s += "*";
    return s;
}

std::string monomial_str(const Monomial& m) {
    if (m.empty()) return "1";
    // |x|^2 rendering for a factor times its own conjugate.
    if (m.size() == 2 && m[0].id == m[1].id && m[0].conj != m[1].conj) {
        const std::string base = m[0].id == 0 ? "a" : "x" + std::to_string(m[0].id);
        return "|" + base + "|^2";
    }
    std::string s = factor_str(m[0]);
    for (std::size_t i = 1; i < m.size(); ++i) s += "." + factor_str(m[i]);
    return s;
}

}  // namespace

void SymExpr::add_term(Monomial m, std::int64_t coeff) {
    if (coeff == 0) return;
    std::sort(m.begin(), m.end());
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(std::move(m), coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

SymExpr SymExpr::term(std::int64_t coeff, Monomial m) {
    SymExpr e;
    e.add_term(std::move(m), coeff);
    return e;
}

SymExpr SymExpr::symbol(int id, bool conj, int sign) {
    return term(sign, Monomial{SymbolFactor{id, conj}});
}

SymExpr& SymExpr::operator+=(const SymExpr& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

SymExpr& SymExpr::operator-=(const SymExpr& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

SymExpr operator*(const SymExpr& a, const SymExpr& b) {
    SymExpr out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            out.add_term(std::move(m), ca * cb);
        }
    }
    return out;
}

SymExpr SymExpr::conjugate() const {
    SymExpr out;
    for (const auto& [m, c] : terms_) {
        Monomial flipped = m;
        for (auto& f : flipped) f.conj = !f.conj;
        out.add_term(std::move(flipped), c);
    }
    return out;
}

SymExpr SymExpr::without_symbol(int id) const {
    SymExpr out;
    for (const auto& [m, c] : terms_) {
        const bool contains = std::any_of(m.begin(), m.end(),
                                          [id](const SymbolFactor& f) { return f.id == id; });
        if (!contains) out.add_term(m, c);
    }
    return out;
}

std::vector<int> SymExpr::variable_ids() const {
    std::set<int> ids;
    for (const auto& [m, c] : terms_) {
        for (const auto& f : m) {
            if (f.id >= 1) ids.insert(f.id);
        }
    }
    return {ids.begin(), ids.end()};
}

std::complex<double> SymExpr::eval(const std::vector<std::complex<double>>& values) const {
    std::complex<double> total = 0.0;
    for (const auto& [m, c] : terms_) {
        std::complex<double> prod = static_cast<double>(c);
        for (const auto& f : m) {
            const std::complex<double> v = values.at(static_cast<std::size_t>(f.id));
            prod *= f.conj ? std::conj(v) : v;
        }
        total += prod;
    }
    return total;
}

std::string SymExpr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (c >= 0 && !first) out << " + ";
        if (c < 0) out << (first ? "-" : " - ");
        const std::int64_t mag = c < 0 ? -c : c;
        if (mag != 1 || m.empty()) out << mag;
        if (!m.empty()) {
            if (mag != 1) out << ".";
            out << monomial_str(m);
        }
        first = false;
    }
    return out.str();
}

SymExpr plus_conjugate(const SymExpr& a) { return a + a.conjugate(); }

SymExpr minus_conjugate(const SymExpr& a) { return a - a.conjugate(); }

}  // namespace tecod
