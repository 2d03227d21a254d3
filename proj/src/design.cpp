#include "tecod/design.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace tecod {

SymExpr DesignEntry::expr() const {
    switch (kind) {
        case Kind::Zero:
            return SymExpr{};
        case Kind::Train:
            return SymExpr::training();
        case Kind::Var:
            return SymExpr::variable(var, conj, sign);
    }
    return SymExpr{};
}

std::complex<double> DesignEntry::eval(std::complex<double> training,
                                       std::span<const std::complex<double>> vars) const {
    switch (kind) {
        case Kind::Zero:
            return {0.0, 0.0};
        case Kind::Train:
            return training;
        case Kind::Var: {
            const std::complex<double> v = vars[static_cast<std::size_t>(var - 1)];
            return static_cast<double>(sign) * (conj ? std::conj(v) : v);
        }
    }
    return {0.0, 0.0};
}

LinearDesign::LinearDesign(std::string name, std::size_t rows, std::size_t cols,
                           std::vector<DesignEntry> grid)
    : name_(std::move(name)), rows_(rows), cols_(cols), grid_(std::move(grid)) {
    if (rows_ * cols_ != grid_.size()) throw std::invalid_argument("design grid size mismatch");
    if (cols_ < 2) throw std::invalid_argument("design needs at least 2 columns");
    if (rows_ < cols_) throw std::invalid_argument("design needs rows >= columns");

    std::set<int> seen;
    for (const auto& e : grid_) {
        if (e.kind == DesignEntry::Kind::Var) {
            if (e.var < 1) throw std::invalid_argument("variable indices start at 1");
            if (e.sign != 1 && e.sign != -1) throw std::invalid_argument("entry sign must be +/-1");
            seen.insert(e.var);
        }
    }
    if (seen.empty()) throw std::invalid_argument("design has no variables");
    vars_ = seen.size();
    if (*seen.begin() != 1 || static_cast<std::size_t>(*seen.rbegin()) != vars_)
        throw std::invalid_argument("variable indices must be contiguous from x1");
    if (rows_ < vars_) throw std::invalid_argument("design needs rows >= number of variables");
}

bool LinearDesign::has_zero_entries() const {
    return std::any_of(grid_.begin(), grid_.end(),
                       [](const DesignEntry& e) { return e.kind == DesignEntry::Kind::Zero; });
}

bool LinearDesign::has_train_entries() const {
    return std::any_of(grid_.begin(), grid_.end(),
                       [](const DesignEntry& e) { return e.kind == DesignEntry::Kind::Train; });
}

ComplexMatrix LinearDesign::evaluate(std::complex<double> training,
                                     std::span<const std::complex<double>> vars) const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = entry(r, c).eval(training, vars);
    return out;
}

LinearDesign LinearDesign::renamed(std::string name) const {
    LinearDesign copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

DesignEntry parse_token(const std::string& token, std::size_t line_no) {
    const auto fail = [&](const std::string& why) {
        throw DesignParseError("line " + std::to_string(line_no) + ": bad entry '" + token +
                               "': " + why);
    };
    if (token == "0") return DesignEntry::zero();
    if (token == "a") return DesignEntry::train();

    std::size_t pos = 0;
    int sign = 1;
    if (pos < token.size() && token[pos] == '-') {
        sign = -1;
        ++pos;
    }
    if (pos >= token.size() || token[pos] != 'x') fail("expected 0, a, or [-]x<N>[*]");
    ++pos;
    std::size_t digits = 0;
    long index = 0;
    while (pos < token.size() && std::isdigit(static_cast<unsigned char>(token[pos]))) {
        index = index * 10 + (token[pos] - '0');
        ++pos;
        ++digits;
        if (index > 64) fail("variable index out of range");
    }
    if (digits == 0) fail("missing variable index");
    bool conj = false;
    if (pos < token.size() && token[pos] == '*') {
        conj = true;
        ++pos;
    }
    if (pos != token.size()) fail("trailing characters");
    if (index < 1) fail("variable indices start at 1");
    return DesignEntry::variable(static_cast<int>(index), conj, sign);
}

}  // namespace

LinearDesign parse_design(const std::string& text, const std::string& name) {
    std::vector<std::vector<DesignEntry>> rows;
    std::istringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        std::vector<DesignEntry> row;
        std::string token;
        std::istringstream cells(stripped);
        while (std::getline(cells, token, ',')) row.push_back(parse_token(trim(token), line_no));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DesignParseError("design file has no rows");

    const std::size_t cols = rows.front().size();
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw DesignParseError("ragged design: row " + std::to_string(r + 1) + " has " +
                                   std::to_string(rows[r].size()) + " entries, expected " +
                                   std::to_string(cols));
    }

    std::vector<DesignEntry> grid;
    grid.reserve(rows.size() * cols);
    bool any_train = false;
    std::set<int> indices;
    for (const auto& row : rows) {
        for (const auto& e : row) {
            if (e.kind == DesignEntry::Kind::Train) any_train = true;
            if (e.kind == DesignEntry::Kind::Var) indices.insert(e.var);
            grid.push_back(e);
        }
    }
    if (indices.empty()) throw DesignParseError("design has no variables");
    if (*indices.begin() != 1 || static_cast<std::size_t>(*indices.rbegin()) != indices.size())
        throw DesignParseError("variable indices must be contiguous from x1");

    // Training-embedded designs must hold each variable exactly once per
    // column; duplicates are a structural error, not a verification failure.
    if (any_train) {
        for (std::size_t c = 0; c < cols; ++c) {
            std::set<int> in_column;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const DesignEntry& e = rows[r][c];
                if (e.kind != DesignEntry::Kind::Var) continue;
                if (!in_column.insert(e.var).second)
                    throw DesignParseError("column " + std::to_string(c + 1) +
                                           " repeats variable x" + std::to_string(e.var));
            }
        }
    }

    try {
        return LinearDesign(name, rows.size(), cols, std::move(grid));
    } catch (const std::invalid_argument& err) {
        throw DesignParseError(err.what());
    }
}

std::vector<std::vector<SymExpr>> symbolic_gram(const LinearDesign& design) {
    const std::size_t cols = design.cols();
    std::vector<std::vector<SymExpr>> gram(cols, std::vector<SymExpr>(cols));
    for (std::size_t p = 0; p < cols; ++p) {
        for (std::size_t q = 0; q < cols; ++q) {
            SymExpr sum;
            for (std::size_t t = 0; t < design.rows(); ++t)
                sum += design.entry(t, p).expr().conjugate() * design.entry(t, q).expr();
            gram[p][q] = std::move(sum);
        }
    }
    return gram;
}

CodReport verify_cod(const LinearDesign& design) {
    if (design.has_train_entries())
        throw std::invalid_argument(
            "verify_cod expects plain zeros; strip training entries first");

    SymExpr expected_diag;
    for (std::size_t i = 1; i <= design.num_vars(); ++i) {
        const SymExpr x = SymExpr::variable(static_cast<int>(i));
        expected_diag += x.conjugate() * x;
    }

    CodReport report;
    report.gram = symbolic_gram(design);
    for (std::size_t p = 0; p < design.cols(); ++p) {
        for (std::size_t q = 0; q < design.cols(); ++q) {
            const SymExpr& entry = report.gram[p][q];
            if (p == q) {
                if (entry != expected_diag)
                    report.issues.push_back({p, q, entry, "sum_i |x_i|^2"});
            } else if (!entry.is_zero()) {
                report.issues.push_back({p, q, entry, "0"});
            }
        }
    }
    report.ok = report.issues.empty();
    return report;
}

LinearDesign te_embed(const LinearDesign& design) {
    const CodReport report = verify_cod(design);
    if (!report.ok)
        throw std::invalid_argument("te_embed requires a verified orthogonal design: '" +
                                    design.name() + "' fails the Gram check");

    std::vector<DesignEntry> grid;
    grid.reserve(design.rows() * design.cols());
    for (std::size_t r = 0; r < design.rows(); ++r)
        for (std::size_t c = 0; c < design.cols(); ++c) {
            const DesignEntry& e = design.entry(r, c);
            grid.push_back(e.kind == DesignEntry::Kind::Zero ? DesignEntry::train() : e);
        }
    return LinearDesign(design.name(), design.rows(), design.cols(), std::move(grid));
}

LinearDesign strip_training(const LinearDesign& design) {
    std::vector<DesignEntry> grid;
    grid.reserve(design.rows() * design.cols());
    for (std::size_t r = 0; r < design.rows(); ++r)
        for (std::size_t c = 0; c < design.cols(); ++c) {
            const DesignEntry& e = design.entry(r, c);
            grid.push_back(e.kind == DesignEntry::Kind::Train ? DesignEntry::zero() : e);
        }
    return LinearDesign(design.name(), design.rows(), design.cols(), std::move(grid));
}

DesignClass classify(const LinearDesign& design) {
    DesignClass cls;

    if (!design.has_train_entries()) cls.cod = verify_cod(design).ok;

    if (!design.has_zero_entries()) {
        const std::size_t expected_train = design.rows() - design.num_vars();
        bool structure = true;
        for (std::size_t c = 0; c < design.cols() && structure; ++c) {
            std::size_t train_count = 0;
            std::set<int> vars;
            for (std::size_t r = 0; r < design.rows(); ++r) {
                const DesignEntry& e = design.entry(r, c);
                if (e.kind == DesignEntry::Kind::Train) {
                    ++train_count;
                } else if (!vars.insert(e.var).second) {
                    structure = false;
                    break;
                }
            }
            if (train_count != expected_train || vars.size() != design.num_vars())
                structure = false;
        }
        cls.te_cod = structure && verify_cod(strip_training(design)).ok;
    }
    return cls;
}

bool ssd_structure_ok(const LinearDesign& design) {
    const auto gram = symbolic_gram(design);
    for (std::size_t p = 0; p < gram.size(); ++p)
        for (std::size_t q = 0; q < gram.size(); ++q) {
            for (const auto& [monomial, coeff] : gram[p][q].terms()) {
                int first_var = 0;
                for (const SymbolFactor& f : monomial) {
                    if (f.id < 1) continue;
                    if (first_var == 0)
                        first_var = f.id;
                    else if (f.id != first_var)
                        return false;  // a product mixing two variables
                }
            }
        }
    return true;
}

namespace {

using Grid = std::vector<std::vector<DesignEntry>>;

Grid grid_hermitian(const Grid& g) {
    const std::size_t n = g.size();
    Grid out(n, std::vector<DesignEntry>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            DesignEntry e = g[c][r];
            if (e.kind == DesignEntry::Kind::Var) e.conj = !e.conj;
            out[r][c] = e;
        }
    return out;
}

}  // namespace

LinearDesign generate_square_cod(int a) {
    if (a < 1 || a > 4) throw std::invalid_argument("square design generator supports a in 1..4");

    Grid grid{{DesignEntry::variable(1)}};
    for (int step = 1; step <= a; ++step) {
        const std::size_t n = grid.size();
        const int new_var = step + 1;
        const Grid lower_right = grid_hermitian(grid);
        Grid next(2 * n, std::vector<DesignEntry>(2 * n, DesignEntry::zero()));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                next[r][c] = grid[r][c];
                next[n + r][n + c] = lower_right[r][c];
            }
        for (std::size_t d = 0; d < n; ++d) {
            next[d][n + d] = DesignEntry::variable(new_var);
            next[n + d][d] = DesignEntry::variable(new_var, true, -1);
        }
        grid = std::move(next);
    }

    std::vector<DesignEntry> flat;
    const std::size_t n = grid.size();
    flat.reserve(n * n);
    for (const auto& row : grid) flat.insert(flat.end(), row.begin(), row.end());
    return LinearDesign("cod" + std::to_string(n), n, n, std::move(flat));
}

namespace {

LinearDesign paper_te_cod4() {
    const auto v = [](int i, bool conj = false, int sign = 1) {
        return DesignEntry::variable(i, conj, sign);
    };
    const DesignEntry a = DesignEntry::train();
    std::vector<DesignEntry> grid = {
        v(3),       a,            v(2),        v(1),
        a,          v(3),         v(1, true),  v(2, true, -1),
        v(2, true), v(1),         v(3, true, -1), a,
        v(1, true), v(2, false, -1), a,          v(3, true, -1),
    };
    return LinearDesign("cod4-paper", 4, 4, std::move(grid));
}

LinearDesign first_columns(const LinearDesign& d, std::size_t cols, std::string name) {
    std::vector<DesignEntry> grid;
    grid.reserve(d.rows() * cols);
    for (std::size_t r = 0; r < d.rows(); ++r)
        for (std::size_t c = 0; c < cols; ++c) grid.push_back(d.entry(r, c));
    return LinearDesign(std::move(name), d.rows(), cols, std::move(grid));
}

}  // namespace

LinearDesign catalog_design(const std::string& name) {
    if (name == "alamouti") return generate_square_cod(1).renamed("alamouti");
    if (name == "cod4-paper") return paper_te_cod4();
    if (name == "cod4-recursive") return generate_square_cod(2).renamed("cod4-recursive");
    if (name == "cod43") return first_columns(generate_square_cod(2), 3, "cod43");
    if (name == "cod8") return generate_square_cod(3).renamed("cod8");
    throw std::invalid_argument("unknown catalog design '" + name + "'");
}

std::vector<std::string> catalog_names() {
    return {"alamouti", "cod4-paper", "cod4-recursive", "cod43", "cod8"};
}

LinearDesign load_design(const std::string& spec) {
    constexpr std::string_view prefix = "catalog:";
    if (spec.rfind(prefix, 0) == 0) return catalog_design(spec.substr(prefix.size()));

    std::ifstream in(spec);
    if (!in) throw DesignParseError("cannot open design file '" + spec + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string name = spec;
    if (const auto slash = name.find_last_of('/'); slash != std::string::npos)
        name = name.substr(slash + 1);
    if (const auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0)
        name = name.substr(0, dot);
    return parse_design(buffer.str(), name);
}

}  // namespace tecod
