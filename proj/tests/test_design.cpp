#include <doctest.h>

#include <complex>
#include <fstream>

#include "tecod/design.hpp"
#include "tecod/rng.hpp"

using namespace tecod;
using cplx = std::complex<double>;

namespace {

const char* kAlamoutiText = "x1, x2\n-x2*, x1*\n";

// Example grid with one training slot per column.
const char* kPaperCod4Text =
    "# 4x4 training-embedded design, 3 variables\n"
    "x3,  a,   x2,  x1\n"
    "a,   x3,  x1*, -x2*\n"
    "x2*, x1,  -x3*, a\n"
    "x1*, -x2, a,   -x3*\n";

std::vector<cplx> random_values(TrialRng& rng, std::size_t count) {
    std::vector<cplx> v(count);
    for (auto& x : v) x = rng.cscg();
    return v;
}

// Straightforward numeric X^H X, the independent route for Gram checks.
ComplexMatrix numeric_gram(const ComplexMatrix& x) { return x.hermitian() * x; }

}  // namespace

TEST_CASE("parsing the 2x2 design") {
    const LinearDesign d = parse_design(kAlamoutiText, "alamouti");
    CHECK(d.rows() == 2);
    CHECK(d.cols() == 2);
    CHECK(d.num_vars() == 2);
    CHECK(d.entry(0, 0) == DesignEntry::variable(1));
    CHECK(d.entry(1, 0) == DesignEntry::variable(2, true, -1));
    CHECK(d.entry(1, 1) == DesignEntry::variable(1, true));
    const DesignClass cls = classify(d);
    CHECK(cls.cod);
    CHECK(cls.te_cod);  // no zeros and no training slots: both hold
}

TEST_CASE("parsing the published 4x4 training-embedded grid") {
    const LinearDesign d = parse_design(kPaperCod4Text, "cod4-paper");
    CHECK(d.rows() == 4);
    CHECK(d.cols() == 4);
    CHECK(d.num_vars() == 3);
    const LinearDesign reference = catalog_design("cod4-paper");
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) CHECK(d.entry(r, c) == reference.entry(r, c));
    CHECK(classify(d).te_cod);
    CHECK_FALSE(classify(d).cod);
}

TEST_CASE("parser rejects malformed input") {
    CHECK_THROWS_AS(parse_design("x0, x1\nx1, x0\n"), DesignParseError);       // indices start at 1
    CHECK_THROWS_AS(parse_design("x1, x2\nx1\n"), DesignParseError);           // ragged
    CHECK_THROWS_AS(parse_design("x1, y2\nx2, x1\n"), DesignParseError);       // bad token
    CHECK_THROWS_AS(parse_design("x1, x3\nx3*, x1*\n"), DesignParseError);     // gap: no x2
    CHECK_THROWS_AS(parse_design("x1, a\nx1, x2\na, x2*\n"), DesignParseError);  // dup in column
    CHECK_THROWS_AS(parse_design(""), DesignParseError);
    CHECK_THROWS_AS(parse_design("# only comments\n"), DesignParseError);
    CHECK_THROWS_AS(parse_design("x1\nx2\n"), DesignParseError);  // single column
    CHECK_THROWS_AS(parse_design("x1, x2, x3\nx2*, x1, x3\n"), DesignParseError);  // rows < cols
}

TEST_CASE("comments and blank lines are skipped") {
    const LinearDesign d = parse_design("# header\n\nx1, x2\n# middle\n-x2*, x1*\n");
    CHECK(d.rows() == 2);
}

TEST_CASE("verify_cod accepts the classics") {
    const CodReport alamouti = verify_cod(catalog_design("alamouti"));
    CHECK(alamouti.ok);
    // Gram diagonal is |x1|^2 + |x2|^2.
    const SymExpr x1 = SymExpr::variable(1);
    const SymExpr x2 = SymExpr::variable(2);
    CHECK(alamouti.gram[0][0] == x1.conjugate() * x1 + x2.conjugate() * x2);
    CHECK(alamouti.gram[0][1].is_zero());

    CHECK(verify_cod(catalog_design("cod4-recursive")).ok);
    CHECK(verify_cod(catalog_design("cod43")).ok);
    CHECK(verify_cod(catalog_design("cod8")).ok);

    // Published grid with training set to zero is again an orthogonal design.
    CHECK(verify_cod(strip_training(catalog_design("cod4-paper"))).ok);
}

TEST_CASE("verify_cod reports the offending Gram entries") {
    // Flip the sign of one variable occurrence; orthogonality between
    // columns 1 and 2 breaks and the report must name that entry.
    LinearDesign good = catalog_design("cod4-recursive");
    std::vector<DesignEntry> grid;
    for (std::size_t r = 0; r < good.rows(); ++r)
        for (std::size_t c = 0; c < good.cols(); ++c) {
            DesignEntry e = good.entry(r, c);
            if (r == 0 && c == 0) e.sign = -e.sign;
            grid.push_back(e);
        }
    const LinearDesign broken("broken", good.rows(), good.cols(), std::move(grid));
    const CodReport report = verify_cod(broken);
    CHECK_FALSE(report.ok);
    REQUIRE_FALSE(report.issues.empty());
    const bool names_pair = std::any_of(report.issues.begin(), report.issues.end(),
                                        [](const GramIssue& issue) {
                                            return (issue.row == 0 && issue.col == 1) ||
                                                   (issue.row == 1 && issue.col == 0);
                                        });
    CHECK(names_pair);
}

TEST_CASE("verify_cod rejects designs holding training entries") {
    CHECK_THROWS_AS(verify_cod(catalog_design("cod4-paper")), std::invalid_argument);
}

TEST_CASE("training embedding") {
    SUBCASE("4x4 orthogonal design gains one training slot per column") {
        const LinearDesign te = te_embed(catalog_design("cod4-recursive"));
        CHECK_FALSE(te.has_zero_entries());
        for (std::size_t c = 0; c < te.cols(); ++c) {
            std::size_t train = 0;
            for (std::size_t r = 0; r < te.rows(); ++r)
                if (te.entry(r, c).kind == DesignEntry::Kind::Train) ++train;
            CHECK(train == 1);
        }
        CHECK(classify(te).te_cod);
    }
    SUBCASE("design without zeros is unchanged") {
        const LinearDesign a = catalog_design("alamouti");
        const LinearDesign te = te_embed(a);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) CHECK(te.entry(r, c) == a.entry(r, c));
    }
    SUBCASE("non-orthogonal input is rejected") {
        const LinearDesign bad = parse_design("x1, x1\nx2, x2\n", "bad");
        CHECK_THROWS_AS(te_embed(bad), std::invalid_argument);
    }
    SUBCASE("4x3 column deletion keeps the property") {
        const LinearDesign te = te_embed(catalog_design("cod43"));
        CHECK(te.rows() == 4);
        CHECK(te.cols() == 3);
        CHECK(te.num_vars() == 3);
        CHECK(classify(te).te_cod);
    }
}

TEST_CASE("embedding round trip recovers the original design") {
    for (const char* name : {"alamouti", "cod4-recursive", "cod43", "cod8"}) {
        const LinearDesign original = catalog_design(name);
        const LinearDesign back = strip_training(te_embed(original));
        REQUIRE(back.rows() == original.rows());
        for (std::size_t r = 0; r < back.rows(); ++r)
            for (std::size_t c = 0; c < back.cols(); ++c)
                CHECK(back.entry(r, c) == original.entry(r, c));
    }
}

TEST_CASE("published Gram of the 4x4 training-embedded design") {
    const auto gram = symbolic_gram(catalog_design("cod4-paper"));
    const SymExpr a = SymExpr::training();
    const SymExpr x1 = SymExpr::variable(1);
    const SymExpr x2 = SymExpr::variable(2);
    const SymExpr x3 = SymExpr::variable(3);

    SymExpr diag = a.conjugate() * a;
    for (int i = 1; i <= 3; ++i) {
        const SymExpr xi = SymExpr::variable(i);
        diag += xi.conjugate() * xi;
    }
    for (std::size_t p = 0; p < 4; ++p) CHECK(gram[p][p] == diag);

    CHECK(gram[0][1] == plus_conjugate(x3.conjugate() * a));
    CHECK(gram[0][2] == plus_conjugate(x1.conjugate() * a.conjugate()));
    CHECK(gram[0][3] == minus_conjugate(x2 * a));
    CHECK(gram[1][2] == minus_conjugate(x2 * a.conjugate()));
    CHECK(gram[1][3] == plus_conjugate(x1 * a.conjugate()));
    CHECK(gram[2][3] == SymExpr{} - plus_conjugate(x3 * a));

    // Hermitian completion below the diagonal.
    for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = 0; q < 4; ++q) CHECK(gram[q][p] == gram[p][q].conjugate());
}

TEST_CASE("symbolic Gram agrees with numeric evaluation") {
    TrialRng rng(2024);
    for (const char* name : {"cod4-paper", "alamouti"}) {
        const LinearDesign d = catalog_design(name);
        const auto gram = symbolic_gram(d);
        for (int round = 0; round < 25; ++round) {
            const auto values = random_values(rng, d.num_vars() + 1);
            const ComplexMatrix x =
                d.evaluate(values[0], std::span{values.data() + 1, d.num_vars()});
            const ComplexMatrix direct = numeric_gram(x);
            for (std::size_t p = 0; p < d.cols(); ++p)
                for (std::size_t q = 0; q < d.cols(); ++q)
                    CHECK(std::abs(gram[p][q].eval(values) - direct(p, q)) < 1e-12);
        }
    }
}

TEST_CASE("separable Gram structure") {
    CHECK(ssd_structure_ok(catalog_design("cod4-paper")));
    CHECK(ssd_structure_ok(te_embed(catalog_design("cod4-recursive"))));
    CHECK(ssd_structure_ok(te_embed(catalog_design("cod43"))));
    CHECK(ssd_structure_ok(te_embed(catalog_design("cod8"))));

    // The 4x4 and 4x3 designs satisfy the stronger per-entry property:
    // every off-diagonal entry references a single variable index.
    for (const char* name : {"cod4-paper", "cod4-recursive", "cod43"}) {
        LinearDesign d = catalog_design(name);
        if (d.has_zero_entries()) d = te_embed(d);
        const auto gram = symbolic_gram(d);
        for (std::size_t p = 0; p < gram.size(); ++p)
            for (std::size_t q = 0; q < gram.size(); ++q)
                if (p != q) CHECK(gram[p][q].variable_ids().size() <= 1);
    }

    // The 8x8 design does not: with four training slots per column, an
    // off-diagonal entry can sum terms of two different variables. The
    // metric still separates because no single product mixes them.
    const auto gram8 = symbolic_gram(te_embed(catalog_design("cod8")));
    std::size_t entries_with_two = 0;
    for (std::size_t p = 0; p < 8; ++p)
        for (std::size_t q = 0; q < 8; ++q)
            if (p != q && gram8[p][q].variable_ids().size() > 1) ++entries_with_two;
    CHECK(entries_with_two > 0);

    // A design that is orthogonal but never SSD-separable does not exist in
    // the catalog; a duplicated-variable grid serves as the negative case.
    const LinearDesign tangled = parse_design("x1, x2\nx2, x1\n", "tangled");
    CHECK_FALSE(ssd_structure_ok(tangled));
}

TEST_CASE("training set to zero collapses the Gram to a scaled identity") {
    const auto gram = symbolic_gram(catalog_design("cod4-paper"));
    SymExpr diag;
    for (int i = 1; i <= 3; ++i) {
        const SymExpr xi = SymExpr::variable(i);
        diag += xi.conjugate() * xi;
    }
    for (std::size_t p = 0; p < 4; ++p)
        for (std::size_t q = 0; q < 4; ++q) {
            const SymExpr at_zero = gram[p][q].without_symbol(0);
            if (p == q)
                CHECK(at_zero == diag);
            else
                CHECK(at_zero.is_zero());
        }
}

TEST_CASE("square design generator") {
    SUBCASE("a=1 is the canonical 2x2 layout") {
        const LinearDesign d = generate_square_cod(1);
        const LinearDesign reference = parse_design(kAlamoutiText);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c) CHECK(d.entry(r, c) == reference.entry(r, c));
    }
    SUBCASE("a=2 gives the 4x4 design in three variables") {
        const LinearDesign d = generate_square_cod(2);
        CHECK(d.rows() == 4);
        CHECK(d.num_vars() == 3);
        CHECK(verify_cod(d).ok);
    }
    SUBCASE("a=3 passes verification") {
        const LinearDesign d = generate_square_cod(3);
        CHECK(d.rows() == 8);
        CHECK(d.num_vars() == 4);
        CHECK(verify_cod(d).ok);
    }
    SUBCASE("a=4 passes verification and embeds cleanly") {
        const LinearDesign d = generate_square_cod(4);
        CHECK(d.rows() == 16);
        CHECK(d.num_vars() == 5);
        CHECK(verify_cod(d).ok);
        CHECK(classify(te_embed(d)).te_cod);
    }
    SUBCASE("out-of-range order is rejected") {
        CHECK_THROWS_AS(generate_square_cod(0), std::invalid_argument);
        CHECK_THROWS_AS(generate_square_cod(5), std::invalid_argument);
    }
}

TEST_CASE("catalog lookup and file loading") {
    for (const std::string& name : catalog_names()) CHECK(catalog_design(name).name() == name);
    CHECK_THROWS_AS(catalog_design("nope"), std::invalid_argument);

    CHECK(load_design("catalog:alamouti").cols() == 2);

    const std::string path = "test_design_tmp.txt";
    {
        std::ofstream out(path);
        out << kPaperCod4Text;
    }
    const LinearDesign d = load_design(path);
    CHECK(d.rows() == 4);
    CHECK(d.name() == "test_design_tmp");
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_design("/nonexistent/file.d"), DesignParseError);
}
