#include <doctest.h>

#include <array>
#include <complex>

#include "tecod/repmat.hpp"
#include "tecod/rng.hpp"

using namespace tecod;
using cplx = std::complex<double>;

namespace {

using Rows4 = std::array<std::array<int, 4>, 4>;

IntMatrix from_rows(const Rows4& rows) {
    IntMatrix m(4, 4);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m.set(r, c, rows[r][c]);
    return m;
}

// Published relay matrix pairs for the 4x4 training-embedded design.
const Rows4 kA1{{{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}};
const Rows4 kB1{{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}}};
const Rows4 kA2{{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, -1, 0}}};
const Rows4 kB2{{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}};
const Rows4 kA3{{{0, 0, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}}};
const Rows4 kB3{{{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, -1}, {0, 0, 0, 0}}};
const Rows4 kA4{{{0, 1, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}}};
const Rows4 kB4{{{0, 0, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 0}, {0, 0, 0, -1}}};

std::vector<cplx> random_values(TrialRng& rng, std::size_t count) {
    std::vector<cplx> v(count);
    for (auto& x : v) x = rng.cscg();
    return v;
}

}  // namespace

TEST_CASE("extraction reproduces the published pairs for the 4x4 design") {
    const auto set = extract_rep_matrices(catalog_design("cod4-paper"));
    REQUIRE(set.pairs.size() == 4);
    CHECK(set.num_train == 1);

    CHECK(set.pairs[0].a == from_rows(kA1));
    CHECK(set.pairs[0].b == from_rows(kB1));
    CHECK(set.pairs[1].a == from_rows(kA2));
    CHECK(set.pairs[1].b == from_rows(kB2));
    CHECK(set.pairs[1].b.is_zero());
    CHECK(set.pairs[2].a == from_rows(kA3));
    CHECK(set.pairs[2].b == from_rows(kB3));
    CHECK(set.pairs[3].a == from_rows(kA4));
    CHECK(set.pairs[3].b == from_rows(kB4));
}

TEST_CASE("every extracted pair partitions the identity") {
    const std::vector<LinearDesign> designs = {
        catalog_design("cod4-paper"),
        catalog_design("alamouti"),
        te_embed(catalog_design("cod4-recursive")),
        te_embed(catalog_design("cod43")),
        te_embed(catalog_design("cod8")),
        te_embed(generate_square_cod(4)),
    };
    for (const auto& design : designs) {
        const auto set = extract_rep_matrices(design);
        for (const auto& pair : set.pairs) CHECK(partitions_identity(pair));
    }
}

TEST_CASE("identity partition detects corruption") {
    auto set = extract_rep_matrices(catalog_design("cod4-paper"));
    CHECK(partitions_identity(set.pairs[0]));
    set.pairs[0].a.set(0, 0, 1);  // second nonzero in row 0
    CHECK_FALSE(partitions_identity(set.pairs[0]));
}

TEST_CASE("representation route reproduces the design grid") {
    TrialRng rng(99);
    const std::vector<LinearDesign> designs = {
        catalog_design("cod4-paper"),
        te_embed(catalog_design("cod43")),
        te_embed(catalog_design("cod8")),
    };
    for (const auto& design : designs) {
        const auto set = extract_rep_matrices(design);
        for (int round = 0; round < 100; ++round) {
            const auto values = random_values(rng, design.num_vars() + 1);
            const std::span vars{values.data() + 1, design.num_vars()};
            const auto expanded = expanded_symbol_vector(values[0], vars, set.num_train);
            const ComplexMatrix via_matrices = assemble_codeword(set, expanded);
            const ComplexMatrix via_grid = design.evaluate(values[0], vars);
            for (std::size_t r = 0; r < design.rows(); ++r)
                for (std::size_t c = 0; c < design.cols(); ++c)
                    CHECK(std::abs(via_matrices(r, c) - via_grid(r, c)) < 1e-12);
        }
    }
}

TEST_CASE("extraction rejects non-embedded designs") {
    CHECK_THROWS_AS(extract_rep_matrices(catalog_design("cod4-recursive")),
                    std::invalid_argument);
}

TEST_CASE("expanded vector layout") {
    const std::vector<cplx> vars = {{1.0, 0.0}, {0.0, 1.0}};
    const auto v = expanded_symbol_vector({0.5, 0.0}, vars, 3);
    REQUIRE(v.size() == 5);
    CHECK(v[0] == cplx{0.5, 0.0});
    CHECK(v[2] == cplx{0.5, 0.0});
    CHECK(v[3] == cplx{1.0, 0.0});
    CHECK(v[4] == cplx{0.0, 1.0});
}
