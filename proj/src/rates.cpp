#include "tecod/rates.hpp"

#include <numeric>
#include <stdexcept>

namespace tecod {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::strong_ordering Rational::operator<=>(const Rational& other) const {
    // Desk-scale values; cross multiplication cannot overflow here.
    return num * other.den <=> other.num * den;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

Rational overall_rate(std::int64_t block_len, std::int64_t num_vars) {
    if (num_vars < 1 || block_len < num_vars)
        throw std::invalid_argument("rate needs block_len >= num_vars >= 1");
    const std::int64_t training = ceil_div(block_len - num_vars, 2);
    return Rational(num_vars, training + num_vars + block_len);
}

Rational square_rate(int a) {
    if (a < 1) throw std::invalid_argument("square rate needs a >= 1");
    if (a > 30) throw std::invalid_argument("square rate parameter too large");
    const std::int64_t relays = std::int64_t{1} << a;
    const std::int64_t vars = a + 1;
    return Rational(vars, vars + ceil_div(relays - vars, 2) + relays);
}

Rational nonsquare_rate(std::int64_t m, std::int64_t block_len) {
    if (m < 2) throw std::invalid_argument("non-square rate needs m >= 2");
    if (block_len < 1) throw std::invalid_argument("non-square rate needs a positive delay");
    if ((block_len * (m + 1)) % (2 * m) != 0)
        throw std::invalid_argument("symbol count T(m+1)/(2m) is not an integer for T=" +
                                    std::to_string(block_len) + ", m=" + std::to_string(m));
    const std::int64_t symbols = block_len * (m + 1) / (2 * m);
    // ceil(T (1/4 - 1/(4m))) = ceil(T (m-1) / (4m))
    const std::int64_t training = ceil_div(block_len * (m - 1), 4 * m);
    return Rational(symbols, symbols + block_len + training);
}

std::vector<RateRow> rate_table(int k_min, int k_max) {
    if (k_min < 4 || k_max > 10 || k_min > k_max)
        throw std::invalid_argument("rate table covers K in 4..10");

    // Published rows: (K, m, delay, fraction as printed). All except
    // K = 10 reproduce the closed form; K = 10 is kept as published (the
    // formula yields 252/756 = 1/3).
    static const RateRow kTable[] = {
        {4, 2, 4, 3, 8, Rational(3, 8), 0},
        {5, 3, 15, 5, 14, Rational(5, 14), 0},
        {6, 3, 30, 4, 11, Rational(4, 11), 0},
        {7, 4, 56, 35, 102, Rational(35, 102), 0},
        {8, 4, 112, 70, 203, Rational(70, 203), 0},
        {9, 5, 210, 126, 378, Rational(126, 378), 0},
        {10, 5, 420, 251, 756, Rational(251, 756), 0},
    };

    const Rational third(1, 3);
    std::vector<RateRow> rows;
    for (const RateRow& row : kTable) {
        if (row.relays < k_min || row.relays > k_max) continue;
        RateRow out = row;
        if (out.rate > third)
            out.versus_third = 1;
        else if (out.rate < third)
            out.versus_third = -1;
        rows.push_back(out);
    }
    return rows;
}

}  // namespace tecod
