#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tecod {

/// Exact rational number, always normalized with a positive denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);

    bool operator==(const Rational&) const = default;
    std::strong_ordering operator<=>(const Rational& other) const;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
};

/// Symbols per channel use over both phases for a T x K design in k
/// variables: k / (ceil((T-k)/2) + k + T).
Rational overall_rate(std::int64_t block_len, std::int64_t num_vars);

/// Overall rate of the square design on 2^a relays (a+1 variables).
Rational square_rate(int a);

/// Overall rate of the maximal-rate non-square design for 2m or 2m-1
/// relays with decoding delay T; the symbol count T(m+1)/(2m) must be an
/// integer.
Rational nonsquare_rate(std::int64_t m, std::int64_t block_len);

/// One row of the published non-square rate table. printed_num/printed_den
/// carry the fraction exactly as published (70/203, 126/378, ...); `rate`
/// is the same value normalized for comparisons.
struct RateRow {
    int relays = 0;          // K
    std::int64_t m = 0;      // half-relay parameter
    std::int64_t delay = 0;  // decoding delay T used by the table
    std::int64_t printed_num = 0;
    std::int64_t printed_den = 1;
    Rational rate;
    int versus_third = 0;    // sign of (rate - 1/3)

    std::string printed() const {
        return std::to_string(printed_num) + "/" + std::to_string(printed_den);
    }
};

/// Published overall-rate table for K in [k_min, k_max] within 4..10.
/// Rows for K <= 9 match nonsquare_rate; the K = 10 row carries the
/// published value 251/756 (the closed form gives 252/756 = 1/3).
std::vector<RateRow> rate_table(int k_min, int k_max);

}  // namespace tecod
