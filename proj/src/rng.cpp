#include "tecod/rng.hpp"

#include <cmath>
#include <numbers>

namespace tecod {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    // Two avalanche rounds over the concatenated inputs; collision-free in
    // practice for the counter ranges used here.
    SplitMix64 s(master ^ (a * 0x9e3779b97f4a7c15ULL) ^ (b * 0xd1b54a32d192ed03ULL));
    s.next_u64();
    return s.next_u64();
}

double TrialRng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 in (0, 1] avoids log(0).
    const double u1 = 1.0 - stream_.next_double();
    const double u2 = stream_.next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::complex<double> TrialRng::cscg() {
    const double re = gaussian();
    const double im = gaussian();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

}  // namespace tecod
