#pragma once

#include <complex>
#include <cstdint>

namespace tecod {

/// SplitMix64 generator. The output sequence is fully determined by the
/// seed and does not depend on the standard library, so simulation results
/// are reproducible across compilers and platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 bits of precision.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Derives an independent stream seed from a master seed and up to two
/// counters. Trial streams depend only on (master, point, trial) and never
/// on execution order, so parallel and serial runs aggregate identically.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

/// Random source for one simulation trial: uniform bits plus circularly
/// symmetric complex Gaussian draws (Box-Muller).
class TrialRng {
public:
    explicit TrialRng(std::uint64_t seed) : stream_(seed) {}

    std::uint64_t bits() { return stream_.next_u64(); }
    double uniform() { return stream_.next_double(); }

    /// Real N(0, 1).
    double gaussian();

    /// CSCG(0, 1): real and imaginary parts are independent N(0, 1/2).
    std::complex<double> cscg();

private:
    SplitMix64 stream_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace tecod
