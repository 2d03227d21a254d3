#include "tecod/constellation.hpp"

#include <cmath>
#include <stdexcept>

namespace tecod {

namespace {

// Binary-reflected Gray code of the level position, so adjacent amplitudes
// differ in one bit.
int gray_code(int position) { return position ^ (position >> 1); }

std::vector<double> level_table(const std::vector<double>& ascending) {
    std::vector<double> by_code(ascending.size());
    for (std::size_t p = 0; p < ascending.size(); ++p)
        by_code[static_cast<std::size_t>(gray_code(static_cast<int>(p)))] = ascending[p];
    return by_code;
}

Constellation rectangular_grid(std::string name, std::vector<double> re_ascending,
                               std::vector<double> im_ascending) {
    Constellation c;
    c.name = std::move(name);
    c.rectangular = true;
    c.re_bits = static_cast<int>(std::round(std::log2(re_ascending.size())));
    c.im_bits = static_cast<int>(std::round(std::log2(im_ascending.size())));
    c.bits_per_symbol = c.re_bits + c.im_bits;
    c.re_levels = level_table(re_ascending);
    c.im_levels = level_table(im_ascending);

    const std::size_t size = re_ascending.size() * im_ascending.size();
    c.points.resize(size);
    for (std::size_t label = 0; label < size; ++label) {
        const std::size_t re_code = label >> c.im_bits;
        const std::size_t im_code = label & ((1u << c.im_bits) - 1u);
        c.points[label] = {c.re_levels[re_code], c.im_levels[im_code]};
    }
    return c;
}

void scale_to_energy(Constellation& c, double target_energy) {
    if (target_energy <= 0.0) throw std::invalid_argument("target energy must be positive");
    double mean = 0.0;
    for (const auto& p : c.points) mean += std::norm(p);
    mean /= static_cast<double>(c.points.size());
    const double scale = std::sqrt(target_energy / mean);
    for (auto& p : c.points) p *= scale;
    for (auto& l : c.re_levels) l *= scale;
    for (auto& l : c.im_levels) l *= scale;
    c.avg_energy = target_energy;
}

}  // namespace

std::string Constellation::bit_label(int label) const {
    std::string bits(static_cast<std::size_t>(bits_per_symbol), '0');
    for (int b = 0; b < bits_per_symbol; ++b)
        if (label & (1 << (bits_per_symbol - 1 - b))) bits[static_cast<std::size_t>(b)] = '1';
    return bits;
}

Constellation make_constellation(const std::string& name, double target_energy) {
    Constellation c;
    if (name == "4qam") {
        c = rectangular_grid(name, {-1.0, 1.0}, {-1.0, 1.0});
    } else if (name == "16qam") {
        c = rectangular_grid(name, {-3.0, -1.0, 1.0, 3.0}, {-3.0, -1.0, 1.0, 3.0});
    } else if (name == "8qam-rect") {
        c = rectangular_grid(name, {-3.0, -1.0, 1.0, 3.0}, {-1.0, 1.0});
    } else if (name == "8qam-paper") {
        // Published list, kept verbatim: the grid point 3-i is replaced by a
        // second copy of 3+i. The duplicate breaks the rectangular product
        // structure, so per-axis decoding is disabled for this set.
        c = rectangular_grid(name, {-3.0, -1.0, 1.0, 3.0}, {-1.0, 1.0});
        for (std::size_t label = 0; label < c.points.size(); ++label) {
            if (c.points[label] == std::complex<double>{3.0, -1.0})
                c.points[label] = {3.0, 1.0};
        }
        c.rectangular = false;
        c.re_levels.clear();
        c.im_levels.clear();
        c.re_bits = c.im_bits = 0;
    } else {
        throw std::invalid_argument("unknown constellation '" + name + "'");
    }
    scale_to_energy(c, target_energy);
    return c;
}

}  // namespace tecod
