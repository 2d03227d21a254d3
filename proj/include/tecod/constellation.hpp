#pragma once

#include <complex>
#include <string>
#include <vector>

namespace tecod {

/// Gray-labelled signal set. Points are indexed by their integer label
/// (bit pattern, most significant bit first). For rectangular sets the
/// label splits into independent Gray codes for the real and imaginary
/// axes: label = (re_code << im_bits) | im_code.
struct Constellation {
    std::string name;
    std::vector<std::complex<double>> points;
    int bits_per_symbol = 0;
    double avg_energy = 0.0;

    // Rectangular structure; valid only when `rectangular` is set. Level
    // vectors are indexed by the axis Gray code.
    bool rectangular = false;
    int re_bits = 0;
    int im_bits = 0;
    std::vector<double> re_levels;
    std::vector<double> im_levels;

    std::size_t size() const { return points.size(); }
    std::string bit_label(int label) const;
};

/// Supported names: "4qam", "8qam-paper", "8qam-rect", "16qam". Points are
/// scaled so the average energy equals target_energy. "8qam-paper" keeps
/// the published point list verbatim, which duplicates 3+i and therefore
/// breaks the rectangular product structure; "8qam-rect" uses 3-i instead.
Constellation make_constellation(const std::string& name, double target_energy);

}  // namespace tecod
