#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "irt/image.hpp"

namespace irt {

// Luminance band remapped to the palette: [threshold, max_value], with
// threshold = 0.80*max_value + 0.20*min_value.
struct CodingRange {
    double threshold = 0.0;
    double max_value = 0.0;
    double min_value = 0.0;
};

// Ordered linear ramp of RGB stops.
struct Palette {
    std::vector<std::array<std::uint8_t, 3>> stops;

    // Yellow-to-red "hot" ramp.
    static Palette default_hot();

    // Comma-separated hex stops, e.g. "FFFF00,FF0000".
    static Palette parse(const std::string& spec);

    std::string to_string() const;

    // Ramp color at t in [0,1], linearly interpolated, channels rounded half-up.
    std::array<std::uint8_t, 3> sample(double t) const;
};

CodingRange coding_range(const Plane& luma);

// Normalized position of a luminance value inside the coding band; values at
// the threshold map to 0, at max_value to 1. A degenerate band maps to 1.
double band_position(const CodingRange& range, double luma);

// Pixels with luminance below the threshold pass through untouched; pixels in
// the band are replaced by the palette color at their band position.
RgbImage pseudo_color_encode(const RgbImage& img, const Plane& luma,
                             const CodingRange& range, const Palette& palette);

} // namespace irt
