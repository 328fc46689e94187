#pragma once

#include <cstdint>

#include "irt/image.hpp"

namespace irt {

// Weighted luminance of an RGB triple. Unrounded; channels in [0,255].
inline double luminance(double r, double g, double b) {
    return 0.299 * r + 0.587 * g + 0.114 * b;
}

struct YuvPixel {
    double y;
    double u;
    double v;
};

// Fixed forward transform. Row sums are 1, 0, 0, so neutral grays map to
// U = V = 0 and Y equals the gray level.
inline YuvPixel rgb_to_yuv_pixel(double r, double g, double b) {
    return {
        luminance(r, g, b),
        -0.147 * r - 0.289 * g + 0.436 * b,
        0.615 * r - 0.515 * g - 0.100 * b,
    };
}

struct RgbTriple {
    double r;
    double g;
    double b;
};

// Inverse transform, unclamped.
inline RgbTriple yuv_to_rgb_pixel(double y, double u, double v) {
    return {
        y + 1.14 * v,
        y - 0.39 * u - 0.58 * v,
        y + 2.03 * u,
    };
}

// Clamp to [0,255] then round half-up. The published matrices are only
// approximate inverses, so out-of-gamut values must be clamped, not wrapped.
inline std::uint8_t clamp_round_u8(double x) {
    if (x < 0.0) x = 0.0;
    if (x > 255.0) x = 255.0;
    return static_cast<std::uint8_t>(x + 0.5);
}

YuvImage rgb_to_yuv(const RgbImage& img);
RgbImage yuv_to_rgb(const YuvImage& img);

// Luminance plane of a color image (same weights as rgb_to_yuv's Y row).
Plane luminance_plane(const RgbImage& img);

// Gray levels widened to a real-valued plane.
Plane gray_plane(const GrayImage& img);

} // namespace irt
