#pragma once

#include <cstdint>
#include <vector>

#include "irt/error.hpp"

namespace irt {

struct Point {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

// Axis-aligned box with inclusive pixel coordinates.
struct Box {
    int min_x = 0;
    int min_y = 0;
    int max_x = 0;
    int max_y = 0;

    int width() const { return max_x - min_x + 1; }
    int height() const { return max_y - min_y + 1; }
    long long area() const { return static_cast<long long>(width()) * height(); }

    friend bool operator==(const Box&, const Box&) = default;
};

// 8-bit single-channel raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h) {
        require(w >= 1 && h >= 1, "GrayImage: dimensions must be >= 1");
        pixels.assign(static_cast<size_t>(w) * h, fill);
    }

    std::uint8_t at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
    size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

// 8-bit three-channel raster, interleaved R,G,B, row-major.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    RgbImage() = default;
    RgbImage(int w, int h)
        : width(w), height(h) {
        require(w >= 1 && h >= 1, "RgbImage: dimensions must be >= 1");
        pixels.assign(static_cast<size_t>(w) * h * 3, 0);
    }

    const std::uint8_t* at(int x, int y) const {
        return pixels.data() + (static_cast<size_t>(y) * width + x) * 3;
    }
    std::uint8_t* at(int x, int y) {
        return pixels.data() + (static_cast<size_t>(y) * width + x) * 3;
    }
    size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

// Real-valued planes: Y in [0,255], U and V signed (never offset-biased,
// so chroma arithmetic stays linear).
struct YuvImage {
    int width = 0;
    int height = 0;
    std::vector<double> y;
    std::vector<double> u;
    std::vector<double> v;

    YuvImage() = default;
    YuvImage(int w, int h)
        : width(w), height(h) {
        require(w >= 1 && h >= 1, "YuvImage: dimensions must be >= 1");
        const size_t n = static_cast<size_t>(w) * h;
        y.assign(n, 0.0);
        u.assign(n, 0.0);
        v.assign(n, 0.0);
    }

    size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

// Real-valued single-channel raster (luminance planes and friends).
struct Plane {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    Plane() = default;
    Plane(int w, int h, double fill = 0.0)
        : width(w), height(h) {
        require(w >= 1 && h >= 1, "Plane: dimensions must be >= 1");
        values.assign(static_cast<size_t>(w) * h, fill);
    }

    double at(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }
    double& at(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }
    size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

// Per-pixel mask, 0 or 1.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;

    BinaryImage() = default;
    BinaryImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h) {
        require(w >= 1 && h >= 1, "BinaryImage: dimensions must be >= 1");
        mask.assign(static_cast<size_t>(w) * h, fill);
    }

    std::uint8_t at(int x, int y) const { return mask[static_cast<size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return mask[static_cast<size_t>(y) * width + x]; }
    size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

} // namespace irt
