#pragma once

#include <array>
#include <vector>

#include "irt/image.hpp"

namespace irt {

// Segmented connected component. Pixels are sorted row-major; centroid is the
// mean of the pixel coordinates; bbox bounds are inclusive.
struct TargetRegion {
    std::vector<Point> pixels;
    double centroid_x = 0.0;
    double centroid_y = 0.0;
    Box bbox;
};

// The six per-target features fed to the classifier.
struct FeatureVector {
    double mass = 0.0;        // pixel count
    double dist_mean = 0.0;   // mean distance pixel -> centroid
    double dist_max = 0.0;
    double dist_min = 0.0;
    double diameter = 0.0;    // diagonal of the bounding rectangle
    double fractal_dim = 0.0; // two-scale box-counting dimension

    std::array<double, 6> as_array() const {
        return {mass, dist_mean, dist_max, dist_min, diameter, fractal_dim};
    }
    static FeatureVector from_array(const std::array<double, 6>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }
    static constexpr std::array<const char*, 6> names() {
        return {"mass", "dist_mean", "dist_max", "dist_min", "diameter", "fractal_dim"};
    }
};

// mask[p] = (luma[p] >= threshold).
BinaryImage threshold_segment(const Plane& luma, double threshold);

// 3x3 square structuring element; cells outside the image count as background
// for erosion and contribute nothing to dilation.
BinaryImage erode3x3(const BinaryImage& mask);
BinaryImage dilate3x3(const BinaryImage& mask);

// Opening (erode, dilate) to drop speckle, then closing (dilate, erode) to
// fill pinholes and heal thin cuts.
BinaryImage morphological_filter(const BinaryImage& mask);

// 8-connected components, ordered by (bbox min_y, min_x).
std::vector<TargetRegion> connected_components(const BinaryImage& mask);

// Two-scale box-counting estimate: log2(N1/N2) with N1 the pixel count and
// N2 the occupied cells of the 2x2 grid anchored at the region's bbox origin.
// Returns 0 when N1 == N2. Always in [0, 2].
double fractal_dimension(const TargetRegion& region);

// All six features; distances and the diameter scale by meters_per_pixel.
FeatureVector extract_features(const TargetRegion& region, double meters_per_pixel = 1.0);

} // namespace irt
