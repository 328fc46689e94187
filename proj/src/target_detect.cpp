#include "irt/target_detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace irt {

BinaryImage threshold_segment(const Plane& luma, double threshold) {
    require(!luma.values.empty(), "threshold_segment: empty plane");
    BinaryImage out(luma.width, luma.height);
    const long long n = static_cast<long long>(luma.values.size());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i)
        out.mask[i] = luma.values[i] >= threshold ? 1 : 0;
    return out;
}

namespace {

enum class Morph { erode, dilate };

BinaryImage morph3x3(const BinaryImage& in, Morph op) {
    BinaryImage out(in.width, in.height);
    const int w = in.width, h = in.height;
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            // erode: all 9 cells set; dilate: any of the 9 cells set
            bool all = true, any = false;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    const bool v = nx >= 0 && nx < w && ny >= 0 && ny < h &&
                                   in.at(nx, ny) != 0;
                    all = all && v;
                    any = any || v;
                }
            }
            out.at(x, y) = (op == Morph::erode ? all : any) ? 1 : 0;
        }
    }
    return out;
}

} // namespace

BinaryImage erode3x3(const BinaryImage& mask) { return morph3x3(mask, Morph::erode); }
BinaryImage dilate3x3(const BinaryImage& mask) { return morph3x3(mask, Morph::dilate); }

BinaryImage morphological_filter(const BinaryImage& mask) {
    require(!mask.mask.empty(), "morphological_filter: empty mask");
    const BinaryImage opened = dilate3x3(erode3x3(mask));
    return erode3x3(dilate3x3(opened));
}

std::vector<TargetRegion> connected_components(const BinaryImage& mask) {
    require(!mask.mask.empty(), "connected_components: empty mask");
    const int w = mask.width, h = mask.height;
    std::vector<int> label(mask.pixel_count(), -1);
    std::vector<TargetRegion> regions;
    std::vector<Point> stack;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const size_t i = static_cast<size_t>(y) * w + x;
            if (!mask.mask[i] || label[i] >= 0) continue;

            const int id = static_cast<int>(regions.size());
            TargetRegion region;
            region.bbox = {x, y, x, y};
            stack.assign(1, {x, y});
            label[i] = id;

            while (!stack.empty()) {
                const Point p = stack.back();
                stack.pop_back();
                region.pixels.push_back(p);
                region.bbox.min_x = std::min(region.bbox.min_x, p.x);
                region.bbox.min_y = std::min(region.bbox.min_y, p.y);
                region.bbox.max_x = std::max(region.bbox.max_x, p.x);
                region.bbox.max_y = std::max(region.bbox.max_y, p.y);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = p.x + dx, ny = p.y + dy;
                        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                        const size_t ni = static_cast<size_t>(ny) * w + nx;
                        if (!mask.mask[ni] || label[ni] >= 0) continue;
                        label[ni] = id;
                        stack.push_back({nx, ny});
                    }
                }
            }

            std::sort(region.pixels.begin(), region.pixels.end(),
                      [](const Point& a, const Point& b) {
                          return a.y != b.y ? a.y < b.y : a.x < b.x;
                      });
            long long sx = 0, sy = 0;
            for (const Point& p : region.pixels) { sx += p.x; sy += p.y; }
            region.centroid_x = static_cast<double>(sx) / region.pixels.size();
            region.centroid_y = static_cast<double>(sy) / region.pixels.size();
            regions.push_back(std::move(region));
        }
    }

    // Scan order already yields first-seen ordering; sort by bbox to pin the
    // contract explicitly.
    std::sort(regions.begin(), regions.end(),
              [](const TargetRegion& a, const TargetRegion& b) {
                  if (a.bbox.min_y != b.bbox.min_y) return a.bbox.min_y < b.bbox.min_y;
                  return a.bbox.min_x < b.bbox.min_x;
              });
    return regions;
}

double fractal_dimension(const TargetRegion& region) {
    require(!region.pixels.empty(), "fractal_dimension: empty region");
    const long long n1 = static_cast<long long>(region.pixels.size());
    std::unordered_set<long long> cells;
    for (const Point& p : region.pixels) {
        const long long cx = (p.x - region.bbox.min_x) / 2;
        const long long cy = (p.y - region.bbox.min_y) / 2;
        cells.insert(cy * (1LL << 32) + cx);
    }
    const long long n2 = static_cast<long long>(cells.size());
    if (n1 == n2) return 0.0;
    return (std::log(static_cast<double>(n1)) - std::log(static_cast<double>(n2))) /
           std::log(2.0);
}

FeatureVector extract_features(const TargetRegion& region, double meters_per_pixel) {
    require(!region.pixels.empty(), "extract_features: empty region");
    require(meters_per_pixel > 0.0, "extract_features: scale must be > 0");

    FeatureVector f;
    f.mass = static_cast<double>(region.pixels.size());

    double sum = 0.0;
    double dmax = 0.0;
    double dmin = std::numeric_limits<double>::infinity();
    for (const Point& p : region.pixels) {
        const double dx = p.x - region.centroid_x;
        const double dy = p.y - region.centroid_y;
        const double d = std::sqrt(dx * dx + dy * dy);
        sum += d;
        dmax = std::max(dmax, d);
        dmin = std::min(dmin, d);
    }
    f.dist_mean = sum / region.pixels.size() * meters_per_pixel;
    f.dist_max = dmax * meters_per_pixel;
    f.dist_min = dmin * meters_per_pixel;

    const double w = region.bbox.width();
    const double h = region.bbox.height();
    f.diameter = std::sqrt(w * w + h * h) * meters_per_pixel;
    f.fractal_dim = fractal_dimension(region);
    return f;
}

} // namespace irt
