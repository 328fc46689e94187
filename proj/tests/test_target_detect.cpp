#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "irt/target_detect.hpp"

using namespace irt;

namespace {

BinaryImage random_mask(std::mt19937& rng, int w, int h, double density) {
    std::bernoulli_distribution bit(density);
    BinaryImage m(w, h);
    for (auto& v : m.mask) v = bit(rng) ? 1 : 0;
    return m;
}

TargetRegion region_from_points(std::vector<Point> pts) {
    TargetRegion r;
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    });
    r.pixels = std::move(pts);
    r.bbox = {r.pixels[0].x, r.pixels[0].y, r.pixels[0].x, r.pixels[0].y};
    long long sx = 0, sy = 0;
    for (const Point& p : r.pixels) {
        r.bbox.min_x = std::min(r.bbox.min_x, p.x);
        r.bbox.min_y = std::min(r.bbox.min_y, p.y);
        r.bbox.max_x = std::max(r.bbox.max_x, p.x);
        r.bbox.max_y = std::max(r.bbox.max_y, p.y);
        sx += p.x;
        sy += p.y;
    }
    r.centroid_x = double(sx) / r.pixels.size();
    r.centroid_y = double(sy) / r.pixels.size();
    return r;
}

// Independent two-scale box cover: walk every candidate 2x2 box of the grid
// anchored at the bbox origin and count the occupied ones. The counts are
// the oracle; the final formula matches the estimator verbatim so integer
// agreement implies bitwise agreement.
double fractal_oracle(const TargetRegion& r) {
    const int w = r.bbox.width(), h = r.bbox.height();
    std::vector<char> grid(size_t(w) * h, 0);
    for (const Point& p : r.pixels)
        grid[size_t(p.y - r.bbox.min_y) * w + (p.x - r.bbox.min_x)] = 1;
    long long n2 = 0;
    for (int cy = 0; cy * 2 < h; ++cy) {
        for (int cx = 0; cx * 2 < w; ++cx) {
            bool occupied = false;
            for (int dy = 0; dy < 2 && !occupied; ++dy)
                for (int dx = 0; dx < 2 && !occupied; ++dx) {
                    const int x = cx * 2 + dx, y = cy * 2 + dy;
                    occupied = x < w && y < h && grid[size_t(y) * w + x];
                }
            if (occupied) ++n2;
        }
    }
    const long long n1 = static_cast<long long>(r.pixels.size());
    if (n1 == n2) return 0.0;
    return (std::log(double(n1)) - std::log(double(n2))) / std::log(2.0);
}

} // namespace

TEST_SUITE("target_detect") {

TEST_CASE("threshold segmentation worked values") {
    Plane flat(4, 3, 100.0);
    const BinaryImage none = threshold_segment(flat, 150.0);
    CHECK(std::count(none.mask.begin(), none.mask.end(), 1) == 0);
    // inclusive rule: value == threshold is foreground
    const BinaryImage all = threshold_segment(flat, 100.0);
    CHECK(std::count(all.mask.begin(), all.mask.end(), 1) == 12);

    Plane ramp(256, 1);
    for (int x = 0; x < 256; ++x) ramp.at(x, 0) = x;
    const BinaryImage m = threshold_segment(ramp, 204.0);
    for (int x = 0; x < 256; ++x) CHECK(m.at(x, 0) == (x >= 204 ? 1 : 0));
}

TEST_CASE("raising the threshold never adds a pixel") {
    std::mt19937 rng(51);
    std::uniform_real_distribution<double> dist(0.0, 255.0);
    Plane p(12, 12);
    for (double& v : p.values) v = dist(rng);
    const BinaryImage lo = threshold_segment(p, 100.0);
    const BinaryImage hi = threshold_segment(p, 140.0);
    for (size_t i = 0; i < p.values.size(); ++i)
        if (hi.mask[i]) CHECK(lo.mask[i]);
}

TEST_CASE("morphological filter worked cases") {
    BinaryImage lone(7, 7);
    lone.at(3, 3) = 1;
    const BinaryImage filtered = morphological_filter(lone);
    CHECK(std::count(filtered.mask.begin(), filtered.mask.end(), 1) == 0);

    BinaryImage block(9, 9);
    for (int y = 2; y <= 6; ++y)
        for (int x = 2; x <= 6; ++x) block.at(x, y) = 1;
    CHECK(morphological_filter(block).mask == block.mask);

    BinaryImage empty(5, 5);
    CHECK(morphological_filter(empty).mask == empty.mask);
}

TEST_CASE("opening is idempotent") {
    std::mt19937 rng(52);
    for (int i = 0; i < 30; ++i) {
        const BinaryImage m = random_mask(rng, 20, 20, 0.4);
        const BinaryImage once = dilate3x3(erode3x3(m));
        const BinaryImage twice = dilate3x3(erode3x3(once));
        CHECK(once.mask == twice.mask);
    }
}

TEST_CASE("closing fills interior pinholes") {
    BinaryImage block(9, 9);
    for (int y = 2; y <= 6; ++y)
        for (int x = 2; x <= 6; ++x) block.at(x, y) = 1;
    BinaryImage holed = block;
    holed.at(4, 4) = 0;
    const BinaryImage closed = erode3x3(dilate3x3(holed));
    CHECK(closed.mask == block.mask);
}

TEST_CASE("connected components: count, connectivity, order") {
    BinaryImage m(10, 6);
    // blob A: rows 0-1, cols 0-1; blob B touches it only diagonally at (2,2)
    m.at(0, 0) = m.at(1, 0) = m.at(0, 1) = m.at(1, 1) = 1;
    m.at(2, 2) = 1;
    // blob C far away
    m.at(8, 4) = m.at(9, 4) = 1;
    const auto regions = connected_components(m);
    REQUIRE(regions.size() == 2); // diagonal contact joins A and B
    CHECK(regions[0].pixels.size() == 5);
    CHECK(regions[1].pixels.size() == 2);
    CHECK(regions[0].bbox.min_y <= regions[1].bbox.min_y);

    BinaryImage empty(4, 4);
    CHECK(connected_components(empty).empty());
}

TEST_CASE("components partition the mask") {
    std::mt19937 rng(53);
    for (int i = 0; i < 20; ++i) {
        const BinaryImage m = random_mask(rng, 16, 16, 0.35);
        const auto regions = connected_components(m);
        std::set<std::pair<int, int>> seen;
        size_t total = 0;
        for (const auto& r : regions) {
            for (const Point& p : r.pixels) {
                CHECK(m.at(p.x, p.y) == 1);
                CHECK(seen.insert({p.x, p.y}).second); // disjoint
            }
            total += r.pixels.size();
        }
        CHECK(total == size_t(std::count(m.mask.begin(), m.mask.end(), 1)));
    }
}

TEST_CASE("fractal dimension worked cases") {
    CHECK(fractal_dimension(region_from_points({{5, 5}})) == 0.0);
    CHECK(fractal_dimension(region_from_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}})) == 2.0);
    CHECK(fractal_dimension(region_from_points({{0, 0}, {1, 0}, {2, 0}, {3, 0}})) == 1.0);
}

TEST_CASE("fractal dimension equals the brute-force box cover") {
    std::mt19937 rng(54);
    for (int i = 0; i < 50; ++i) {
        const BinaryImage m = random_mask(rng, 16, 16, 0.3);
        for (const TargetRegion& r : connected_components(m)) {
            const double dim = fractal_dimension(r);
            CHECK(dim == fractal_oracle(r));
            CHECK(dim >= 0.0);
            CHECK(dim <= 2.0);
        }
    }
}

TEST_CASE("feature extraction worked cases") {
    const FeatureVector single = extract_features(region_from_points({{7, 3}}));
    CHECK(single.mass == 1.0);
    CHECK(single.dist_mean == 0.0);
    CHECK(single.dist_max == 0.0);
    CHECK(single.dist_min == 0.0);
    CHECK(single.diameter == std::sqrt(2.0));
    CHECK(single.fractal_dim == 0.0);

    const FeatureVector block =
        extract_features(region_from_points({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    CHECK(block.mass == 4.0);
    CHECK(block.dist_mean == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(block.dist_max == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(block.dist_min == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(block.diameter == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(block.fractal_dim == 2.0);

    const FeatureVector row =
        extract_features(region_from_points({{0, 0}, {1, 0}, {2, 0}, {3, 0}}));
    CHECK(row.mass == 4.0);
    CHECK(row.dist_mean == 1.0);
    CHECK(row.dist_max == 1.5);
    CHECK(row.dist_min == 0.5);
    CHECK(row.diameter == doctest::Approx(std::sqrt(17.0)).epsilon(1e-12));
    CHECK(row.fractal_dim == 1.0);
}

TEST_CASE("feature invariants hold on random regions") {
    std::mt19937 rng(55);
    for (int i = 0; i < 30; ++i) {
        const BinaryImage m = random_mask(rng, 16, 16, 0.4);
        for (const TargetRegion& r : connected_components(m)) {
            const FeatureVector f = extract_features(r);
            CHECK(f.mass >= 1.0);
            CHECK(f.dist_min <= f.dist_mean);
            CHECK(f.dist_mean <= f.dist_max);
            CHECK(f.dist_min >= 0.0);
            CHECK(f.diameter >= f.dist_max);
            CHECK(f.fractal_dim >= 0.0);
            CHECK(f.fractal_dim <= 2.0);
        }
    }
}

TEST_CASE("features are translation invariant") {
    std::mt19937 rng(56);
    std::uniform_int_distribution<int> shift(1, 40);
    for (int i = 0; i < 20; ++i) {
        const BinaryImage m = random_mask(rng, 12, 12, 0.45);
        const auto regions = connected_components(m);
        if (regions.empty()) continue;
        const TargetRegion& r = regions[0];
        const int dx = shift(rng), dy = shift(rng);
        std::vector<Point> moved;
        for (const Point& p : r.pixels) moved.push_back({p.x + dx, p.y + dy});
        const FeatureVector a = extract_features(r);
        const FeatureVector b = extract_features(region_from_points(std::move(moved)));
        CHECK(a.mass == b.mass);
        CHECK(a.diameter == b.diameter);
        CHECK(a.fractal_dim == b.fractal_dim);
        CHECK(a.dist_mean == doctest::Approx(b.dist_mean).epsilon(1e-9));
        CHECK(a.dist_max == doctest::Approx(b.dist_max).epsilon(1e-9));
        CHECK(a.dist_min == doctest::Approx(b.dist_min).epsilon(1e-9));
    }
}

TEST_CASE("meters-per-pixel scales the geometry features") {
    const TargetRegion r = region_from_points({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
    const FeatureVector f = extract_features(r, 0.5);
    CHECK(f.mass == 4.0);
    CHECK(f.dist_mean == 0.5);
    CHECK(f.dist_max == 0.75);
    CHECK(f.dist_min == 0.25);
    CHECK(f.diameter == doctest::Approx(std::sqrt(17.0) * 0.5).epsilon(1e-12));
    CHECK(f.fractal_dim == 1.0);
}

} // TEST_SUITE
