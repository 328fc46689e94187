#include <doctest.h>

#include <cmath>
#include <random>

#include "irt/colorspace.hpp"

using namespace irt;

TEST_SUITE("colorspace") {

TEST_CASE("forward transform spot values") {
    const YuvPixel white = rgb_to_yuv_pixel(255, 255, 255);
    CHECK(white.y == doctest::Approx(255.0).epsilon(1e-12));
    CHECK(white.u == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(white.v == doctest::Approx(0.0).epsilon(1e-9));

    const YuvPixel black = rgb_to_yuv_pixel(0, 0, 0);
    CHECK(black.y == 0.0);
    CHECK(black.u == 0.0);
    CHECK(black.v == 0.0);

    const YuvPixel red = rgb_to_yuv_pixel(255, 0, 0);
    CHECK(red.y == 0.299 * 255.0); // derived from the printed coefficient
    CHECK(red.y == doctest::Approx(76.245).epsilon(1e-9));
    CHECK(red.u == -0.147 * 255.0);
    CHECK(red.u == doctest::Approx(-37.485).epsilon(1e-9));
    CHECK(red.v == 0.615 * 255.0);
    CHECK(red.v == doctest::Approx(156.825).epsilon(1e-9));
}

TEST_CASE("inverse transform spot values") {
    YuvImage img(3, 1);
    img.y = {255.0, 0.0, 100.0};
    img.u = {0.0, 0.0, 0.0};
    img.v = {0.0, 0.0, 50.0};
    const RgbImage rgb = yuv_to_rgb(img);
    CHECK(rgb.at(0, 0)[0] == 255);
    CHECK(rgb.at(0, 0)[1] == 255);
    CHECK(rgb.at(0, 0)[2] == 255);
    CHECK(rgb.at(1, 0)[0] == 0);
    CHECK(rgb.at(1, 0)[1] == 0);
    CHECK(rgb.at(1, 0)[2] == 0);
    // Y=100, V=50: R = 100 + 1.14*50, G = 100 - 0.58*50, B = 100
    CHECK(rgb.at(2, 0)[0] == 157);
    CHECK(rgb.at(2, 0)[1] == 71);
    CHECK(rgb.at(2, 0)[2] == 100);
}

TEST_CASE("luminance spot values and equality with the Y row") {
    for (int g = 0; g <= 255; ++g)
        CHECK(luminance(g, g, g) == doctest::Approx(g).epsilon(1e-9));
    CHECK(luminance(255, 0, 0) == 0.299 * 255.0);
    CHECK(luminance(0, 255, 0) == 0.587 * 255.0);
    CHECK(luminance(0, 255, 0) == 149.685); // representable exactly

    std::mt19937 rng(11);
    std::uniform_int_distribution<int> dist(0, 255);
    for (int i = 0; i < 500; ++i) {
        const int r = dist(rng), g = dist(rng), b = dist(rng);
        CHECK(luminance(r, g, b) == rgb_to_yuv_pixel(r, g, b).y);
    }
}

TEST_CASE("grayscale fixpoint: U = V = 0") {
    for (int g = 0; g <= 255; ++g) {
        const YuvPixel p = rgb_to_yuv_pixel(g, g, g);
        CHECK(std::fabs(p.u) <= 1e-9);
        CHECK(std::fabs(p.v) <= 1e-9);
    }
}

TEST_CASE("linearity of the forward map") {
    std::mt19937 rng(12);
    std::uniform_int_distribution<int> dist(0, 255);
    for (const double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (int i = 0; i < 100; ++i) {
            const double r = dist(rng), g = dist(rng), b = dist(rng);
            const YuvPixel p = rgb_to_yuv_pixel(r, g, b);
            const YuvPixel q = rgb_to_yuv_pixel(a * r, a * g, a * b);
            CHECK(q.y == doctest::Approx(a * p.y).epsilon(1e-9));
            CHECK(q.u == doctest::Approx(a * p.u).epsilon(1e-9));
            CHECK(q.v == doctest::Approx(a * p.v).epsilon(1e-9));
        }
    }
}

TEST_CASE("round trip stays within 3 levels") {
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> dist(0, 255);
    RgbImage img(50, 40);
    for (auto& px : img.pixels) px = static_cast<std::uint8_t>(dist(rng));
    const RgbImage back = yuv_to_rgb(rgb_to_yuv(img));
    int worst = 0;
    for (size_t i = 0; i < img.pixels.size(); ++i)
        worst = std::max(worst, std::abs(int(img.pixels[i]) - int(back.pixels[i])));
    CHECK(worst <= 3);
}

TEST_CASE("image conversion matches the pixel transform") {
    std::mt19937 rng(14);
    std::uniform_int_distribution<int> dist(0, 255);
    RgbImage img(17, 9);
    for (auto& px : img.pixels) px = static_cast<std::uint8_t>(dist(rng));
    const YuvImage yuv = rgb_to_yuv(img);
    const Plane luma = luminance_plane(img);
    for (size_t i = 0; i < img.pixel_count(); ++i) {
        const std::uint8_t* p = img.pixels.data() + i * 3;
        const YuvPixel q = rgb_to_yuv_pixel(p[0], p[1], p[2]);
        CHECK(yuv.y[i] == q.y);
        CHECK(yuv.u[i] == q.u);
        CHECK(yuv.v[i] == q.v);
        CHECK(luma.values[i] == q.y);
    }
}

} // TEST_SUITE
