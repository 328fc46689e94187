#include "irt/colorspace.hpp"

namespace irt {

YuvImage rgb_to_yuv(const RgbImage& img) {
    require(img.width >= 1 && img.height >= 1 &&
                img.pixels.size() == img.pixel_count() * 3,
            "rgb_to_yuv: invalid image");
    YuvImage out(img.width, img.height);
    const long long n = static_cast<long long>(img.pixel_count());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        const std::uint8_t* p = img.pixels.data() + i * 3;
        const YuvPixel q = rgb_to_yuv_pixel(p[0], p[1], p[2]);
        out.y[i] = q.y;
        out.u[i] = q.u;
        out.v[i] = q.v;
    }
    return out;
}

RgbImage yuv_to_rgb(const YuvImage& img) {
    require(img.width >= 1 && img.height >= 1 &&
                img.y.size() == img.pixel_count() &&
                img.u.size() == img.pixel_count() &&
                img.v.size() == img.pixel_count(),
            "yuv_to_rgb: invalid image");
    RgbImage out(img.width, img.height);
    const long long n = static_cast<long long>(img.pixel_count());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        const RgbTriple t = yuv_to_rgb_pixel(img.y[i], img.u[i], img.v[i]);
        std::uint8_t* p = out.pixels.data() + i * 3;
        p[0] = clamp_round_u8(t.r);
        p[1] = clamp_round_u8(t.g);
        p[2] = clamp_round_u8(t.b);
    }
    return out;
}

Plane luminance_plane(const RgbImage& img) {
    require(img.width >= 1 && img.height >= 1 &&
                img.pixels.size() == img.pixel_count() * 3,
            "luminance_plane: invalid image");
    Plane out(img.width, img.height);
    const long long n = static_cast<long long>(img.pixel_count());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
        const std::uint8_t* p = img.pixels.data() + i * 3;
        out.values[i] = luminance(p[0], p[1], p[2]);
    }
    return out;
}

Plane gray_plane(const GrayImage& img) {
    require(img.width >= 1 && img.height >= 1 &&
                img.pixels.size() == img.pixel_count(),
            "gray_plane: invalid image");
    Plane out(img.width, img.height);
    for (size_t i = 0; i < img.pixels.size(); ++i) out.values[i] = img.pixels[i];
    return out;
}

} // namespace irt
