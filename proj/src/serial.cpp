#include "irt/serial.hpp"

#include <algorithm>
#include <cmath>

#include "irt/colorspace.hpp"

namespace irt::serial {

YuvImage rgb_to_yuv(const RgbImage& img) {
    YuvImage out(img.width, img.height);
    for (size_t i = 0; i < img.pixel_count(); ++i) {
        const std::uint8_t* p = img.pixels.data() + i * 3;
        const YuvPixel q = rgb_to_yuv_pixel(p[0], p[1], p[2]);
        out.y[i] = q.y;
        out.u[i] = q.u;
        out.v[i] = q.v;
    }
    return out;
}

RgbImage yuv_to_rgb(const YuvImage& img) {
    RgbImage out(img.width, img.height);
    for (size_t i = 0; i < img.pixel_count(); ++i) {
        const RgbTriple t = yuv_to_rgb_pixel(img.y[i], img.u[i], img.v[i]);
        std::uint8_t* p = out.pixels.data() + i * 3;
        p[0] = clamp_round_u8(t.r);
        p[1] = clamp_round_u8(t.g);
        p[2] = clamp_round_u8(t.b);
    }
    return out;
}

Plane luminance_plane(const RgbImage& img) {
    Plane out(img.width, img.height);
    for (size_t i = 0; i < img.pixel_count(); ++i) {
        const std::uint8_t* p = img.pixels.data() + i * 3;
        out.values[i] = luminance(p[0], p[1], p[2]);
    }
    return out;
}

CodingRange coding_range(const Plane& luma) {
    require(!luma.values.empty(), "coding_range: empty plane");
    double max_value = luma.values[0];
    double min_value = luma.values[0];
    for (double v : luma.values) {
        max_value = std::max(max_value, v);
        min_value = std::min(min_value, v);
    }
    return {0.80 * max_value + 0.20 * min_value, max_value, min_value};
}

RgbImage pseudo_color_encode(const RgbImage& img, const Plane& luma,
                             const CodingRange& range, const Palette& palette) {
    require(img.width == luma.width && img.height == luma.height,
            "pseudo_color_encode: image/plane dimensions differ");
    RgbImage out = img;
    for (size_t i = 0; i < img.pixel_count(); ++i) {
        const double l = luma.values[i];
        if (l < range.threshold) continue;
        const auto color = palette.sample(band_position(range, l));
        std::uint8_t* p = out.pixels.data() + i * 3;
        p[0] = color[0];
        p[1] = color[1];
        p[2] = color[2];
    }
    return out;
}

BinaryImage threshold_segment(const Plane& luma, double threshold) {
    BinaryImage out(luma.width, luma.height);
    for (size_t i = 0; i < luma.values.size(); ++i)
        out.mask[i] = luma.values[i] >= threshold ? 1 : 0;
    return out;
}

namespace {

BinaryImage morph3x3(const BinaryImage& in, bool erode) {
    BinaryImage out(in.width, in.height);
    for (int y = 0; y < in.height; ++y) {
        for (int x = 0; x < in.width; ++x) {
            bool all = true, any = false;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int nx = x + dx, ny = y + dy;
                    const bool v = nx >= 0 && nx < in.width && ny >= 0 && ny < in.height &&
                                   in.at(nx, ny) != 0;
                    all = all && v;
                    any = any || v;
                }
            }
            out.at(x, y) = (erode ? all : any) ? 1 : 0;
        }
    }
    return out;
}

} // namespace

BinaryImage erode3x3(const BinaryImage& mask) { return morph3x3(mask, true); }
BinaryImage dilate3x3(const BinaryImage& mask) { return morph3x3(mask, false); }

BinaryImage morphological_filter(const BinaryImage& mask) {
    // qualified: ADL would also find the parallel irt:: variants
    const BinaryImage opened = serial::dilate3x3(serial::erode3x3(mask));
    return serial::erode3x3(serial::dilate3x3(opened));
}

RgbImage colorize_with_index(const GrayImage& target, const TemplateIndex& index,
                             const TransferParams& params) {
    require(index.size() >= 1, "colorize: empty template index");
    require(params.neighbor_count >= 1 &&
                params.neighbor_count <= static_cast<int>(index.size()),
            "colorize: neighbor_count must be in [1, index size]");
    require(params.half_width == index.half_width,
            "colorize: params.half_width differs from index");

    const Plane tgt = gray_plane(target);
    RgbImage out(target.width, target.height);
    const int count = params.neighbor_count;

    std::vector<std::pair<double, int>> scratch;
    std::vector<NeighborHit> hits;
    std::vector<double> qbuf;
    std::vector<std::span<const double>> views(count);
    std::vector<Uv> chroma(count);

    for (size_t i = 0; i < tgt.pixel_count(); ++i) {
        const int x = static_cast<int>(i % target.width);
        const int y = static_cast<int>(i / target.width);
        detail::extract_patch_into(tgt, x, y, params.half_width, qbuf);
        detail::nearest_neighbors_into(qbuf, index, count, scratch, hits);
        for (int j = 0; j < count; ++j) {
            views[j] = index.patches[hits[j].id].values;
            chroma[j] = index.chroma[hits[j].id];
        }
        const std::vector<double> weights =
            reconstruction_weights(std::span<const double>(qbuf),
                                   std::span<const std::span<const double>>(views),
                                   params.regularization);
        const Uv c = transfer_chroma(weights, chroma);
        const RgbTriple t = yuv_to_rgb_pixel(tgt.values[i], c.u, c.v);
        std::uint8_t* p = out.pixels.data() + i * 3;
        p[0] = clamp_round_u8(t.r);
        p[1] = clamp_round_u8(t.g);
        p[2] = clamp_round_u8(t.b);
    }
    return out;
}

} // namespace irt::serial
