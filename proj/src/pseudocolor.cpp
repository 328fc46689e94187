#include "irt/pseudocolor.hpp"

#include <algorithm>
#include <cmath>

#include "irt/colorspace.hpp"
#include "irt/error.hpp"

namespace irt {

Palette Palette::default_hot() {
    Palette p;
    p.stops = {{{255, 255, 0}}, {{255, 0, 0}}};
    return p;
}

Palette Palette::parse(const std::string& spec) {
    Palette p;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        const std::string tok = spec.substr(pos, comma - pos);
        if (tok.size() != 6 || tok.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
            throw DataError("palette: bad hex stop '" + tok + "' (want RRGGBB)");
        std::array<std::uint8_t, 3> stop{};
        for (int c = 0; c < 3; ++c)
            stop[c] = static_cast<std::uint8_t>(std::stoi(tok.substr(2 * c, 2), nullptr, 16));
        p.stops.push_back(stop);
        if (comma == spec.size()) break;
        pos = comma + 1;
    }
    if (p.stops.size() < 2) throw DataError("palette: need at least 2 stops");
    return p;
}

std::string Palette::to_string() const {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (size_t i = 0; i < stops.size(); ++i) {
        if (i) out += ',';
        for (int c = 0; c < 3; ++c) {
            out += hex[stops[i][c] >> 4];
            out += hex[stops[i][c] & 0xF];
        }
    }
    return out;
}

std::array<std::uint8_t, 3> Palette::sample(double t) const {
    require(stops.size() >= 2, "palette: need at least 2 stops");
    t = std::clamp(t, 0.0, 1.0);
    const int segments = static_cast<int>(stops.size()) - 1;
    const double s = t * segments;
    int seg = static_cast<int>(s);
    if (seg >= segments) seg = segments - 1; // t == 1 lands on the last stop
    const double f = s - seg;
    std::array<std::uint8_t, 3> out{};
    for (int c = 0; c < 3; ++c) {
        const double v = stops[seg][c] * (1.0 - f) + stops[seg + 1][c] * f;
        out[c] = clamp_round_u8(v);
    }
    return out;
}

CodingRange coding_range(const Plane& luma) {
    require(!luma.values.empty(), "coding_range: empty plane");
    double max_value = luma.values[0];
    double min_value = luma.values[0];
    const long long n = static_cast<long long>(luma.values.size());
#pragma omp parallel for schedule(static) reduction(max : max_value) reduction(min : min_value)
    for (long long i = 0; i < n; ++i) {
        max_value = std::max(max_value, luma.values[i]);
        min_value = std::min(min_value, luma.values[i]);
    }
    return {0.80 * max_value + 0.20 * min_value, max_value, min_value};
}

double band_position(const CodingRange& range, double luma) {
    const double span = range.max_value - range.threshold;
    if (span <= 0.0) return 1.0;
    return std::clamp((luma - range.threshold) / span, 0.0, 1.0);
}

RgbImage pseudo_color_encode(const RgbImage& img, const Plane& luma,
                             const CodingRange& range, const Palette& palette) {
    require(img.width == luma.width && img.height == luma.height,
            "pseudo_color_encode: image/plane dimensions differ");
    RgbImage out = img;
    const long long n = static_cast<long long>(img.pixel_count());
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; ++i) {
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

} // namespace irt
