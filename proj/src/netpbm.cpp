#include "irt/netpbm.hpp"

#include <cctype>
#include <fstream>

#include "irt/error.hpp"

namespace irt {

namespace {

// Whitespace-separated header token, '#' comments run to end of line.
int header_int(std::istream& in, const std::string& path, const char* what) {
    int c = in.get();
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#')
            while (c != EOF && c != '\n') c = in.get();
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c))
        throw DataError(path + ": bad netpbm header (" + what + ")");
    long v = 0;
    while (c != EOF && std::isdigit(c)) {
        v = v * 10 + (c - '0');
        if (v > 1 << 24) throw DataError(path + ": absurd netpbm header value");
        c = in.get();
    }
    if (c != EOF) in.unget();
    return static_cast<int>(v);
}

PnmHeader parse_header(std::istream& in, const std::string& path) {
    PnmHeader h;
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    if (!in || m0 != 'P' || (m1 != '5' && m1 != '6'))
        throw DataError(path + ": not a binary PGM/PPM file (magic must be P5 or P6)");
    h.magic = {m0, m1};
    h.width = header_int(in, path, "width");
    h.height = header_int(in, path, "height");
    h.maxval = header_int(in, path, "maxval");
    if (h.width < 1 || h.height < 1)
        throw DataError(path + ": bad image dimensions");
    if (h.maxval != 255)
        throw DataError(path + ": unsupported maxval " + std::to_string(h.maxval) +
                        " (must be 255)");
    // exactly one whitespace byte separates header and raster
    const int c = in.get();
    if (c == EOF || !std::isspace(c))
        throw DataError(path + ": missing raster separator");
    return h;
}

void read_raster(std::istream& in, const std::string& path, std::uint8_t* dst, size_t n) {
    in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in.gcount()) != n)
        throw DataError(path + ": truncated raster data");
}

} // namespace

PnmHeader read_pnm_header(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open image: " + path.string());
    return parse_header(in, path.string());
}

GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open image: " + path.string());
    const PnmHeader h = parse_header(in, path.string());
    if (h.magic != "P5") throw DataError(path.string() + ": expected P5 grayscale");
    GrayImage img(h.width, h.height);
    read_raster(in, path.string(), img.pixels.data(), img.pixels.size());
    return img;
}

RgbImage read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open image: " + path.string());
    const PnmHeader h = parse_header(in, path.string());
    if (h.magic != "P6") throw DataError(path.string() + ": expected P6 color");
    RgbImage img(h.width, h.height);
    read_raster(in, path.string(), img.pixels.data(), img.pixels.size());
    return img;
}

namespace {

void write_pnm(const std::filesystem::path& path, const char* magic, int w, int h,
               const std::uint8_t* data, size_t n) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write image: " + path.string());
    out << magic << '\n' << w << ' ' << h << "\n255\n";
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n));
    if (!out) throw DataError("image write failed: " + path.string());
}

} // namespace

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
    require(img.pixels.size() == img.pixel_count(), "write_pgm: invalid image");
    write_pnm(path, "P5", img.width, img.height, img.pixels.data(), img.pixels.size());
}

void write_ppm(const RgbImage& img, const std::filesystem::path& path) {
    require(img.pixels.size() == img.pixel_count() * 3, "write_ppm: invalid image");
    write_pnm(path, "P6", img.width, img.height, img.pixels.data(), img.pixels.size());
}

} // namespace irt
