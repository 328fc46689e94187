#pragma once

#include <filesystem>
#include <string>

#include "irt/image.hpp"

namespace irt {

struct PnmHeader {
    std::string magic; // "P5" or "P6"
    int width = 0;
    int height = 0;
    int maxval = 0;
};

// Header only (cheap dimension checks without reading pixel data).
PnmHeader read_pnm_header(const std::filesystem::path& path);

// Binary 8-bit netpbm. maxval must be 255; anything else is rejected.
GrayImage read_pgm(const std::filesystem::path& path);
RgbImage read_ppm(const std::filesystem::path& path);
void write_pgm(const GrayImage& img, const std::filesystem::path& path);
void write_ppm(const RgbImage& img, const std::filesystem::path& path);

} // namespace irt
