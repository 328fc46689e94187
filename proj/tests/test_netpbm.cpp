#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "irt/netpbm.hpp"

using namespace irt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("irt_netpbm_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

void write_bytes(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

} // namespace

TEST_SUITE("netpbm") {

TEST_CASE("pgm round trip") {
    TempDir tmp;
    std::mt19937 rng(81);
    std::uniform_int_distribution<int> dist(0, 255);
    GrayImage img(33, 21);
    for (auto& px : img.pixels) px = static_cast<std::uint8_t>(dist(rng));
    const fs::path p = tmp.path / "a.pgm";
    write_pgm(img, p);
    const GrayImage back = read_pgm(p);
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
    CHECK(back.pixels == img.pixels);

    const PnmHeader h = read_pnm_header(p);
    CHECK(h.magic == "P5");
    CHECK(h.width == 33);
    CHECK(h.maxval == 255);
}

TEST_CASE("ppm round trip") {
    TempDir tmp;
    std::mt19937 rng(82);
    std::uniform_int_distribution<int> dist(0, 255);
    RgbImage img(17, 12);
    for (auto& px : img.pixels) px = static_cast<std::uint8_t>(dist(rng));
    const fs::path p = tmp.path / "a.ppm";
    write_ppm(img, p);
    const RgbImage back = read_ppm(p);
    CHECK(back.pixels == img.pixels);
}

TEST_CASE("header comments are skipped") {
    TempDir tmp;
    const fs::path p = tmp.path / "c.pgm";
    write_bytes(p, "P5\n# a comment\n2 1\n# another\n255\n\x10\x20");
    const GrayImage img = read_pgm(p);
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.pixels[0] == 0x10);
    CHECK(img.pixels[1] == 0x20);
}

TEST_CASE("rejects wrong maxval, magic, truncation") {
    TempDir tmp;
    const fs::path p = tmp.path / "bad.pgm";
    write_bytes(p, "P5\n2 1\n65535\n\x10\x20");
    CHECK_THROWS_AS(read_pgm(p), DataError);
    write_bytes(p, "P4\n2 1\n255\n\x10\x20");
    CHECK_THROWS_AS(read_pgm(p), DataError);
    write_bytes(p, "P5\n4 4\n255\nxx");
    CHECK_THROWS_AS(read_pgm(p), DataError);
    write_bytes(p, "P6\n2 1\n255\n");
    CHECK_THROWS_AS(read_pgm(p), DataError); // color magic via the gray reader
    CHECK_THROWS_AS(read_pgm(tmp.path / "missing.pgm"), DataError);
}

TEST_CASE("canonical header layout") {
    TempDir tmp;
    GrayImage img(3, 2, 7);
    const fs::path p = tmp.path / "h.pgm";
    write_pgm(img, p);
    std::ifstream in(p, std::ios::binary);
    std::string header(9, '\0');
    in.read(header.data(), 9);
    CHECK(header == "P5\n3 2\n25"); // "P5\n<w> <h>\n255\n"
}

} // TEST_SUITE
