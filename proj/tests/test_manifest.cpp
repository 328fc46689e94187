#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "irt/manifest.hpp"
#include "irt/netpbm.hpp"

using namespace irt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("irt_manifest_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::string line(const std::string& image, const std::string& env, const std::string& split,
                 const std::string& targets = "[]") {
    return "{\"image\":\"" + image + "\",\"environment\":\"" + env + "\",\"split\":\"" +
           split + "\",\"targets\":" + targets + "}\n";
}

} // namespace

TEST_SUITE("manifest") {

TEST_CASE("environment closed set") {
    CHECK(parse_environment("night") == Environment::night);
    CHECK(parse_environment("snowy") == Environment::snowy);
    CHECK(parse_environment("shelter") == Environment::shelter);
    CHECK(parse_environment("rainy") == Environment::rainy);
    CHECK_THROWS_WITH_AS(parse_environment("foggy"),
                         "unknown environment 'foggy' (must be one of: night, snowy, "
                         "shelter, rainy)",
                         DataError);
}

TEST_CASE("empty text parses to an empty manifest") {
    CHECK(parse_manifest_text("", ".", false).entries.empty());
    CHECK(parse_manifest_text("\n  \n", ".", false).entries.empty());
}

TEST_CASE("unknown environment names the line") {
    const std::string text = line("a.pgm", "night", "test") + line("b.pgm", "foggy", "test");
    try {
        parse_manifest_text(text, ".", false);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 2") != std::string::npos);
        CHECK(msg.find("foggy") != std::string::npos);
        CHECK(msg.find("night, snowy, shelter, rainy") != std::string::npos);
    }
}

TEST_CASE("duplicate image ids are rejected") {
    const std::string text = line("a.pgm", "night", "test") + line("a.pgm", "snowy", "test");
    CHECK_THROWS_AS(parse_manifest_text(text, ".", false), DataError);
}

TEST_CASE("malformed records carry line numbers") {
    CHECK_THROWS_AS(parse_manifest_text("{not json}\n", ".", false), DataError);
    CHECK_THROWS_AS(parse_manifest_text("{\"image\":\"x\"}\n", ".", false), DataError);
    CHECK_THROWS_AS(
        parse_manifest_text(line("a.pgm", "night", "test", "[{\"class\":\"c\"}]"), ".", false),
        DataError);
    CHECK_THROWS_AS(
        parse_manifest_text(
            line("a.pgm", "night", "test", "[{\"class\":\"c\",\"bbox\":[5,5,2,8]}]"), ".",
            false),
        DataError);
    CHECK_THROWS_AS(parse_manifest_text("{\"image\":\"x\",\"environment\":\"night\","
                                        "\"split\":\"test\",\"bogus\":1}\n",
                                        ".", false),
                    DataError);
}

TEST_CASE("missing files and oversized boxes are caught when checking paths") {
    TempDir tmp;
    write_pgm(GrayImage(8, 8, 0), tmp.path / "a.pgm");
    CHECK_THROWS_AS(parse_manifest_text(line("absent.pgm", "night", "test"), tmp.path, true),
                    DataError);
    // bbox outside the 8x8 frame
    CHECK_THROWS_AS(
        parse_manifest_text(
            line("a.pgm", "night", "test", "[{\"class\":\"c\",\"bbox\":[0,0,8,3]}]"),
            tmp.path, true),
        DataError);
    // in-range bbox passes
    const Manifest m = parse_manifest_text(
        line("a.pgm", "night", "test", "[{\"class\":\"c\",\"bbox\":[0,0,7,3]}]"), tmp.path,
        true);
    CHECK(m.entries.size() == 1);
}

TEST_CASE("table-layout counts: the rainy column") {
    // 20 training and 18 test rainy images of one class
    std::string text;
    for (int i = 0; i < 20; ++i)
        text += line("trn" + std::to_string(i) + ".pgm", "rainy", "training",
                     "[{\"class\":\"field_personnel\",\"bbox\":[0,0,3,3]}]");
    for (int i = 0; i < 18; ++i)
        text += line("tst" + std::to_string(i) + ".pgm", "rainy", "test",
                     "[{\"class\":\"field_personnel\",\"bbox\":[0,0,3,3]}]");
    const Manifest m = parse_manifest_text(text, ".", false);
    CHECK(m.entries.size() == 38);
    const std::string summary = manifest_summary(m);
    CHECK(summary.find("field_personnel") != std::string::npos);
    CHECK(summary.find("20") != std::string::npos);
    CHECK(summary.find("18") != std::string::npos);

    int trn = 0, tst = 0;
    for (const ManifestEntry& e : m.entries) {
        if (e.environment != Environment::rainy) continue;
        (e.split == Split::training ? trn : tst) += 1;
    }
    CHECK(trn == 20);
    CHECK(tst == 18);
}

TEST_CASE("canonical round trip is byte-identical") {
    Manifest m;
    ManifestEntry e;
    e.image = "frames/x.pgm";
    e.template_path = "template.ppm";
    e.environment = Environment::shelter;
    e.split = Split::training;
    e.targets = {{"personnel", {1, 2, 10, 12}}, {"equipment", {20, 20, 40, 30}}};
    m.entries.push_back(e);
    e.image = "frames/y.pgm";
    e.template_path.reset();
    e.targets.clear();
    m.entries.push_back(e);

    const std::string text = write_manifest(m);
    const Manifest back = parse_manifest_text(text, ".", false);
    CHECK(write_manifest(back) == text);
}

} // TEST_SUITE
