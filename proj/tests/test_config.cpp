#include <doctest.h>

#include "irt/config.hpp"

using namespace irt;

TEST_SUITE("config") {

TEST_CASE("empty config is all defaults") {
    const PipelineConfig cfg = parse_config("");
    CHECK(cfg.transfer.half_width == 2);
    CHECK(cfg.transfer.neighbor_count == 10);
    CHECK(cfg.transfer.template_stride == 2);
    CHECK(cfg.transfer.regularization == 1e-6);
    CHECK(cfg.palette_spec == "FFFF00,FF0000");
    CHECK(cfg.threshold_mode == ThresholdMode::automatic);
    CHECK(cfg.classifier.cost == 1.0);
    CHECK(cfg.classifier.tolerance == 1e-6);
    CHECK(cfg.classifier.max_iterations == 10000);
    CHECK(cfg.iou_threshold == 0.3);
    CHECK(cfg.meters_per_pixel == 1.0);
}

TEST_CASE("every key parses, comments and blanks are ignored") {
    const PipelineConfig cfg = parse_config(
        "# pipeline settings\n"
        "transfer.half_width = 3\n"
        "transfer.neighbors=15\n"
        "transfer.stride=1\n"
        "transfer.regularization=1e-5\n"
        "\n"
        "palette=00FF00,0000FF,FF0000\n"
        "segment.mode=fixed\n"
        "segment.threshold=190.5   # inline comment\n"
        "classifier.cost=100\n"
        "classifier.tolerance=1e-8\n"
        "classifier.max_iterations=500\n"
        "classifier.seed=777\n"
        "eval.iou=0.5\n"
        "scale.meters_per_pixel=0.02\n");
    CHECK(cfg.transfer.half_width == 3);
    CHECK(cfg.transfer.neighbor_count == 15);
    CHECK(cfg.transfer.template_stride == 1);
    CHECK(cfg.transfer.regularization == 1e-5);
    CHECK(cfg.palette().stops.size() == 3);
    CHECK(cfg.threshold_mode == ThresholdMode::fixed);
    CHECK(cfg.fixed_threshold == 190.5);
    CHECK(cfg.classifier.cost == 100.0);
    CHECK(cfg.classifier.tolerance == 1e-8);
    CHECK(cfg.classifier.max_iterations == 500);
    CHECK(cfg.classifier.seed == 777);
    CHECK(cfg.iou_threshold == 0.5);
    CHECK(cfg.meters_per_pixel == 0.02);
}

TEST_CASE("bad keys and values are named in the error") {
    CHECK_THROWS_WITH_AS(parse_config("bogus.key=1\n"),
                         "config line 1: unknown key 'bogus.key'", DataError);
    CHECK_THROWS_AS(parse_config("transfer.neighbors=zero\n"), DataError);
    CHECK_THROWS_AS(parse_config("transfer.neighbors=0\n"), DataError); // below range
    CHECK_THROWS_AS(parse_config("transfer.stride=0\n"), DataError);
    CHECK_THROWS_AS(parse_config("segment.mode=sometimes\n"), DataError);
    CHECK_THROWS_AS(parse_config("palette=FF\n"), DataError);
    CHECK_THROWS_AS(parse_config("eval.iou=0\n"), DataError);
    CHECK_THROWS_AS(parse_config("just a line\n"), DataError);
}

TEST_CASE("write_config round trips through parse_config") {
    PipelineConfig cfg;
    cfg.transfer.half_width = 4;
    cfg.classifier.seed = 99;
    cfg.threshold_mode = ThresholdMode::fixed;
    cfg.fixed_threshold = 180.25;
    const PipelineConfig back = parse_config(write_config(cfg));
    CHECK(back.transfer.half_width == 4);
    CHECK(back.classifier.seed == 99);
    CHECK(back.threshold_mode == ThresholdMode::fixed);
    CHECK(back.fixed_threshold == 180.25);
    CHECK(write_config(back) == write_config(cfg));
}

} // TEST_SUITE
