// Times the OpenMP kernels against their serial reference twins on a
// synthetic scene and verifies the outputs are byte-identical.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "irt/color_transfer.hpp"
#include "irt/colorspace.hpp"
#include "irt/pseudocolor.hpp"
#include "irt/serial.hpp"
#include "irt/synthetic.hpp"
#include "irt/target_detect.hpp"

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn(); // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-22s %10.3f ms %10.3f ms %9.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "identical" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    int size = 256;
    int reps = 5;
    if (argc > 1) size = std::atoi(argv[1]);
    if (argc > 2) reps = std::atoi(argv[2]);
    if (size < 16 || reps < 1) {
        std::fprintf(stderr, "usage: irt_bench [frame_size >= 16] [reps >= 1]\n");
        return 1;
    }

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel path runs serially\n");
#endif

    irt::SyntheticSceneSpec spec;
    spec.width = size;
    spec.height = size;
    spec.seed = 7;
    spec.classes = {
        {"personnel", irt::BlobClassSpec::Shape::ellipse, 2, 4, 222, 242, 2, 3, 4, 6},
        {"equipment", irt::BlobClassSpec::Shape::rectangle, 2, 4, 222, 242, 5, 7, 4, 6},
    };
    std::mt19937_64 rng(spec.seed);
    const irt::RgbImage tpl = irt::render_template(spec, rng);
    const irt::RenderedScene scene = irt::render_scene(spec, irt::Environment::snowy, rng);

    std::printf("frame %dx%d, %d reps per kernel\n\n", size, size, reps);
    std::printf("%-22s %13s %13s %10s\n", "kernel", "serial", "parallel", "speedup");

    {
        const auto a = irt::serial::rgb_to_yuv(tpl);
        const auto b = irt::rgb_to_yuv(tpl);
        report("rgb_to_yuv",
               time_ms([&] { irt::serial::rgb_to_yuv(tpl); }, reps),
               time_ms([&] { irt::rgb_to_yuv(tpl); }, reps),
               a.y == b.y && a.u == b.u && a.v == b.v);
    }
    const irt::YuvImage yuv = irt::rgb_to_yuv(tpl);
    {
        const auto a = irt::serial::yuv_to_rgb(yuv);
        const auto b = irt::yuv_to_rgb(yuv);
        report("yuv_to_rgb",
               time_ms([&] { irt::serial::yuv_to_rgb(yuv); }, reps),
               time_ms([&] { irt::yuv_to_rgb(yuv); }, reps),
               a.pixels == b.pixels);
    }
    const irt::Plane luma = irt::luminance_plane(tpl);
    {
        const auto a = irt::serial::luminance_plane(tpl);
        report("luminance_plane",
               time_ms([&] { irt::serial::luminance_plane(tpl); }, reps),
               time_ms([&] { irt::luminance_plane(tpl); }, reps),
               a.values == luma.values);
    }
    const irt::CodingRange range = irt::coding_range(luma);
    {
        const auto a = irt::serial::coding_range(luma);
        report("coding_range",
               time_ms([&] { irt::serial::coding_range(luma); }, reps),
               time_ms([&] { irt::coding_range(luma); }, reps),
               a.threshold == range.threshold && a.max_value == range.max_value &&
                   a.min_value == range.min_value);
    }
    const irt::Palette palette = irt::Palette::default_hot();
    {
        const auto a = irt::serial::pseudo_color_encode(tpl, luma, range, palette);
        const auto b = irt::pseudo_color_encode(tpl, luma, range, palette);
        report("pseudo_color_encode",
               time_ms([&] { irt::serial::pseudo_color_encode(tpl, luma, range, palette); }, reps),
               time_ms([&] { irt::pseudo_color_encode(tpl, luma, range, palette); }, reps),
               a.pixels == b.pixels);
    }
    const irt::Plane scene_luma = irt::gray_plane(scene.frame);
    const irt::BinaryImage mask = irt::threshold_segment(scene_luma, range.threshold);
    {
        const auto a = irt::serial::threshold_segment(scene_luma, range.threshold);
        report("threshold_segment",
               time_ms([&] { irt::serial::threshold_segment(scene_luma, range.threshold); }, reps),
               time_ms([&] { irt::threshold_segment(scene_luma, range.threshold); }, reps),
               a.mask == mask.mask);
    }
    {
        const auto a = irt::serial::morphological_filter(mask);
        const auto b = irt::morphological_filter(mask);
        report("morphological_filter",
               time_ms([&] { irt::serial::morphological_filter(mask); }, reps),
               time_ms([&] { irt::morphological_filter(mask); }, reps),
               a.mask == b.mask);
    }
    {
        irt::TransferParams params;
        params.template_stride = 4;
        params.neighbor_count = 5;
        const irt::TemplateIndex index = irt::build_template_index(tpl, params);
        const int creps = std::max(1, reps / 5);
        const auto a = irt::serial::colorize_with_index(scene.frame, index, params);
        const auto b = irt::colorize_with_index(scene.frame, index, params);
        report("colorize",
               time_ms([&] { irt::serial::colorize_with_index(scene.frame, index, params); }, creps),
               time_ms([&] { irt::colorize_with_index(scene.frame, index, params); }, creps),
               a.pixels == b.pixels);
    }
    return 0;
}
