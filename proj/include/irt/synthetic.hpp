#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "irt/image.hpp"
#include "irt/manifest.hpp"

namespace irt {

// Per-class blob generator: how many thermal targets of this class appear in
// a frame, how bright they run, and their half extents (ellipse semi-axes or
// rectangle half sides).
struct BlobClassSpec {
    enum class Shape { ellipse, rectangle };

    std::string name;
    Shape shape = Shape::ellipse;
    int count_min = 1, count_max = 2;
    int intensity_min = 222, intensity_max = 242;
    int rx_min = 2, rx_max = 3;
    int ry_min = 4, ry_max = 6;
};

// Desk-scale stand-in for site footage: bright blobs on a dark background,
// disturbed per environment (night: dark + heavy gain noise; snowy: bright
// speckle; shelter: occluding bars drawn over the targets; rainy: diagonal
// streak clutter). Deterministic under the seed.
struct SyntheticSceneSpec {
    int width = 96, height = 96;
    std::uint64_t seed = 1;
    int train_per_environment = 10;
    int test_per_environment = 10;
    std::vector<BlobClassSpec> classes;

    // noise profile knobs
    double noise_sigma = 2.2;
    int background_min = 25, background_max = 42;
    double night_sigma = 3.2;
    int night_background_min = 8, night_background_max = 20;
    int speckle_count = 40;
    int speckle_min = 200, speckle_max = 240;
    int bar_count_min = 1, bar_count_max = 2;
    int streak_count = 12;
    int streak_min = 120, streak_max = 180;
    int streak_len_min = 6, streak_len_max = 14;
};

SyntheticSceneSpec load_scene_spec(const std::filesystem::path& json_path);
SyntheticSceneSpec parse_scene_spec(const std::string& json_text);

struct RenderedScene {
    GrayImage frame;
    std::vector<TruthTarget> targets; // bbox = exact bounds of rendered blob pixels
};

// One frame; consumes the generator sequentially.
RenderedScene render_scene(const SyntheticSceneSpec& spec, Environment env,
                           std::mt19937_64& rng);

// Clean scene recolored through a cool-to-warm map; serves as the color
// template the corpus is colorized against.
RgbImage render_template(const SyntheticSceneSpec& spec, std::mt19937_64& rng);

// Writes frames/<split>_<env>_<NN>.pgm, template.ppm and manifest.jsonl under
// out_dir; returns the manifest. Identical seeds give byte-identical output.
Manifest generate_synthetic(const SyntheticSceneSpec& spec,
                            const std::filesystem::path& out_dir);

} // namespace irt
