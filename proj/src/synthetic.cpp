#include "irt/synthetic.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "irt/colorspace.hpp"
#include "irt/error.hpp"
#include "irt/netpbm.hpp"
#include "irt/pseudocolor.hpp"

namespace irt {

namespace {

using nlohmann::json;

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Gaussian clipped to +-3 sigma so environment noise cannot push a blob pixel
// out of the coding band.
double clipped_gauss(std::mt19937_64& rng, double sigma) {
    if (sigma <= 0.0) return 0.0;
    const double v = std::normal_distribution<double>(0.0, sigma)(rng);
    return std::clamp(v, -3.0 * sigma, 3.0 * sigma);
}

struct PlacedBlob {
    const BlobClassSpec* cls;
    int cx, cy, rx, ry;
    double intensity;
    Box bbox() const { return {cx - rx, cy - ry, cx + rx, cy + ry}; }
};

bool boxes_too_close(const Box& a, const Box& b, int gap) {
    return a.min_x - gap <= b.max_x && b.min_x - gap <= a.max_x &&
           a.min_y - gap <= b.max_y && b.min_y - gap <= a.max_y;
}

std::vector<PlacedBlob> place_blobs(const SyntheticSceneSpec& spec, std::mt19937_64& rng) {
    std::vector<PlacedBlob> blobs;
    for (const BlobClassSpec& cls : spec.classes) {
        const int count = uniform_int(rng, cls.count_min, cls.count_max);
        for (int i = 0; i < count; ++i) {
            for (int attempt = 0; attempt < 200; ++attempt) {
                PlacedBlob b;
                b.cls = &cls;
                b.rx = uniform_int(rng, cls.rx_min, cls.rx_max);
                b.ry = uniform_int(rng, cls.ry_min, cls.ry_max);
                if (2 * b.rx + 4 >= spec.width || 2 * b.ry + 4 >= spec.height)
                    throw ContractError("synthetic: blob extents do not fit the frame");
                b.cx = uniform_int(rng, b.rx + 1, spec.width - 2 - b.rx);
                b.cy = uniform_int(rng, b.ry + 1, spec.height - 2 - b.ry);
                b.intensity = uniform_int(rng, cls.intensity_min, cls.intensity_max);
                bool ok = true;
                for (const PlacedBlob& other : blobs)
                    // keep a gap wide enough that morphological closing can
                    // never fuse two separate targets
                    if (boxes_too_close(b.bbox(), other.bbox(), 8)) { ok = false; break; }
                if (ok) {
                    blobs.push_back(b);
                    break;
                }
            }
        }
    }
    return blobs;
}

bool blob_covers(const PlacedBlob& b, int x, int y) {
    const double dx = x - b.cx;
    const double dy = y - b.cy;
    if (b.cls->shape == BlobClassSpec::Shape::rectangle)
        return std::fabs(dx) <= b.rx && std::fabs(dy) <= b.ry;
    const double ex = dx / (b.rx + 0.5);
    const double ey = dy / (b.ry + 0.5);
    return ex * ex + ey * ey <= 1.0;
}

// Shared scene body: background, clutter-under-targets, blobs. Occluding
// bars (shelter) go on top afterwards.
struct SceneBody {
    Plane canvas;
    std::vector<PlacedBlob> blobs;
    std::vector<TruthTarget> targets;
};

SceneBody render_body(const SyntheticSceneSpec& spec, Environment env,
                      std::mt19937_64& rng) {
    SceneBody body;
    const int w = spec.width, h = spec.height;
    const bool night = env == Environment::night;
    const int bg_lo = night ? spec.night_background_min : spec.background_min;
    const int bg_hi = night ? spec.night_background_max : spec.background_max;

    const double base = uniform_int(rng, bg_lo, bg_hi);
    const double gx = uniform_int(rng, -8, 8);
    const double gy = uniform_int(rng, -8, 8);
    body.canvas = Plane(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            body.canvas.at(x, y) =
                base + gx * (static_cast<double>(x) / w) + gy * (static_cast<double>(y) / h);

    if (env == Environment::snowy) {
        for (int i = 0; i < spec.speckle_count; ++i) {
            const int x = uniform_int(rng, 0, w - 1);
            const int y = uniform_int(rng, 0, h - 1);
            body.canvas.at(x, y) = uniform_int(rng, spec.speckle_min, spec.speckle_max);
        }
    }
    if (env == Environment::rainy) {
        for (int i = 0; i < spec.streak_count; ++i) {
            int x = uniform_int(rng, 0, w - 1);
            int y = uniform_int(rng, 0, h - 1);
            const int dx = uniform_int(rng, 0, 1) ? 1 : -1;
            const int len = uniform_int(rng, spec.streak_len_min, spec.streak_len_max);
            const double val = uniform_int(rng, spec.streak_min, spec.streak_max);
            for (int k = 0; k < len && x >= 0 && x < w && y < h; ++k, x += dx, ++y)
                body.canvas.at(x, y) = val;
        }
    }

    body.blobs = place_blobs(spec, rng);
    for (const PlacedBlob& b : body.blobs) {
        Box bounds{spec.width, spec.height, -1, -1};
        for (int y = b.cy - b.ry; y <= b.cy + b.ry; ++y) {
            for (int x = b.cx - b.rx; x <= b.cx + b.rx; ++x) {
                if (!blob_covers(b, x, y)) continue;
                body.canvas.at(x, y) = b.intensity + std::clamp(clipped_gauss(rng, 1.2), -3.0, 3.0);
                bounds.min_x = std::min(bounds.min_x, x);
                bounds.min_y = std::min(bounds.min_y, y);
                bounds.max_x = std::max(bounds.max_x, x);
                bounds.max_y = std::max(bounds.max_y, y);
            }
        }
        body.targets.push_back({b.cls->name, bounds});
    }
    return body;
}

GrayImage quantize(const Plane& canvas) {
    GrayImage img(canvas.width, canvas.height);
    for (size_t i = 0; i < canvas.values.size(); ++i)
        img.pixels[i] = clamp_round_u8(canvas.values[i]);
    return img;
}

} // namespace

RenderedScene render_scene(const SyntheticSceneSpec& spec, Environment env,
                           std::mt19937_64& rng) {
    require(!spec.classes.empty(), "synthetic: no blob classes configured");
    SceneBody body = render_body(spec, env, rng);
    const int w = spec.width, h = spec.height;

    if (env == Environment::shelter) {
        const int bars = uniform_int(rng, spec.bar_count_min, spec.bar_count_max);
        for (int i = 0; i < bars; ++i) {
            const int y = uniform_int(rng, 2, h - 3);
            for (int x = 0; x < w; ++x) body.canvas.at(x, y) = 8.0;
        }
    }

    const double sigma = env == Environment::night ? spec.night_sigma : spec.noise_sigma;
    for (double& v : body.canvas.values) v += clipped_gauss(rng, sigma);

    return {quantize(body.canvas), std::move(body.targets)};
}

RgbImage render_template(const SyntheticSceneSpec& spec, std::mt19937_64& rng) {
    require(!spec.classes.empty(), "synthetic: no blob classes configured");
    // The exemplar must cover the tonal range of every environment, or the
    // local linear solve extrapolates and the transferred chroma blows up.
    // Background: a gentle sweep over the dark levels; targets: one blob
    // population, clean of environment clutter.
    const int w = spec.width, h = spec.height;
    Plane canvas(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            canvas.at(x, y) =
                2.0 + 48.0 * x / std::max(1, w - 1) + clipped_gauss(rng, 1.0);

    for (const PlacedBlob& b : place_blobs(spec, rng))
        for (int y = b.cy - b.ry; y <= b.cy + b.ry; ++y)
            for (int x = b.cx - b.rx; x <= b.cx + b.rx; ++x)
                if (blob_covers(b, x, y))
                    canvas.at(x, y) = b.intensity + clipped_gauss(rng, 1.2);

    // cool navy background rising to a near-neutral warm white
    Palette map;
    map.stops = {{{3, 4, 14}},
                 {{28, 40, 84}},
                 {{96, 108, 122}},
                 {{196, 150, 62}},
                 {{252, 250, 244}}};
    RgbImage out(w, h);
    for (size_t i = 0; i < canvas.values.size(); ++i) {
        const double g = std::clamp(canvas.values[i], 0.0, 255.0);
        const auto c = map.sample(g / 255.0);
        out.pixels[3 * i + 0] = c[0];
        out.pixels[3 * i + 1] = c[1];
        out.pixels[3 * i + 2] = c[2];
    }
    return out;
}

SyntheticSceneSpec parse_scene_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& ex) {
        throw DataError(std::string("scene spec: ") + ex.what());
    }

    SyntheticSceneSpec spec;
    try {
        spec.width = j.value("width", spec.width);
        spec.height = j.value("height", spec.height);
        spec.seed = j.value("seed", spec.seed);
        spec.train_per_environment = j.value("train_per_environment", spec.train_per_environment);
        spec.test_per_environment = j.value("test_per_environment", spec.test_per_environment);
        if (!j.contains("classes") || !j["classes"].is_array() || j["classes"].empty())
            throw DataError("scene spec: 'classes' must be a non-empty array");
        for (const json& cj : j["classes"]) {
            BlobClassSpec cls;
            cls.name = cj.at("name").get<std::string>();
            const std::string shape = cj.at("shape").get<std::string>();
            if (shape == "ellipse")
                cls.shape = BlobClassSpec::Shape::ellipse;
            else if (shape == "rectangle")
                cls.shape = BlobClassSpec::Shape::rectangle;
            else
                throw DataError("scene spec: shape must be 'ellipse' or 'rectangle'");
            const auto range = [&](const char* key, int& lo, int& hi) {
                if (!cj.contains(key)) return;
                lo = cj.at(key).at(0).get<int>();
                hi = cj.at(key).at(1).get<int>();
                if (lo > hi) throw DataError(std::string("scene spec: bad range for ") + key);
            };
            range("count", cls.count_min, cls.count_max);
            range("intensity", cls.intensity_min, cls.intensity_max);
            range("rx", cls.rx_min, cls.rx_max);
            range("ry", cls.ry_min, cls.ry_max);
            spec.classes.push_back(std::move(cls));
        }
        if (j.contains("noise")) {
            const json& nj = j["noise"];
            spec.noise_sigma = nj.value("sigma", spec.noise_sigma);
            spec.night_sigma = nj.value("night_sigma", spec.night_sigma);
            const auto range = [&](const char* key, int& lo, int& hi) {
                if (!nj.contains(key)) return;
                lo = nj.at(key).at(0).get<int>();
                hi = nj.at(key).at(1).get<int>();
                if (lo > hi) throw DataError(std::string("scene spec: bad range for ") + key);
            };
            range("background", spec.background_min, spec.background_max);
            range("night_background", spec.night_background_min, spec.night_background_max);
            range("speckle_intensity", spec.speckle_min, spec.speckle_max);
            range("bar_count", spec.bar_count_min, spec.bar_count_max);
            range("streak_intensity", spec.streak_min, spec.streak_max);
            range("streak_length", spec.streak_len_min, spec.streak_len_max);
            spec.speckle_count = nj.value("speckle_count", spec.speckle_count);
            spec.streak_count = nj.value("streak_count", spec.streak_count);
        }
    } catch (const json::exception& ex) {
        throw DataError(std::string("scene spec: ") + ex.what());
    }
    if (spec.width < 16 || spec.height < 16)
        throw DataError("scene spec: frame must be at least 16x16");
    if (spec.train_per_environment < 0 || spec.test_per_environment < 0)
        throw DataError("scene spec: negative per-environment counts");
    return spec;
}

SyntheticSceneSpec load_scene_spec(const std::filesystem::path& json_path) {
    std::ifstream in(json_path, std::ios::binary);
    if (!in) throw DataError("cannot open scene spec: " + json_path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene_spec(buf.str());
}

Manifest generate_synthetic(const SyntheticSceneSpec& spec,
                            const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir / "frames", ec);
    if (ec) throw DataError("cannot create output directory: " + out_dir.string() + ": " +
                            ec.message());

    std::mt19937_64 rng(spec.seed);
    const RgbImage tpl = render_template(spec, rng);
    write_ppm(tpl, out_dir / "template.ppm");

    Manifest manifest;
    for (const Split split : {Split::training, Split::test}) {
        const int per_env =
            split == Split::training ? spec.train_per_environment : spec.test_per_environment;
        for (const Environment env : kEnvironments) {
            for (int i = 0; i < per_env; ++i) {
                RenderedScene scene = render_scene(spec, env, rng);
                char name[64];
                std::snprintf(name, sizeof(name), "frames/%s_%s_%02d.pgm",
                              to_string(split).c_str(), to_string(env).c_str(), i);
                write_pgm(scene.frame, out_dir / name);
                ManifestEntry entry;
                entry.image = name;
                entry.template_path = "template.ppm";
                entry.environment = env;
                entry.split = split;
                entry.targets = std::move(scene.targets);
                manifest.entries.push_back(std::move(entry));
            }
        }
    }
    write_manifest(manifest, out_dir / "manifest.jsonl");
    return manifest;
}

} // namespace irt
