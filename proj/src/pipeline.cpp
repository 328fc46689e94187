#include "irt/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "irt/colorspace.hpp"
#include "irt/error.hpp"
#include "irt/netpbm.hpp"
#include "irt/pseudocolor.hpp"
#include "irt/target_detect.hpp"

namespace irt {

using ordered_json = nlohmann::ordered_json;

std::vector<DetectedRegion> detect_regions(const Plane& luma, const PipelineConfig& cfg) {
    double threshold = cfg.fixed_threshold;
    if (cfg.threshold_mode == ThresholdMode::automatic) {
        const CodingRange range = coding_range(luma);
        // a flat plane has no thermal contrast, hence no targets
        if (range.max_value == range.min_value) return {};
        threshold = range.threshold;
    }
    const BinaryImage mask = morphological_filter(threshold_segment(luma, threshold));
    std::vector<DetectedRegion> out;
    for (const TargetRegion& region : connected_components(mask))
        out.push_back({region.bbox, extract_features(region, cfg.meters_per_pixel)});
    return out;
}

void draw_boxes(RgbImage& img, std::span<const Box> boxes, std::array<std::uint8_t, 3> color) {
    const auto put = [&](int x, int y) {
        if (x < 0 || x >= img.width || y < 0 || y >= img.height) return;
        std::uint8_t* p = img.at(x, y);
        p[0] = color[0];
        p[1] = color[1];
        p[2] = color[2];
    };
    for (const Box& b : boxes) {
        for (int x = b.min_x; x <= b.max_x; ++x) {
            put(x, b.min_y);
            put(x, b.max_y);
        }
        for (int y = b.min_y; y <= b.max_y; ++y) {
            put(b.min_x, y);
            put(b.max_x, y);
        }
    }
}

RecognizedFrame recognize_frame(const GrayImage& target, const TemplateIndex& index,
                                const MarginModel& model, const PipelineConfig& cfg,
                                const std::string& image_id) {
    RecognizedFrame out;
    out.colorized = colorize_with_index(target, index, cfg.transfer);
    const Plane luma = luminance_plane(out.colorized);
    const CodingRange range = coding_range(luma);
    out.encoded = pseudo_color_encode(out.colorized, luma, range, cfg.palette());

    std::vector<Box> boxes;
    for (const DetectedRegion& r : detect_regions(luma, cfg)) {
        Detection det;
        det.image = image_id;
        det.bbox = r.bbox;
        det.scores = decision(model, r.features);
        det.class_id = predict(model, r.features);
        boxes.push_back(r.bbox);
        out.detections.push_back(std::move(det));
    }
    out.annotated = out.encoded;
    draw_boxes(out.annotated, boxes);
    return out;
}

namespace {

ordered_json box_json(const Box& b) {
    return ordered_json::array({b.min_x, b.min_y, b.max_x, b.max_y});
}

Box parse_box(const ordered_json& j, const char* context) {
    if (!j.is_array() || j.size() != 4)
        throw DataError(std::string(context) + ": bbox must be a 4-element array");
    return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

template <typename Fn>
void for_each_jsonl(const std::string& text, const char* what, Fn&& fn) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const nlohmann::json::exception& ex) {
            throw DataError(std::string(what) + " line " + std::to_string(line_no) + ": " +
                            ex.what());
        }
        try {
            fn(j);
        } catch (const nlohmann::json::exception& ex) {
            throw DataError(std::string(what) + " line " + std::to_string(line_no) + ": " +
                            ex.what());
        } catch (const DataError& ex) {
            throw DataError(std::string(what) + " line " + std::to_string(line_no) + ": " +
                            ex.what());
        }
    }
}

std::string slurp(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(std::string("cannot open ") + what + ": " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& text, const std::filesystem::path& path, const char* what) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(std::string("cannot write ") + what + ": " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw DataError(std::string(what) + " write failed: " + path.string());
}

} // namespace

std::string write_detections(const std::vector<Detection>& detections) {
    std::string out;
    for (const Detection& d : detections) {
        ordered_json j;
        j["image"] = d.image;
        j["class"] = d.class_id;
        j["bbox"] = box_json(d.bbox);
        ordered_json scores = ordered_json::object();
        for (const auto& [cls, g] : d.scores) scores[cls] = g;
        j["scores"] = std::move(scores);
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<Detection> parse_detections(const std::string& text) {
    std::vector<Detection> out;
    for_each_jsonl(text, "detections", [&](const ordered_json& j) {
        Detection d;
        d.image = j.at("image").get<std::string>();
        d.class_id = j.at("class").get<std::string>();
        d.bbox = parse_box(j.at("bbox"), "detections");
        if (j.contains("scores"))
            for (const auto& item : j.at("scores").items())
                d.scores.emplace_back(item.key(), item.value().get<double>());
        out.push_back(std::move(d));
    });
    return out;
}

void write_detections(const std::vector<Detection>& detections,
                      const std::filesystem::path& path) {
    spit(write_detections(detections), path, "detections file");
}

std::vector<Detection> load_detections(const std::filesystem::path& path) {
    return parse_detections(slurp(path, "detections file"));
}

std::string write_regions(const std::vector<RegionRecord>& regions) {
    std::string out;
    for (const RegionRecord& r : regions) {
        ordered_json j;
        j["image"] = r.image;
        j["bbox"] = box_json(r.bbox);
        ordered_json f;
        const auto values = r.features.as_array();
        const auto names = FeatureVector::names();
        for (size_t i = 0; i < values.size(); ++i) f[names[i]] = values[i];
        j["features"] = std::move(f);
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<RegionRecord> parse_regions(const std::string& text) {
    std::vector<RegionRecord> out;
    for_each_jsonl(text, "regions", [&](const ordered_json& j) {
        RegionRecord r;
        r.image = j.at("image").get<std::string>();
        r.bbox = parse_box(j.at("bbox"), "regions");
        const ordered_json& f = j.at("features");
        std::array<double, 6> values{};
        const auto names = FeatureVector::names();
        for (size_t i = 0; i < values.size(); ++i) values[i] = f.at(names[i]).get<double>();
        r.features = FeatureVector::from_array(values);
        out.push_back(std::move(r));
    });
    return out;
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base_dir, const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base_dir / fp;
}

// Template indexes are expensive; build each distinct template once.
class IndexCache {
public:
    IndexCache(const std::filesystem::path& base_dir, const TransferParams& params)
        : base_dir_(base_dir), params_(params) {}

    const TemplateIndex& get(const ManifestEntry& entry) {
        if (!entry.template_path)
            throw DataError("manifest entry '" + entry.image + "' has no template path");
        const std::string key = *entry.template_path;
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            const RgbImage tpl = read_ppm(resolve(base_dir_, key));
            it = cache_.emplace(key, build_template_index(tpl, params_)).first;
        }
        return it->second;
    }

private:
    std::filesystem::path base_dir_;
    TransferParams params_;
    std::map<std::string, TemplateIndex> cache_;
};

} // namespace

MarginModel train_from_manifest(const Manifest& manifest,
                                const std::filesystem::path& base_dir,
                                const PipelineConfig& cfg,
                                TrainTrace* trace) {
    IndexCache indexes(base_dir, cfg.transfer);
    std::vector<LabeledSample> samples;

    for (const ManifestEntry& entry : manifest.entries) {
        if (entry.split != Split::training) continue;
        const GrayImage frame = read_pgm(resolve(base_dir, entry.image));
        const RgbImage colorized =
            colorize_with_index(frame, indexes.get(entry), cfg.transfer);
        const Plane luma = luminance_plane(colorized);
        const std::vector<DetectedRegion> regions = detect_regions(luma, cfg);

        std::vector<Box> pred_boxes;
        pred_boxes.reserve(regions.size());
        for (const DetectedRegion& r : regions) pred_boxes.push_back(r.bbox);
        std::vector<Box> truth_boxes;
        truth_boxes.reserve(entry.targets.size());
        for (const TruthTarget& t : entry.targets) truth_boxes.push_back(t.bbox);

        const Matching m = match_detections(pred_boxes, truth_boxes, cfg.iou_threshold);
        for (const MatchPair& pair : m.pairs)
            samples.push_back({regions[pair.predicted_index].features,
                               entry.targets[pair.truth_index].class_id});
    }

    if (samples.empty())
        throw DataError("train: no training regions matched the ground truth");
    return train(samples, cfg.classifier, trace);
}

std::vector<Detection> recognize_manifest(const Manifest& manifest, Split split,
                                          const std::filesystem::path& base_dir,
                                          const MarginModel& model,
                                          const PipelineConfig& cfg,
                                          const std::filesystem::path& out_dir) {
    IndexCache indexes(base_dir, cfg.transfer);
    const bool writing = !out_dir.empty();
    if (writing) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir / "annotated", ec);
        if (ec)
            throw DataError("cannot create output directory: " + out_dir.string() + ": " +
                            ec.message());
    }

    std::vector<Detection> all;
    for (const ManifestEntry& entry : manifest.entries) {
        if (entry.split != split) continue;
        const GrayImage frame = read_pgm(resolve(base_dir, entry.image));
        const RecognizedFrame rec =
            recognize_frame(frame, indexes.get(entry), model, cfg, entry.image);
        if (writing) {
            const std::string stem = std::filesystem::path(entry.image).stem().string();
            write_ppm(rec.annotated, out_dir / "annotated" / (stem + ".ppm"));
        }
        all.insert(all.end(), rec.detections.begin(), rec.detections.end());
    }
    if (writing) write_detections(all, out_dir / "detections.jsonl");
    return all;
}

} // namespace irt
