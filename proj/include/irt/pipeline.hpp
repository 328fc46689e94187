#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "irt/config.hpp"
#include "irt/evaluation.hpp"
#include "irt/manifest.hpp"
#include "irt/margin_classifier.hpp"

namespace irt {

// One recognized target as written to detections files.
struct Detection {
    std::string image;
    std::string class_id;
    Box bbox;
    std::vector<std::pair<std::string, double>> scores; // per-class g values
};

// Classifier-independent detection output: a segmented region's bbox and
// feature vector.
struct DetectedRegion {
    Box bbox;
    FeatureVector features;
};

// Segment -> morphological filter -> components -> features, on a luminance
// plane. In automatic threshold mode a constant plane has no thermal
// contrast and yields no regions.
std::vector<DetectedRegion> detect_regions(const Plane& luma, const PipelineConfig& cfg);

struct RecognizedFrame {
    std::vector<Detection> detections;
    RgbImage colorized;
    RgbImage encoded;   // pseudo-color highlighted
    RgbImage annotated; // encoded + detection boxes
};

// The full per-frame procedure: colorize against the template index, encode,
// segment the colorized frame's luminance, extract features, classify.
RecognizedFrame recognize_frame(const GrayImage& target, const TemplateIndex& index,
                                const MarginModel& model, const PipelineConfig& cfg,
                                const std::string& image_id);

// 1-pixel box outlines drawn in-place.
void draw_boxes(RgbImage& img, std::span<const Box> boxes,
                std::array<std::uint8_t, 3> color = {0, 255, 0});

// Detections files: one JSON object per line, scores in model class order,
// full round-trip precision.
std::string write_detections(const std::vector<Detection>& detections);
std::vector<Detection> parse_detections(const std::string& text);
void write_detections(const std::vector<Detection>& detections,
                      const std::filesystem::path& path);
std::vector<Detection> load_detections(const std::filesystem::path& path);

// Regions files (output of `detect`, input of `predict`).
struct RegionRecord {
    std::string image;
    Box bbox;
    FeatureVector features;
};
std::string write_regions(const std::vector<RegionRecord>& regions);
std::vector<RegionRecord> parse_regions(const std::string& text);

// Runs the detection front end over the manifest's training split and trains
// on regions matched to ground truth at the configured IoU threshold.
MarginModel train_from_manifest(const Manifest& manifest,
                                const std::filesystem::path& base_dir,
                                const PipelineConfig& cfg,
                                TrainTrace* trace = nullptr);

// Recognizes every entry of the split, in manifest order. When out_dir is
// non-empty, writes annotated/<frame>.ppm per image plus detections.jsonl.
std::vector<Detection> recognize_manifest(const Manifest& manifest, Split split,
                                          const std::filesystem::path& base_dir,
                                          const MarginModel& model,
                                          const PipelineConfig& cfg,
                                          const std::filesystem::path& out_dir = {});

} // namespace irt
