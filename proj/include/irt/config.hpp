#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "irt/color_transfer.hpp"
#include "irt/margin_classifier.hpp"
#include "irt/pseudocolor.hpp"

namespace irt {

enum class ThresholdMode {
    automatic, // segmentation threshold = coding-range threshold of the frame
    fixed,     // segmentation threshold = segment.threshold
};

// Every knob of the pipeline, flat key=value file. Every key has a default,
// so an empty (or absent) config is valid.
struct PipelineConfig {
    TransferParams transfer;
    std::string palette_spec = "FFFF00,FF0000";
    ThresholdMode threshold_mode = ThresholdMode::automatic;
    double fixed_threshold = 204.0;
    TrainOptions classifier;
    double iou_threshold = 0.3;
    double meters_per_pixel = 1.0;

    Palette palette() const { return Palette::parse(palette_spec); }
};

PipelineConfig parse_config(const std::string& text);
PipelineConfig load_config(const std::filesystem::path& path);

// The full key list with current values, suitable as a starting config file.
std::string write_config(const PipelineConfig& cfg);

} // namespace irt
