#pragma once

#include "irt/color_transfer.hpp"
#include "irt/image.hpp"
#include "irt/pseudocolor.hpp"
#include "irt/target_detect.hpp"

// Plain single-threaded implementations of every OpenMP kernel. They are the
// reference the parallel versions are checked against (bit-for-bit) and the
// baseline the benchmark tool times. Keep them boring.
namespace irt::serial {

YuvImage rgb_to_yuv(const RgbImage& img);
RgbImage yuv_to_rgb(const YuvImage& img);
Plane luminance_plane(const RgbImage& img);
CodingRange coding_range(const Plane& luma);
RgbImage pseudo_color_encode(const RgbImage& img, const Plane& luma,
                             const CodingRange& range, const Palette& palette);
BinaryImage threshold_segment(const Plane& luma, double threshold);
BinaryImage erode3x3(const BinaryImage& mask);
BinaryImage dilate3x3(const BinaryImage& mask);
BinaryImage morphological_filter(const BinaryImage& mask);
RgbImage colorize_with_index(const GrayImage& target, const TemplateIndex& index,
                             const TransferParams& params);

} // namespace irt::serial
