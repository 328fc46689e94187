#pragma once

#include <span>
#include <utility>
#include <vector>

#include "irt/image.hpp"

namespace irt {

// Flattened gray window of side 2*half_width+1 around a center pixel,
// row-major. Out-of-bounds cells are filled by edge replication.
struct PatchVector {
    int center_x = 0;
    int center_y = 0;
    int half_width = 0;
    std::vector<double> values;
};

struct Uv {
    double u = 0.0;
    double v = 0.0;
};

struct TransferParams {
    int half_width = 2;           // patch window half-width
    int neighbor_count = 10;      // matched template patches per target pixel
    int template_stride = 2;      // grid step when sampling template centers
    double regularization = 1e-6; // ridge on the local Gram, scaled by its trace
};

// Searchable exemplar store: luminance patches sampled from a color template
// plus the chroma of each patch's center pixel. Immutable once built and
// shareable across worker threads.
struct TemplateIndex {
    int half_width = 0;
    std::vector<PatchVector> patches;
    std::vector<Uv> chroma;

    size_t size() const { return patches.size(); }
};

struct NeighborHit {
    int id = 0;            // index into the TemplateIndex
    double distance = 0.0; // Euclidean patch distance
};

// Single patch from a real-valued plane, border cells replicated.
PatchVector extract_patch(const Plane& plane, int cx, int cy, int half_width);

// One patch per pixel of img, row-major order.
std::vector<PatchVector> extract_target_patches(const GrayImage& img, int half_width);

TemplateIndex build_template_index(const RgbImage& tpl, const TransferParams& params);

// The `count` entries closest to the query by Euclidean distance, ascending,
// ties broken by lower entry id.
std::vector<NeighborHit> nearest_neighbors(const PatchVector& query,
                                           const TemplateIndex& index,
                                           int count);

// Contribution degrees: the weights minimizing |query - sum w_i*neighbor_i|^2
// subject to sum(w) = 1. Entries may be negative. A degenerate local Gram
// (all neighbors equal to the query) yields uniform weights.
std::vector<double> reconstruction_weights(std::span<const double> query,
                                           std::span<const std::span<const double>> neighbors,
                                           double regularization);
std::vector<double> reconstruction_weights(const PatchVector& query,
                                           std::span<const PatchVector> neighbors,
                                           double regularization);

// Weight-blended chroma of the matched template patches.
Uv transfer_chroma(std::span<const double> weights, std::span<const Uv> neighbor_chroma);

// Local-linear-mapping colorization of a gray frame against a color template:
// per pixel, patch -> nearest template patches -> contribution degrees ->
// blended chroma, fused with the pixel's own gray level as luminance.
// Deterministic bit-for-bit regardless of thread count.
RgbImage colorize(const GrayImage& target, const RgbImage& tpl, const TransferParams& params);
RgbImage colorize_with_index(const GrayImage& target, const TemplateIndex& index,
                             const TransferParams& params);

namespace detail {

void extract_patch_into(const Plane& plane, int cx, int cy, int half_width,
                        std::vector<double>& out);

// Scratch-buffer search core shared by nearest_neighbors and colorize.
void nearest_neighbors_into(std::span<const double> query,
                            const TemplateIndex& index,
                            int count,
                            std::vector<std::pair<double, int>>& scratch,
                            std::vector<NeighborHit>& out);

} // namespace detail

} // namespace irt
