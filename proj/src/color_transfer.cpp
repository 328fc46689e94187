#include "irt/color_transfer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "irt/colorspace.hpp"

namespace irt {

namespace detail {

void extract_patch_into(const Plane& plane, int cx, int cy, int half_width,
                        std::vector<double>& out) {
    const int side = 2 * half_width + 1;
    out.resize(static_cast<size_t>(side) * side);
    size_t k = 0;
    for (int dy = -half_width; dy <= half_width; ++dy) {
        const int y = std::clamp(cy + dy, 0, plane.height - 1);
        for (int dx = -half_width; dx <= half_width; ++dx) {
            const int x = std::clamp(cx + dx, 0, plane.width - 1);
            out[k++] = plane.at(x, y);
        }
    }
}

void nearest_neighbors_into(std::span<const double> query,
                            const TemplateIndex& index,
                            int count,
                            std::vector<std::pair<double, int>>& scratch,
                            std::vector<NeighborHit>& out) {
    const int n = static_cast<int>(index.size());
    scratch.clear();
    scratch.reserve(n);
    for (int id = 0; id < n; ++id) {
        const std::vector<double>& p = index.patches[id].values;
        double sq = 0.0;
        for (size_t t = 0; t < query.size(); ++t) {
            const double d = query[t] - p[t];
            sq += d * d;
        }
        scratch.emplace_back(sq, id);
    }
    std::partial_sort(scratch.begin(), scratch.begin() + count, scratch.end());
    out.resize(count);
    for (int j = 0; j < count; ++j)
        out[j] = {scratch[j].second, std::sqrt(scratch[j].first)};
}

} // namespace detail

PatchVector extract_patch(const Plane& plane, int cx, int cy, int half_width) {
    require(half_width >= 0, "extract_patch: half_width must be >= 0");
    require(cx >= 0 && cx < plane.width && cy >= 0 && cy < plane.height,
            "extract_patch: center outside image");
    PatchVector p;
    p.center_x = cx;
    p.center_y = cy;
    p.half_width = half_width;
    detail::extract_patch_into(plane, cx, cy, half_width, p.values);
    return p;
}

std::vector<PatchVector> extract_target_patches(const GrayImage& img, int half_width) {
    require(half_width >= 0, "extract_target_patches: half_width must be >= 0");
    const Plane plane = gray_plane(img);
    std::vector<PatchVector> patches;
    patches.reserve(plane.pixel_count());
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            patches.push_back(extract_patch(plane, x, y, half_width));
    return patches;
}

TemplateIndex build_template_index(const RgbImage& tpl, const TransferParams& params) {
    require(params.template_stride >= 1, "build_template_index: stride must be >= 1");
    require(params.half_width >= 0, "build_template_index: half_width must be >= 0");
    const YuvImage yuv = rgb_to_yuv(tpl);

    Plane yplane;
    yplane.width = yuv.width;
    yplane.height = yuv.height;
    yplane.values = yuv.y;

    TemplateIndex index;
    index.half_width = params.half_width;
    for (int y = 0; y < tpl.height; y += params.template_stride) {
        for (int x = 0; x < tpl.width; x += params.template_stride) {
            index.patches.push_back(extract_patch(yplane, x, y, params.half_width));
            const size_t i = static_cast<size_t>(y) * tpl.width + x;
            index.chroma.push_back({yuv.u[i], yuv.v[i]});
        }
    }
    require(!index.patches.empty(), "build_template_index: sampling yielded no patches");
    return index;
}

std::vector<NeighborHit> nearest_neighbors(const PatchVector& query,
                                           const TemplateIndex& index,
                                           int count) {
    require(count >= 1 && count <= static_cast<int>(index.size()),
            "nearest_neighbors: count must be in [1, index size]");
    require(query.half_width == index.half_width,
            "nearest_neighbors: query/index patch widths differ");
    std::vector<std::pair<double, int>> scratch;
    std::vector<NeighborHit> hits;
    detail::nearest_neighbors_into(query.values, index, count, scratch, hits);
    return hits;
}

std::vector<double> reconstruction_weights(std::span<const double> query,
                                           std::span<const std::span<const double>> neighbors,
                                           double regularization) {
    const int k = static_cast<int>(neighbors.size());
    require(k >= 1, "reconstruction_weights: at least one neighbor required");
    require(regularization >= 0.0, "reconstruction_weights: regularization must be >= 0");
    for (const auto& nb : neighbors)
        require(nb.size() == query.size(), "reconstruction_weights: length mismatch");
    if (k == 1) return {1.0};

    // A neighbor identical to the query admits the exact optimum: residual 0
    // with a one-hot weight. The ridge below would smear it.
    for (int j = 0; j < k; ++j) {
        bool same = true;
        for (size_t t = 0; t < query.size() && same; ++t) same = neighbors[j][t] == query[t];
        if (same) {
            std::vector<double> hot(k, 0.0);
            hot[j] = 1.0;
            return hot;
        }
    }

    // Local Gram of the difference vectors, ridge-stabilized; solving
    // G w = 1 and renormalizing yields the sum-to-one constrained minimum.
    const int d = static_cast<int>(query.size());
    Eigen::MatrixXd diff(d, k);
    for (int j = 0; j < k; ++j)
        for (int t = 0; t < d; ++t) diff(t, j) = query[t] - neighbors[j][t];

    Eigen::MatrixXd gram = diff.transpose() * diff;
    gram.diagonal().array() += regularization * gram.trace();

    Eigen::VectorXd w = gram.ldlt().solve(Eigen::VectorXd::Ones(k));
    const double sum = w.sum();
    if (!std::isfinite(sum) || sum == 0.0) return std::vector<double>(k, 1.0 / k);
    w /= sum;
    return std::vector<double>(w.data(), w.data() + k);
}

std::vector<double> reconstruction_weights(const PatchVector& query,
                                           std::span<const PatchVector> neighbors,
                                           double regularization) {
    std::vector<std::span<const double>> views;
    views.reserve(neighbors.size());
    for (const PatchVector& nb : neighbors) views.emplace_back(nb.values);
    return reconstruction_weights(std::span<const double>(query.values),
                                  std::span<const std::span<const double>>(views),
                                  regularization);
}

Uv transfer_chroma(std::span<const double> weights, std::span<const Uv> neighbor_chroma) {
    require(weights.size() == neighbor_chroma.size() && !weights.empty(),
            "transfer_chroma: length mismatch");
    Uv out;
    for (size_t i = 0; i < weights.size(); ++i) {
        out.u += weights[i] * neighbor_chroma[i].u;
        out.v += weights[i] * neighbor_chroma[i].v;
    }
    return out;
}

RgbImage colorize_with_index(const GrayImage& target, const TemplateIndex& index,
                             const TransferParams& params) {
    require(index.size() >= 1, "colorize: empty template index");
    require(params.neighbor_count >= 1 &&
                params.neighbor_count <= static_cast<int>(index.size()),
            "colorize: neighbor_count must be in [1, index size]");
    require(params.half_width == index.half_width,
            "colorize: params.half_width differs from index");

    const Plane tgt = gray_plane(target);
    RgbImage out(target.width, target.height);
    const long long n = static_cast<long long>(tgt.pixel_count());
    const int count = params.neighbor_count;

#pragma omp parallel
    {
        std::vector<std::pair<double, int>> scratch;
        std::vector<NeighborHit> hits;
        std::vector<double> qbuf;
        std::vector<std::span<const double>> views(count);
        std::vector<Uv> chroma(count);

#pragma omp for schedule(static)
        for (long long i = 0; i < n; ++i) {
            const int x = static_cast<int>(i % target.width);
            const int y = static_cast<int>(i / target.width);
            detail::extract_patch_into(tgt, x, y, params.half_width, qbuf);
            detail::nearest_neighbors_into(qbuf, index, count, scratch, hits);
            for (int j = 0; j < count; ++j) {
                views[j] = index.patches[hits[j].id].values;
                chroma[j] = index.chroma[hits[j].id];
            }
            const std::vector<double> weights =
                reconstruction_weights(std::span<const double>(qbuf),
                                       std::span<const std::span<const double>>(views),
                                       params.regularization);
            const Uv c = transfer_chroma(weights, chroma);
            const RgbTriple t = yuv_to_rgb_pixel(tgt.values[i], c.u, c.v);
            std::uint8_t* p = out.pixels.data() + i * 3;
            p[0] = clamp_round_u8(t.r);
            p[1] = clamp_round_u8(t.g);
            p[2] = clamp_round_u8(t.b);
        }
    }
    return out;
}

RgbImage colorize(const GrayImage& target, const RgbImage& tpl, const TransferParams& params) {
    return colorize_with_index(target, build_template_index(tpl, params), params);
}

} // namespace irt
