#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "irt/target_detect.hpp"

namespace irt {

struct LabeledSample {
    FeatureVector features;
    std::string label;
};

struct TrainOptions {
    double cost = 1.0;          // soft-margin penalty C
    double tolerance = 1e-6;    // KKT violation tolerance
    int max_iterations = 10000; // sweep cap per binary problem
    std::uint64_t seed = 0;     // scan-order seed
};

struct Hyperplane {
    std::array<double, 6> weights{};
    double bias = 0.0;
};

struct TrainMeta {
    double cost = 1.0;
    double tolerance = 1e-6;
    int max_iterations = 10000;
    std::uint64_t seed = 0;
    int iterations = 0;    // sweeps used by the slowest binary problem
    double residual = 0.0; // largest final KKT violation across problems
    bool converged = false;
};

// Dual objective after each sweep, one series per binary problem. The solver
// ascends this value; any decrease beyond fp noise is a bug.
struct TrainTrace {
    std::vector<std::vector<double>> objective;
};

// One-vs-rest linear maximum-margin classifier over the six target features.
// Scores live in standardized feature space; the stored mean/scale make the
// model self-contained. Immutable once trained.
struct MarginModel {
    std::vector<std::string> classes;    // sorted ascending, size >= 2
    std::vector<Hyperplane> hyperplanes; // one per class, same order
    std::array<double, 6> feature_mean{};
    std::array<double, 6> feature_scale{}; // zero-variance features get 1
    TrainMeta meta;

    std::array<double, 6> standardize(const FeatureVector& f) const;
};

// Sequential-minimal-optimization training of the soft-margin hinge
// objective, deterministic under the seed. With two classes a single
// hyperplane is trained (second class coded +1) and stored mirrored for both.
MarginModel train(const std::vector<LabeledSample>& samples,
                  const TrainOptions& options = {},
                  TrainTrace* trace = nullptr);

// Per-class scores w_k . standardize(x) + bias_k, in model class order.
std::vector<std::pair<std::string, double>> decision(const MarginModel& model,
                                                     const FeatureVector& features);

// Argmax class, ties resolved to the lower class index. For two classes this
// is the sign rule on the single hyperplane, with score zero falling to the
// first (negative-coded) class.
std::string predict(const MarginModel& model, const FeatureVector& features);

// Versioned human-readable text; decimal fields carry full round-trip
// precision, so load(save(m)) reproduces decision values bit-exactly and
// save(load(s)) reproduces s byte-exactly.
std::string serialize_model(const MarginModel& model);
MarginModel parse_model(const std::string& text);
void save_model(const MarginModel& model, const std::filesystem::path& path);
MarginModel load_model(const std::filesystem::path& path);

} // namespace irt
