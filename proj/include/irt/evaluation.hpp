#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "irt/image.hpp"
#include "irt/manifest.hpp"

namespace irt {

// Intersection over union of inclusive pixel boxes.
double box_iou(const Box& a, const Box& b);

struct MatchPair {
    int truth_index = 0;
    int predicted_index = 0;
    double iou = 0.0;
};

struct Matching {
    std::vector<MatchPair> pairs; // one-to-one
    std::vector<int> unmatched_truth;
    std::vector<int> unmatched_predicted;
};

// Greedy one-to-one matching by descending IoU; candidates below the
// threshold never match; ties resolve by (truth index, predicted index).
Matching match_detections(std::span<const Box> predicted, std::span<const Box> truth,
                          double iou_threshold);

// 100 * missed / actual. Rejects actual < 1.
double miss_rate(long missed, long actual);
// 100 * misrecognized / actual. Rejects actual < 1.
double misrecognition_rate(long misrecognized, long actual);

struct EvalBucket {
    long actual = 0;      // ground-truth targets
    long matched = 0;     // truths matched to a prediction
    long missed = 0;      // truths left unmatched
    long wrong_class = 0; // matched pairs with the wrong predicted class
    double miss_rate_pct = 0.0;
    double misrec_rate_pct = 0.0;
};

struct EvalPairRecord {
    std::string image;
    Environment environment = Environment::night;
    int truth_index = 0;
    int predicted_index = 0;
    double iou = 0.0;
    std::string truth_class;
    std::string predicted_class;
};

struct EvalReport {
    EvalBucket overall;
    std::map<Environment, EvalBucket> per_environment;
    std::vector<EvalPairRecord> pairs;
    double iou_threshold = 0.0;
};

// A detection as far as scoring is concerned.
struct ScoredBox {
    std::string image;
    std::string class_id;
    Box bbox;
};

// Count misses and wrong-class matches per environment and overall. Every
// prediction's image id must appear in the manifest. Buckets with zero
// actual targets report both rates as 0.
EvalReport evaluate_dataset(const Manifest& truth, std::span<const ScoredBox> predictions,
                            double iou_threshold);

// Aligned table, environments as columns, rates with 2 decimals.
std::string report_table(const EvalReport& report);
// Machine-readable JSON rendering of the same report.
std::string report_json(const EvalReport& report);

} // namespace irt
