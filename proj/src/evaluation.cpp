#include "irt/evaluation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "irt/error.hpp"

namespace irt {

double box_iou(const Box& a, const Box& b) {
    const int ix_min = std::max(a.min_x, b.min_x);
    const int iy_min = std::max(a.min_y, b.min_y);
    const int ix_max = std::min(a.max_x, b.max_x);
    const int iy_max = std::min(a.max_y, b.max_y);
    if (ix_max < ix_min || iy_max < iy_min) return 0.0;
    const double inter = static_cast<double>(ix_max - ix_min + 1) * (iy_max - iy_min + 1);
    const double uni = static_cast<double>(a.area()) + static_cast<double>(b.area()) - inter;
    return inter / uni;
}

Matching match_detections(std::span<const Box> predicted, std::span<const Box> truth,
                          double iou_threshold) {
    require(iou_threshold > 0.0 && iou_threshold <= 1.0,
            "match_detections: iou_threshold must be in (0, 1]");

    struct Candidate {
        double iou;
        int truth;
        int pred;
    };
    std::vector<Candidate> candidates;
    for (int t = 0; t < static_cast<int>(truth.size()); ++t) {
        for (int p = 0; p < static_cast<int>(predicted.size()); ++p) {
            const double iou = box_iou(truth[t], predicted[p]);
            if (iou >= iou_threshold) candidates.push_back({iou, t, p});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        if (a.truth != b.truth) return a.truth < b.truth;
        return a.pred < b.pred;
    });

    Matching m;
    std::vector<bool> truth_used(truth.size(), false);
    std::vector<bool> pred_used(predicted.size(), false);
    for (const Candidate& c : candidates) {
        if (truth_used[c.truth] || pred_used[c.pred]) continue;
        truth_used[c.truth] = true;
        pred_used[c.pred] = true;
        m.pairs.push_back({c.truth, c.pred, c.iou});
    }
    for (int t = 0; t < static_cast<int>(truth.size()); ++t)
        if (!truth_used[t]) m.unmatched_truth.push_back(t);
    for (int p = 0; p < static_cast<int>(predicted.size()); ++p)
        if (!pred_used[p]) m.unmatched_predicted.push_back(p);
    return m;
}

double miss_rate(long missed, long actual) {
    require(actual >= 1, "miss_rate: actual target count must be >= 1");
    require(missed >= 0 && missed <= actual, "miss_rate: missed count out of range");
    return 100.0 * static_cast<double>(missed) / static_cast<double>(actual);
}

double misrecognition_rate(long misrecognized, long actual) {
    require(actual >= 1, "misrecognition_rate: actual target count must be >= 1");
    require(misrecognized >= 0 && misrecognized <= actual,
            "misrecognition_rate: misrecognized count out of range");
    return 100.0 * static_cast<double>(misrecognized) / static_cast<double>(actual);
}

namespace {

void finalize(EvalBucket& b) {
    b.miss_rate_pct = b.actual == 0 ? 0.0 : miss_rate(b.missed, b.actual);
    b.misrec_rate_pct = b.actual == 0 ? 0.0 : misrecognition_rate(b.wrong_class, b.actual);
}

} // namespace

EvalReport evaluate_dataset(const Manifest& truth, std::span<const ScoredBox> predictions,
                            double iou_threshold) {
    std::map<std::string, const ManifestEntry*> by_image;
    for (const ManifestEntry& e : truth.entries) by_image[e.image] = &e;

    std::map<std::string, std::vector<const ScoredBox*>> preds_by_image;
    for (const ScoredBox& p : predictions) {
        if (!by_image.contains(p.image))
            throw DataError("evaluate: prediction references unknown image id '" + p.image + "'");
        preds_by_image[p.image].push_back(&p);
    }

    EvalReport report;
    report.iou_threshold = iou_threshold;
    for (Environment e : kEnvironments) report.per_environment[e]; // stable column set

    for (const ManifestEntry& entry : truth.entries) {
        EvalBucket& env_bucket = report.per_environment[entry.environment];
        const auto it = preds_by_image.find(entry.image);
        static const std::vector<const ScoredBox*> kNone;
        const std::vector<const ScoredBox*>& preds = it == preds_by_image.end() ? kNone : it->second;

        std::vector<Box> truth_boxes;
        truth_boxes.reserve(entry.targets.size());
        for (const TruthTarget& t : entry.targets) truth_boxes.push_back(t.bbox);
        std::vector<Box> pred_boxes;
        pred_boxes.reserve(preds.size());
        for (const ScoredBox* p : preds) pred_boxes.push_back(p->bbox);

        const Matching m = match_detections(pred_boxes, truth_boxes, iou_threshold);

        env_bucket.actual += static_cast<long>(entry.targets.size());
        env_bucket.matched += static_cast<long>(m.pairs.size());
        env_bucket.missed += static_cast<long>(m.unmatched_truth.size());
        for (const MatchPair& pair : m.pairs) {
            const std::string& want = entry.targets[pair.truth_index].class_id;
            const std::string& got = preds[pair.predicted_index]->class_id;
            if (want != got) env_bucket.wrong_class += 1;
            report.pairs.push_back({entry.image, entry.environment, pair.truth_index,
                                    pair.predicted_index, pair.iou, want, got});
        }
    }

    for (auto& [env, bucket] : report.per_environment) {
        report.overall.actual += bucket.actual;
        report.overall.matched += bucket.matched;
        report.overall.missed += bucket.missed;
        report.overall.wrong_class += bucket.wrong_class;
        finalize(bucket);
    }
    finalize(report.overall);
    return report;
}

std::string report_table(const EvalReport& report) {
    std::ostringstream out;
    char buf[64];
    out << "metric                ";
    for (Environment e : kEnvironments) {
        std::snprintf(buf, sizeof(buf), " %9s", to_string(e).c_str());
        out << buf;
    }
    out << "    overall\n";

    const auto row_counts = [&](const char* name, long EvalBucket::* field) {
        std::snprintf(buf, sizeof(buf), "%-22s", name);
        out << buf;
        for (Environment e : kEnvironments) {
            std::snprintf(buf, sizeof(buf), " %9ld", report.per_environment.at(e).*field);
            out << buf;
        }
        std::snprintf(buf, sizeof(buf), " %10ld\n", report.overall.*field);
        out << buf;
    };
    const auto row_rate = [&](const char* name, double EvalBucket::* field) {
        std::snprintf(buf, sizeof(buf), "%-22s", name);
        out << buf;
        for (Environment e : kEnvironments) {
            std::snprintf(buf, sizeof(buf), " %9.2f", report.per_environment.at(e).*field);
            out << buf;
        }
        std::snprintf(buf, sizeof(buf), " %10.2f\n", report.overall.*field);
        out << buf;
    };
    row_counts("actual targets", &EvalBucket::actual);
    row_counts("missed", &EvalBucket::missed);
    row_counts("misrecognized", &EvalBucket::wrong_class);
    row_rate("miss rate (%)", &EvalBucket::miss_rate_pct);
    row_rate("misrecognition (%)", &EvalBucket::misrec_rate_pct);
    return out.str();
}

std::string report_json(const EvalReport& report) {
    using ordered_json = nlohmann::ordered_json;
    const auto bucket_json = [](const EvalBucket& b) {
        ordered_json j;
        j["actual"] = b.actual;
        j["matched"] = b.matched;
        j["missed"] = b.missed;
        j["misrecognized"] = b.wrong_class;
        j["miss_rate_pct"] = b.miss_rate_pct;
        j["misrecognition_rate_pct"] = b.misrec_rate_pct;
        return j;
    };
    ordered_json j;
    j["iou_threshold"] = report.iou_threshold;
    j["overall"] = bucket_json(report.overall);
    ordered_json envs;
    for (Environment e : kEnvironments)
        envs[to_string(e)] = bucket_json(report.per_environment.at(e));
    j["environments"] = std::move(envs);
    ordered_json pairs = ordered_json::array();
    for (const EvalPairRecord& p : report.pairs) {
        ordered_json pj;
        pj["image"] = p.image;
        pj["environment"] = to_string(p.environment);
        pj["truth_index"] = p.truth_index;
        pj["predicted_index"] = p.predicted_index;
        pj["iou"] = p.iou;
        pj["truth_class"] = p.truth_class;
        pj["predicted_class"] = p.predicted_class;
        pairs.push_back(std::move(pj));
    }
    j["matches"] = std::move(pairs);
    return j.dump(2) + "\n";
}

} // namespace irt
