#include "irt/margin_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "irt/error.hpp"

namespace irt {

namespace {

constexpr int kDim = 6;
constexpr double kStepEps = 1e-12;

double dot(const std::array<double, kDim>& a, const std::array<double, kDim>& b) {
    double s = 0.0;
    for (int t = 0; t < kDim; ++t) s += a[t] * b[t];
    return s;
}

// Platt-style SMO on the dual soft-margin objective, linear kernel, with the
// weight vector maintained explicitly. All scan orders are fixed or drawn
// from the seeded generator, so identical seeds give identical models.
class SmoSolver {
public:
    SmoSolver(const std::vector<std::array<double, kDim>>& x,
              const std::vector<double>& y,
              const TrainOptions& opts,
              std::uint64_t stream)
        : x_(x), y_(y), cost_(opts.cost), tol_(opts.tolerance),
          max_sweeps_(opts.max_iterations), rng_(opts.seed ^ stream),
          alpha_(x.size(), 0.0) {}

    void run(std::vector<double>* objective_trace) {
        const int n = static_cast<int>(x_.size());
        bool examine_all = true;
        int changed = 0;
        sweeps_ = 0;
        while ((changed > 0 || examine_all) && sweeps_ < max_sweeps_) {
            changed = 0;
            for (int i = 0; i < n; ++i) {
                if (examine_all || is_unbound(i)) changed += examine(i);
            }
            if (examine_all)
                examine_all = false;
            else if (changed == 0)
                examine_all = true;
            ++sweeps_;
            if (objective_trace) objective_trace->push_back(dual_objective());
        }
        residual_ = max_kkt_violation();
    }

    const std::array<double, kDim>& weights() const { return w_; }
    double bias() const { return b_; }
    int sweeps() const { return sweeps_; }
    double residual() const { return residual_; }
    bool converged() const { return residual_ <= tol_; }

private:
    double output(int i) const { return dot(w_, x_[i]) + b_; }
    double error(int i) const { return output(i) - y_[i]; }
    bool is_unbound(int i) const { return alpha_[i] > 0.0 && alpha_[i] < cost_; }

    double dual_objective() const {
        double s = 0.0;
        for (double a : alpha_) s += a;
        return s - 0.5 * dot(w_, w_);
    }

    double max_kkt_violation() const {
        double worst = 0.0;
        for (size_t i = 0; i < x_.size(); ++i) {
            const double margin = y_[i] * output(static_cast<int>(i));
            if (alpha_[i] < cost_) worst = std::max(worst, 1.0 - margin);
            if (alpha_[i] > 0.0) worst = std::max(worst, margin - 1.0);
        }
        return worst;
    }

    int examine(int i2) {
        const int n = static_cast<int>(x_.size());
        const double e2 = error(i2);
        const double r2 = e2 * y_[i2];
        if (!((r2 < -tol_ && alpha_[i2] < cost_) || (r2 > tol_ && alpha_[i2] > 0.0)))
            return 0;

        // second-choice heuristic: unbound partner with the largest |E1-E2|
        int best = -1;
        double best_gap = -1.0;
        for (int i = 0; i < n; ++i) {
            if (!is_unbound(i)) continue;
            const double gap = std::fabs(error(i) - e2);
            if (gap > best_gap) { best_gap = gap; best = i; }
        }
        if (best >= 0 && take_step(best, i2)) return 1;

        const int start1 = static_cast<int>(rng_() % n);
        for (int k = 0; k < n; ++k) {
            const int i = (start1 + k) % n;
            if (is_unbound(i) && take_step(i, i2)) return 1;
        }
        const int start2 = static_cast<int>(rng_() % n);
        for (int k = 0; k < n; ++k) {
            const int i = (start2 + k) % n;
            if (take_step(i, i2)) return 1;
        }
        return 0;
    }

    bool take_step(int i1, int i2) {
        if (i1 == i2) return false;
        const double a1 = alpha_[i1], a2 = alpha_[i2];
        const double y1 = y_[i1], y2 = y_[i2];
        const double e1 = error(i1), e2 = error(i2);
        const double s = y1 * y2;

        double lo, hi;
        if (y1 != y2) {
            lo = std::max(0.0, a2 - a1);
            hi = std::min(cost_, cost_ + a2 - a1);
        } else {
            lo = std::max(0.0, a1 + a2 - cost_);
            hi = std::min(cost_, a1 + a2);
        }
        if (lo >= hi) return false;

        const double k11 = dot(x_[i1], x_[i1]);
        const double k12 = dot(x_[i1], x_[i2]);
        const double k22 = dot(x_[i2], x_[i2]);
        const double eta = k11 + k22 - 2.0 * k12;

        double a2_new;
        if (eta > 0.0) {
            a2_new = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
        } else {
            // flat or concave direction: the dual gain along the constraint
            // line is g*(t-a2) - eta/2*(t-a2)^2, maximized at an interval end
            const double g = y2 * (e1 - e2);
            const double gain_lo = g * (lo - a2) - 0.5 * eta * (lo - a2) * (lo - a2);
            const double gain_hi = g * (hi - a2) - 0.5 * eta * (hi - a2) * (hi - a2);
            if (gain_lo > gain_hi + kStepEps)
                a2_new = lo;
            else if (gain_hi > gain_lo + kStepEps)
                a2_new = hi;
            else
                return false;
        }
        if (std::fabs(a2_new - a2) < kStepEps * (a2_new + a2 + kStepEps)) return false;

        double a1_new = a1 + s * (a2 - a2_new);
        if (a1_new < 0.0) {
            a2_new += s * a1_new;
            a1_new = 0.0;
        } else if (a1_new > cost_) {
            a2_new += s * (a1_new - cost_);
            a1_new = cost_;
        }

        const double d1 = y1 * (a1_new - a1);
        const double d2 = y2 * (a2_new - a2);
        const double b1 = b_ - e1 - d1 * k11 - d2 * k12;
        const double b2 = b_ - e2 - d1 * k12 - d2 * k22;
        if (a1_new > 0.0 && a1_new < cost_)
            b_ = b1;
        else if (a2_new > 0.0 && a2_new < cost_)
            b_ = b2;
        else
            b_ = 0.5 * (b1 + b2);

        for (int t = 0; t < kDim; ++t) w_[t] += d1 * x_[i1][t] + d2 * x_[i2][t];
        alpha_[i1] = a1_new;
        alpha_[i2] = a2_new;
        return true;
    }

    const std::vector<std::array<double, kDim>>& x_;
    const std::vector<double>& y_;
    double cost_;
    double tol_;
    int max_sweeps_;
    std::mt19937_64 rng_;
    std::vector<double> alpha_;
    std::array<double, kDim> w_{};
    double b_ = 0.0;
    int sweeps_ = 0;
    double residual_ = 0.0;
};

void format_double(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

} // namespace

std::array<double, kDim> MarginModel::standardize(const FeatureVector& f) const {
    const std::array<double, kDim> raw = f.as_array();
    std::array<double, kDim> out{};
    for (int t = 0; t < kDim; ++t) out[t] = (raw[t] - feature_mean[t]) / feature_scale[t];
    return out;
}

MarginModel train(const std::vector<LabeledSample>& samples,
                  const TrainOptions& options,
                  TrainTrace* trace) {
    require(!samples.empty(), "train: no samples");
    require(options.cost > 0.0, "train: cost must be > 0");
    require(options.tolerance > 0.0, "train: tolerance must be > 0");
    require(options.max_iterations >= 1, "train: max_iterations must be >= 1");

    std::set<std::string> class_set;
    for (const LabeledSample& s : samples) {
        for (double v : s.features.as_array())
            require(std::isfinite(v), "train: non-finite feature value");
        require(!s.label.empty(), "train: empty class label");
        class_set.insert(s.label);
    }
    require(class_set.size() >= 2, "train: need at least 2 classes");

    MarginModel model;
    model.classes.assign(class_set.begin(), class_set.end());
    const int n = static_cast<int>(samples.size());
    const int n_classes = static_cast<int>(model.classes.size());

    // z-score standardization; flat features keep scale 1
    std::array<double, kDim> mean{}, scale{};
    for (const LabeledSample& s : samples) {
        const auto raw = s.features.as_array();
        for (int t = 0; t < kDim; ++t) mean[t] += raw[t];
    }
    for (int t = 0; t < kDim; ++t) mean[t] /= n;
    for (const LabeledSample& s : samples) {
        const auto raw = s.features.as_array();
        for (int t = 0; t < kDim; ++t) {
            const double d = raw[t] - mean[t];
            scale[t] += d * d;
        }
    }
    for (int t = 0; t < kDim; ++t) {
        scale[t] = std::sqrt(scale[t] / n);
        if (scale[t] <= 0.0) scale[t] = 1.0;
    }
    model.feature_mean = mean;
    model.feature_scale = scale;

    std::vector<std::array<double, kDim>> x(n);
    for (int i = 0; i < n; ++i) x[i] = model.standardize(samples[i].features);

    model.meta.cost = options.cost;
    model.meta.tolerance = options.tolerance;
    model.meta.max_iterations = options.max_iterations;
    model.meta.seed = options.seed;
    model.meta.iterations = 0;
    model.meta.residual = 0.0;
    model.meta.converged = true;
    model.hyperplanes.resize(n_classes);

    // Two classes need one hyperplane; more need one-vs-rest per class.
    const int first_problem = (n_classes == 2) ? 1 : 0;
    std::vector<double> y(n);
    for (int k = first_problem; k < n_classes; ++k) {
        for (int i = 0; i < n; ++i)
            y[i] = samples[i].label == model.classes[k] ? 1.0 : -1.0;
        SmoSolver solver(x, y, options, static_cast<std::uint64_t>(k) * 0x9e3779b97f4a7c15ULL);
        std::vector<double>* series = nullptr;
        if (trace) {
            trace->objective.emplace_back();
            series = &trace->objective.back();
        }
        solver.run(series);
        model.hyperplanes[k] = {solver.weights(), solver.bias()};
        model.meta.iterations = std::max(model.meta.iterations, solver.sweeps());
        model.meta.residual = std::max(model.meta.residual, solver.residual());
        model.meta.converged = model.meta.converged && solver.converged();
    }
    if (n_classes == 2) {
        Hyperplane mirrored = model.hyperplanes[1];
        for (double& w : mirrored.weights) w = -w;
        mirrored.bias = -mirrored.bias;
        model.hyperplanes[0] = mirrored;
    }
    return model;
}

std::vector<std::pair<std::string, double>> decision(const MarginModel& model,
                                                     const FeatureVector& features) {
    require(model.classes.size() >= 2 &&
                model.classes.size() == model.hyperplanes.size(),
            "decision: malformed model");
    for (double v : features.as_array())
        require(std::isfinite(v), "decision: non-finite feature value");
    const std::array<double, kDim> z = model.standardize(features);
    std::vector<std::pair<std::string, double>> out;
    out.reserve(model.classes.size());
    for (size_t k = 0; k < model.classes.size(); ++k)
        out.emplace_back(model.classes[k], dot(model.hyperplanes[k].weights, z) +
                                               model.hyperplanes[k].bias);
    return out;
}

std::string predict(const MarginModel& model, const FeatureVector& features) {
    const auto scores = decision(model, features);
    size_t best = 0;
    for (size_t k = 1; k < scores.size(); ++k)
        if (scores[k].second > scores[best].second) best = k;
    return scores[best].first;
}

std::string serialize_model(const MarginModel& model) {
    require(model.classes.size() >= 2 &&
                model.classes.size() == model.hyperplanes.size(),
            "serialize_model: malformed model");
    std::string out = "margin-model 1\n";
    out += "classes " + std::to_string(model.classes.size()) + "\n";
    for (const std::string& c : model.classes) out += "class " + c + "\n";
    out += "mean";
    for (double v : model.feature_mean) { out += ' '; format_double(out, v); }
    out += "\nscale";
    for (double v : model.feature_scale) { out += ' '; format_double(out, v); }
    out += '\n';
    for (size_t k = 0; k < model.classes.size(); ++k) {
        out += "hyperplane " + model.classes[k];
        for (double v : model.hyperplanes[k].weights) { out += ' '; format_double(out, v); }
        out += ' ';
        format_double(out, model.hyperplanes[k].bias);
        out += '\n';
    }
    out += "meta cost ";
    format_double(out, model.meta.cost);
    out += " tolerance ";
    format_double(out, model.meta.tolerance);
    out += " max_iterations " + std::to_string(model.meta.max_iterations);
    out += " seed " + std::to_string(model.meta.seed);
    out += " iterations " + std::to_string(model.meta.iterations);
    out += " residual ";
    format_double(out, model.meta.residual);
    out += " converged ";
    out += model.meta.converged ? '1' : '0';
    out += "\nend\n";
    return out;
}

namespace {

std::string next_line(std::istringstream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw DataError(std::string("model file: missing ") + what);
    return line;
}

} // namespace

MarginModel parse_model(const std::string& text) {
    std::istringstream in(text);
    std::string line = next_line(in, "header");
    if (line != "margin-model 1")
        throw DataError("model file: unsupported header '" + line + "' (want 'margin-model 1')");

    MarginModel model;
    std::istringstream ls(next_line(in, "class count"));
    std::string tag;
    size_t count = 0;
    if (!(ls >> tag >> count) || tag != "classes" || count < 2)
        throw DataError("model file: bad 'classes' line");
    for (size_t k = 0; k < count; ++k) {
        std::istringstream cl(next_line(in, "class name"));
        std::string name;
        if (!(cl >> tag >> name) || tag != "class")
            throw DataError("model file: bad 'class' line");
        model.classes.push_back(name);
    }

    auto read_six = [&](const char* what, std::array<double, kDim>& out) {
        std::istringstream vl(next_line(in, what));
        std::string t;
        if (!(vl >> t) || t != what) throw DataError(std::string("model file: bad '") + what + "' line");
        for (int i = 0; i < kDim; ++i)
            if (!(vl >> out[i])) throw DataError(std::string("model file: bad '") + what + "' line");
    };
    read_six("mean", model.feature_mean);
    read_six("scale", model.feature_scale);
    for (double s : model.feature_scale)
        if (!(s > 0.0)) throw DataError("model file: scale entries must be > 0");

    model.hyperplanes.resize(count);
    for (size_t k = 0; k < count; ++k) {
        std::istringstream hl(next_line(in, "hyperplane"));
        std::string name;
        if (!(hl >> tag >> name) || tag != "hyperplane" || name != model.classes[k])
            throw DataError("model file: bad or out-of-order 'hyperplane' line");
        for (int t = 0; t < kDim; ++t)
            if (!(hl >> model.hyperplanes[k].weights[t]))
                throw DataError("model file: bad 'hyperplane' line");
        if (!(hl >> model.hyperplanes[k].bias))
            throw DataError("model file: bad 'hyperplane' line");
    }

    std::istringstream ml(next_line(in, "meta"));
    int conv = 0;
    std::string k1, k2, k3, k4, k5, k6, k7;
    if (!(ml >> tag >> k1 >> model.meta.cost >> k2 >> model.meta.tolerance >> k3 >>
          model.meta.max_iterations >> k4 >> model.meta.seed >> k5 >>
          model.meta.iterations >> k6 >> model.meta.residual >> k7 >> conv) ||
        tag != "meta" || k1 != "cost" || k2 != "tolerance" || k3 != "max_iterations" ||
        k4 != "seed" || k5 != "iterations" || k6 != "residual" || k7 != "converged")
        throw DataError("model file: bad 'meta' line");
    model.meta.converged = conv != 0;

    if (next_line(in, "end") != "end") throw DataError("model file: missing 'end'");
    return model;
}

void save_model(const MarginModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write model file: " + path.string());
    const std::string text = serialize_model(model);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw DataError("model file write failed: " + path.string());
}

MarginModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read model file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

} // namespace irt
