#include "irt/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "irt/error.hpp"

namespace irt {

namespace {

long parse_int(const std::string& key, const std::string& value, long lo, long hi) {
    long v = 0;
    const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || p != value.data() + value.size())
        throw DataError("config: key '" + key + "': not an integer: '" + value + "'");
    if (v < lo || v > hi)
        throw DataError("config: key '" + key + "': value " + value + " outside [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

double parse_real(const std::string& key, const std::string& value, double lo, double hi) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing junk");
        if (!(v >= lo && v <= hi))
            throw DataError("config: key '" + key + "': value " + value + " outside range");
        return v;
    } catch (const DataError&) {
        throw;
    } catch (const std::exception&) {
        throw DataError("config: key '" + key + "': not a number: '" + value + "'");
    }
}

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

PipelineConfig parse_config(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError("config line " + std::to_string(line_no) +
                            ": expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "transfer.half_width") {
            cfg.transfer.half_width = static_cast<int>(parse_int(key, value, 0, 64));
        } else if (key == "transfer.neighbors") {
            cfg.transfer.neighbor_count = static_cast<int>(parse_int(key, value, 1, 1 << 20));
        } else if (key == "transfer.stride") {
            cfg.transfer.template_stride = static_cast<int>(parse_int(key, value, 1, 1 << 16));
        } else if (key == "transfer.regularization") {
            cfg.transfer.regularization = parse_real(key, value, 0.0, 1e6);
        } else if (key == "palette") {
            Palette::parse(value); // validate now, fail with the key context
            cfg.palette_spec = value;
        } else if (key == "segment.mode") {
            if (value == "auto")
                cfg.threshold_mode = ThresholdMode::automatic;
            else if (value == "fixed")
                cfg.threshold_mode = ThresholdMode::fixed;
            else
                throw DataError("config: key 'segment.mode': must be 'auto' or 'fixed', got '" +
                                value + "'");
        } else if (key == "segment.threshold") {
            cfg.fixed_threshold = parse_real(key, value, 0.0, 255.0);
        } else if (key == "classifier.cost") {
            cfg.classifier.cost = parse_real(key, value, 1e-12, 1e12);
        } else if (key == "classifier.tolerance") {
            cfg.classifier.tolerance = parse_real(key, value, 1e-15, 1.0);
        } else if (key == "classifier.max_iterations") {
            cfg.classifier.max_iterations = static_cast<int>(parse_int(key, value, 1, 1 << 30));
        } else if (key == "classifier.seed") {
            cfg.classifier.seed = static_cast<std::uint64_t>(
                parse_int(key, value, 0, std::numeric_limits<long>::max()));
        } else if (key == "eval.iou") {
            cfg.iou_threshold = parse_real(key, value, 1e-9, 1.0);
        } else if (key == "scale.meters_per_pixel") {
            cfg.meters_per_pixel = parse_real(key, value, 1e-12, 1e12);
        } else {
            throw DataError("config line " + std::to_string(line_no) + ": unknown key '" +
                            key + "'");
        }
    }
    return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open config: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string write_config(const PipelineConfig& cfg) {
    char buf[512];
    std::string out;
    const auto add = [&](const char* fmt, auto... args) {
        std::snprintf(buf, sizeof(buf), fmt, args...);
        out += buf;
    };
    add("transfer.half_width=%d\n", cfg.transfer.half_width);
    add("transfer.neighbors=%d\n", cfg.transfer.neighbor_count);
    add("transfer.stride=%d\n", cfg.transfer.template_stride);
    add("transfer.regularization=%.17g\n", cfg.transfer.regularization);
    add("palette=%s\n", cfg.palette_spec.c_str());
    add("segment.mode=%s\n", cfg.threshold_mode == ThresholdMode::automatic ? "auto" : "fixed");
    add("segment.threshold=%.17g\n", cfg.fixed_threshold);
    add("classifier.cost=%.17g\n", cfg.classifier.cost);
    add("classifier.tolerance=%.17g\n", cfg.classifier.tolerance);
    add("classifier.max_iterations=%d\n", cfg.classifier.max_iterations);
    add("classifier.seed=%llu\n", static_cast<unsigned long long>(cfg.classifier.seed));
    add("eval.iou=%.17g\n", cfg.iou_threshold);
    add("scale.meters_per_pixel=%.17g\n", cfg.meters_per_pixel);
    return out;
}

} // namespace irt
