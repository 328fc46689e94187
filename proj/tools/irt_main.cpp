#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "irt/colorspace.hpp"
#include "irt/config.hpp"
#include "irt/error.hpp"
#include "irt/evaluation.hpp"
#include "irt/manifest.hpp"
#include "irt/netpbm.hpp"
#include "irt/pipeline.hpp"
#include "irt/pseudocolor.hpp"
#include "irt/synthetic.hpp"

namespace {

namespace fs = std::filesystem;

struct GlobalOpts {
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_set = false;

    irt::PipelineConfig config() const {
        irt::PipelineConfig cfg;
        if (!config_path.empty()) cfg = irt::load_config(config_path);
        if (seed_set) cfg.classifier.seed = seed;
        return cfg;
    }
};

void cmd_synth(const GlobalOpts& g, const std::string& spec_path, const std::string& out_dir) {
    irt::SyntheticSceneSpec spec = irt::load_scene_spec(spec_path);
    if (g.seed_set) spec.seed = g.seed;
    const irt::Manifest manifest = irt::generate_synthetic(spec, out_dir);
    std::cout << "wrote " << manifest.entries.size() << " frames under " << out_dir << "\n\n"
              << irt::manifest_summary(manifest);
}

void cmd_colorize(const GlobalOpts& g, const std::string& target_path,
                  const std::string& template_path, const std::string& out_path) {
    const irt::PipelineConfig cfg = g.config();
    const irt::GrayImage target = irt::read_pgm(target_path);
    const irt::RgbImage tpl = irt::read_ppm(template_path);
    irt::write_ppm(irt::colorize(target, tpl, cfg.transfer), out_path);
    std::cout << "wrote " << out_path << "\n";
}

void cmd_encode(const GlobalOpts& g, const std::string& in_path, const std::string& out_path) {
    const irt::PipelineConfig cfg = g.config();
    const irt::RgbImage img = irt::read_ppm(in_path);
    const irt::Plane luma = irt::luminance_plane(img);
    const irt::CodingRange range = irt::coding_range(luma);
    irt::write_ppm(irt::pseudo_color_encode(img, luma, range, cfg.palette()), out_path);
    std::cout << "wrote " << out_path << " (band [" << range.threshold << ", "
              << range.max_value << "])\n";
}

void cmd_detect(const GlobalOpts& g, const std::string& in_path, const std::string& out_path,
                std::string image_id) {
    const irt::PipelineConfig cfg = g.config();
    if (image_id.empty()) image_id = in_path;
    const irt::PnmHeader header = irt::read_pnm_header(in_path);
    const irt::Plane luma = header.magic == "P5"
                                ? irt::gray_plane(irt::read_pgm(in_path))
                                : irt::luminance_plane(irt::read_ppm(in_path));
    std::vector<irt::RegionRecord> records;
    for (const irt::DetectedRegion& r : irt::detect_regions(luma, cfg))
        records.push_back({image_id, r.bbox, r.features});
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw irt::DataError("cannot write regions file: " + out_path);
    out << irt::write_regions(records);
    std::cout << records.size() << " region(s) -> " << out_path << "\n";
}

void cmd_train(const GlobalOpts& g, const std::string& manifest_path,
               const std::string& out_path) {
    const irt::PipelineConfig cfg = g.config();
    const irt::Manifest manifest = irt::parse_manifest(manifest_path);
    const irt::MarginModel model =
        irt::train_from_manifest(manifest, fs::path(manifest_path).parent_path(), cfg);
    irt::save_model(model, out_path);
    std::cout << "trained " << model.classes.size() << "-class model ("
              << (model.meta.converged ? "converged" : "iteration cap") << ", sweeps "
              << model.meta.iterations << ", residual " << model.meta.residual << ") -> "
              << out_path << "\n";
}

void cmd_predict(const GlobalOpts& g, const std::string& model_path,
                 const std::string& regions_path, const std::string& out_path) {
    (void)g;
    const irt::MarginModel model = irt::load_model(model_path);
    std::ifstream in(regions_path, std::ios::binary);
    if (!in) throw irt::DataError("cannot open regions file: " + regions_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::vector<irt::Detection> detections;
    for (const irt::RegionRecord& r : irt::parse_regions(buf.str())) {
        irt::Detection d;
        d.image = r.image;
        d.bbox = r.bbox;
        d.scores = irt::decision(model, r.features);
        d.class_id = irt::predict(model, r.features);
        detections.push_back(std::move(d));
    }
    irt::write_detections(detections, out_path);
    std::cout << detections.size() << " detection(s) -> " << out_path << "\n";
}

void cmd_recognize(const GlobalOpts& g, const std::string& target_path,
                   const std::string& template_path, const std::string& manifest_path,
                   const std::string& model_path, const std::string& out_dir,
                   const std::string& split_name) {
    const irt::PipelineConfig cfg = g.config();
    const irt::MarginModel model = irt::load_model(model_path);

    if (!manifest_path.empty()) {
        const irt::Manifest manifest = irt::parse_manifest(manifest_path);
        const irt::Split split = irt::parse_split(split_name);
        const auto detections =
            irt::recognize_manifest(manifest, split, fs::path(manifest_path).parent_path(),
                                    model, cfg, out_dir);
        std::cout << detections.size() << " detection(s) -> " << out_dir << "\n";
        return;
    }
    if (target_path.empty() || template_path.empty())
        throw irt::DataError("recognize: need either --manifest or both --target and --template");

    const irt::GrayImage target = irt::read_pgm(target_path);
    const irt::RgbImage tpl = irt::read_ppm(template_path);
    const irt::TemplateIndex index = irt::build_template_index(tpl, cfg.transfer);
    const irt::RecognizedFrame rec =
        irt::recognize_frame(target, index, model, cfg, target_path);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw irt::DataError("cannot create output directory: " + out_dir);
    irt::write_detections(rec.detections, fs::path(out_dir) / "detections.jsonl");
    irt::write_ppm(rec.colorized, fs::path(out_dir) / "colorized.ppm");
    irt::write_ppm(rec.encoded, fs::path(out_dir) / "encoded.ppm");
    irt::write_ppm(rec.annotated, fs::path(out_dir) / "annotated.ppm");
    std::cout << rec.detections.size() << " detection(s) -> " << out_dir << "\n";
}

void cmd_evaluate(const GlobalOpts& g, const std::string& manifest_path,
                  const std::string& detections_path, const std::string& out_path,
                  const std::string& split_name) {
    const irt::PipelineConfig cfg = g.config();
    const irt::Manifest full = irt::parse_manifest(manifest_path);
    const irt::Split split = irt::parse_split(split_name);
    irt::Manifest manifest;
    for (const irt::ManifestEntry& e : full.entries)
        if (e.split == split) manifest.entries.push_back(e);

    std::vector<irt::ScoredBox> boxes;
    for (const irt::Detection& d : irt::load_detections(detections_path))
        boxes.push_back({d.image, d.class_id, d.bbox});

    const irt::EvalReport report = irt::evaluate_dataset(manifest, boxes, cfg.iou_threshold);
    std::cout << irt::report_table(report);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw irt::DataError("cannot write report: " + out_path);
        out << irt::report_json(report);
        std::cout << "report -> " << out_path << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"infrared surveillance image colorization and target recognition"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--config", g.config_path, "pipeline config file (key=value lines)");
    auto* seed_opt = app.add_option("--seed", g.seed, "override the configured seed");

    std::string spec_path, out_path, target_path, template_path, manifest_path, model_path,
        regions_path, detections_path, image_id;
    std::string split_name = "test";

    auto* synth = app.add_subcommand("synth", "generate a synthetic benchmark corpus");
    synth->add_option("--spec", spec_path, "scene spec (JSON)")->required();
    synth->add_option("--output", out_path, "output directory")->required();

    auto* colorize = app.add_subcommand("colorize", "colorize a gray frame against a template");
    colorize->add_option("--target", target_path, "gray frame (PGM)")->required();
    colorize->add_option("--template", template_path, "color template (PPM)")->required();
    colorize->add_option("--output", out_path, "output image (PPM)")->required();

    auto* encode = app.add_subcommand("encode", "pseudo-color highlight the hot band");
    encode->add_option("--input", target_path, "color image (PPM)")->required();
    encode->add_option("--output", out_path, "output image (PPM)")->required();

    auto* detect = app.add_subcommand("detect", "segment targets and extract features");
    detect->add_option("--input", target_path, "image (PGM or PPM)")->required();
    detect->add_option("--output", out_path, "regions file (JSON lines)")->required();
    detect->add_option("--image-id", image_id, "id recorded in the regions file");

    auto* train = app.add_subcommand("train", "train the classifier from a manifest");
    train->add_option("--manifest", manifest_path, "dataset manifest (JSON lines)")->required();
    train->add_option("--output", out_path, "model file")->required();

    auto* predict = app.add_subcommand("predict", "classify regions with a trained model");
    predict->add_option("--model", model_path, "model file")->required();
    predict->add_option("--regions", regions_path, "regions file from `detect`")->required();
    predict->add_option("--output", out_path, "detections file")->required();

    auto* recognize = app.add_subcommand("recognize", "full pipeline on a frame or manifest");
    recognize->add_option("--target", target_path, "gray frame (PGM)");
    recognize->add_option("--template", template_path, "color template (PPM)");
    recognize->add_option("--manifest", manifest_path, "dataset manifest (batch mode)");
    recognize->add_option("--split", split_name, "manifest split to run (default: test)");
    recognize->add_option("--model", model_path, "model file")->required();
    recognize->add_option("--output", out_path, "output directory")->required();

    auto* evaluate = app.add_subcommand("evaluate", "score detections against ground truth");
    evaluate->add_option("--manifest", manifest_path, "dataset manifest")->required();
    evaluate->add_option("--detections", detections_path, "detections file")->required();
    evaluate->add_option("--split", split_name, "manifest split to score (default: test)");
    evaluate->add_option("--output", out_path, "also write a JSON report here");

    try {
        app.parse(argc, argv);
        g.seed_set = seed_opt->count() > 0;
        if (synth->parsed()) cmd_synth(g, spec_path, out_path);
        else if (colorize->parsed()) cmd_colorize(g, target_path, template_path, out_path);
        else if (encode->parsed()) cmd_encode(g, target_path, out_path);
        else if (detect->parsed()) cmd_detect(g, target_path, out_path, image_id);
        else if (train->parsed()) cmd_train(g, manifest_path, out_path);
        else if (predict->parsed()) cmd_predict(g, model_path, regions_path, out_path);
        else if (recognize->parsed())
            cmd_recognize(g, target_path, template_path, manifest_path, model_path, out_path,
                          split_name);
        else if (evaluate->parsed())
            cmd_evaluate(g, manifest_path, detections_path, out_path, split_name);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const irt::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const irt::ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
