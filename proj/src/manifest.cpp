#include "irt/manifest.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "irt/error.hpp"
#include "irt/netpbm.hpp"

namespace irt {

using ordered_json = nlohmann::ordered_json;

std::string to_string(Environment e) {
    switch (e) {
        case Environment::night: return "night";
        case Environment::snowy: return "snowy";
        case Environment::shelter: return "shelter";
        case Environment::rainy: return "rainy";
    }
    throw ContractError("to_string: bad environment value");
}

Environment parse_environment(const std::string& s) {
    for (Environment e : kEnvironments)
        if (s == to_string(e)) return e;
    throw DataError("unknown environment '" + s + "' (must be one of: night, snowy, shelter, rainy)");
}

std::string to_string(Split s) {
    return s == Split::training ? "training" : "test";
}

Split parse_split(const std::string& s) {
    if (s == "training") return Split::training;
    if (s == "test") return Split::test;
    throw DataError("unknown split '" + s + "' (must be one of: training, test)");
}

namespace {

Box parse_bbox(const ordered_json& j) {
    if (!j.is_array() || j.size() != 4 || !j[0].is_number_integer() ||
        !j[1].is_number_integer() || !j[2].is_number_integer() || !j[3].is_number_integer())
        throw DataError("bbox must be [min_x, min_y, max_x, max_y] integers");
    Box b{j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
    if (b.min_x < 0 || b.min_y < 0 || b.max_x < b.min_x || b.max_y < b.min_y)
        throw DataError("bbox coordinates out of order or negative");
    return b;
}

ManifestEntry parse_entry(const ordered_json& j) {
    if (!j.is_object()) throw DataError("record must be a JSON object");
    static const std::set<std::string> known = {"image", "template", "environment",
                                                "split", "targets"};
    for (const auto& item : j.items())
        if (!known.contains(item.key()))
            throw DataError("unknown field '" + item.key() + "'");

    ManifestEntry e;
    if (!j.contains("image") || !j["image"].is_string())
        throw DataError("missing or non-string 'image'");
    e.image = j["image"].get<std::string>();
    if (e.image.empty()) throw DataError("'image' must be non-empty");

    if (j.contains("template")) {
        if (!j["template"].is_string()) throw DataError("non-string 'template'");
        e.template_path = j["template"].get<std::string>();
    }
    if (!j.contains("environment") || !j["environment"].is_string())
        throw DataError("missing or non-string 'environment'");
    e.environment = parse_environment(j["environment"].get<std::string>());
    if (!j.contains("split") || !j["split"].is_string())
        throw DataError("missing or non-string 'split'");
    e.split = parse_split(j["split"].get<std::string>());

    if (j.contains("targets")) {
        if (!j["targets"].is_array()) throw DataError("'targets' must be an array");
        for (const auto& t : j["targets"]) {
            if (!t.is_object() || !t.contains("class") || !t["class"].is_string() ||
                !t.contains("bbox"))
                throw DataError("target must be {\"class\": ..., \"bbox\": [...]}");
            TruthTarget tt;
            tt.class_id = t["class"].get<std::string>();
            if (tt.class_id.empty() ||
                tt.class_id.find_first_of(" \t\n") != std::string::npos)
                throw DataError("target class must be a non-empty token without whitespace");
            tt.bbox = parse_bbox(t["bbox"]);
            e.targets.push_back(std::move(tt));
        }
    }
    return e;
}

void check_entry_paths(const ManifestEntry& e, const std::filesystem::path& base_dir,
                       int line_no) {
    const auto resolve = [&](const std::string& p) {
        const std::filesystem::path fp(p);
        return fp.is_absolute() ? fp : base_dir / fp;
    };
    const std::filesystem::path img = resolve(e.image);
    if (!std::filesystem::exists(img))
        throw DataError("manifest line " + std::to_string(line_no) + ": missing file " +
                        img.string());
    const PnmHeader h = read_pnm_header(img);
    for (const TruthTarget& t : e.targets)
        if (t.bbox.max_x >= h.width || t.bbox.max_y >= h.height)
            throw DataError("manifest line " + std::to_string(line_no) +
                            ": bbox exceeds image bounds of " + img.string());
    if (e.template_path) {
        const std::filesystem::path tp = resolve(*e.template_path);
        if (!std::filesystem::exists(tp))
            throw DataError("manifest line " + std::to_string(line_no) + ": missing file " +
                            tp.string());
    }
}

} // namespace

Manifest parse_manifest_text(const std::string& text,
                             const std::filesystem::path& base_dir,
                             bool check_paths) {
    Manifest m;
    std::istringstream in(text);
    std::string line;
    std::set<std::string> seen;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const nlohmann::json::exception& ex) {
            throw DataError("manifest line " + std::to_string(line_no) + ": " + ex.what());
        }
        ManifestEntry e;
        try {
            e = parse_entry(j);
        } catch (const DataError& ex) {
            throw DataError("manifest line " + std::to_string(line_no) + ": " + ex.what());
        }
        if (!seen.insert(e.image).second)
            throw DataError("manifest line " + std::to_string(line_no) +
                            ": duplicate image id '" + e.image + "'");
        if (check_paths) check_entry_paths(e, base_dir, line_no);
        m.entries.push_back(std::move(e));
    }
    return m;
}

Manifest parse_manifest(const std::filesystem::path& path, bool check_paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open manifest: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest_text(buf.str(), path.parent_path(), check_paths);
}

std::string write_manifest(const Manifest& m) {
    std::string out;
    for (const ManifestEntry& e : m.entries) {
        ordered_json j;
        j["image"] = e.image;
        if (e.template_path) j["template"] = *e.template_path;
        j["environment"] = to_string(e.environment);
        j["split"] = to_string(e.split);
        ordered_json targets = ordered_json::array();
        for (const TruthTarget& t : e.targets) {
            ordered_json tj;
            tj["class"] = t.class_id;
            tj["bbox"] = {t.bbox.min_x, t.bbox.min_y, t.bbox.max_x, t.bbox.max_y};
            targets.push_back(std::move(tj));
        }
        j["targets"] = std::move(targets);
        out += j.dump();
        out += '\n';
    }
    return out;
}

void write_manifest(const Manifest& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write manifest: " + path.string());
    const std::string text = write_manifest(m);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw DataError("manifest write failed: " + path.string());
}

std::string manifest_summary(const Manifest& m) {
    // class -> environment -> {training, test} image counts
    std::map<std::string, std::map<Environment, std::array<int, 2>>> counts;
    std::map<Environment, std::array<int, 2>> totals;
    for (const ManifestEntry& e : m.entries) {
        const int s = e.split == Split::training ? 0 : 1;
        std::set<std::string> classes_in_image;
        for (const TruthTarget& t : e.targets) classes_in_image.insert(t.class_id);
        for (const std::string& c : classes_in_image) counts[c][e.environment][s] += 1;
        totals[e.environment][s] += 1;
    }

    std::ostringstream out;
    out << "sample type          ";
    for (Environment e : kEnvironments) {
        char cell[32];
        std::snprintf(cell, sizeof(cell), " %8s-trn %8s-tst", to_string(e).c_str(),
                      to_string(e).c_str());
        out << cell;
    }
    out << '\n';
    const auto row = [&](const std::string& name,
                         const std::map<Environment, std::array<int, 2>>& by_env) {
        char head[32];
        std::snprintf(head, sizeof(head), "%-21s", name.c_str());
        out << head;
        for (Environment e : kEnvironments) {
            const auto it = by_env.find(e);
            const int trn = it == by_env.end() ? 0 : it->second[0];
            const int tst = it == by_env.end() ? 0 : it->second[1];
            char cell[32];
            std::snprintf(cell, sizeof(cell), " %12d %12d", trn, tst);
            out << cell;
        }
        out << '\n';
    };
    for (const auto& [name, by_env] : counts) row(name, by_env);
    row("total", totals);
    return out.str();
}

} // namespace irt
