#include "gazesa/scene_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "gazesa/csv.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace gazesa {

std::string to_string(ObjectKind k) {
    return k == ObjectKind::pedestrian ? "pedestrian" : "vehicle";
}
std::string to_string(Contrast c) {
    switch (c) {
        case Contrast::low: return "low";
        case Contrast::medium: return "medium";
        default: return "high";
    }
}
std::string to_string(Movement m) {
    switch (m) {
        case Movement::static_: return "static";
        case Movement::slow: return "slow";
        case Movement::medium: return "medium";
        default: return "high";
    }
}

ObjectKind object_kind_from_string(const std::string& s) {
    if (s == "pedestrian") return ObjectKind::pedestrian;
    if (s == "vehicle") return ObjectKind::vehicle;
    throw DataError("properties.kind: unknown value '" + s + "'");
}
Contrast contrast_from_string(const std::string& s) {
    if (s == "low") return Contrast::low;
    if (s == "medium") return Contrast::medium;
    if (s == "high") return Contrast::high;
    throw DataError("properties.contrast: unknown value '" + s + "'");
}
Movement movement_from_string(const std::string& s) {
    if (s == "static") return Movement::static_;
    if (s == "slow") return Movement::slow;
    if (s == "medium") return Movement::medium;
    if (s == "high") return Movement::high;
    throw DataError("properties.movement: unknown value '" + s + "'");
}

const ObjectTrack* SceneRecord::find_object(const Id& id) const {
    for (const auto& o : objects)
        if (o.object_id == id) return &o;
    return nullptr;
}

const SceneRecord* Dataset::find_scene(const Id& scene_id) const {
    for (const auto& s : scenes)
        if (s.scene_id == scene_id) return &s;
    return nullptr;
}

const GazeTrack* Dataset::find_gaze(const Id& participant_id, const Id& scene_id) const {
    for (const auto& g : gaze)
        if (g.participant_id == participant_id && g.scene_id == scene_id) return &g;
    return nullptr;
}

Vec2 px_to_deg(Vec2 p, double pixels_per_degree) {
    if (!(pixels_per_degree > 0.0))
        throw ConfigError("pixels_per_degree must be positive");
    return {p.x / pixels_per_degree, p.y / pixels_per_degree};
}

Vec2 deg_to_px(Vec2 p, double pixels_per_degree) {
    if (!(pixels_per_degree > 0.0))
        throw ConfigError("pixels_per_degree must be positive");
    return {p.x * pixels_per_degree, p.y * pixels_per_degree};
}

std::pair<double, double> window_of(const SceneRecord& scene) {
    return {scene.pause_time - scene.window_len, scene.pause_time};
}

namespace {

const ordered_json& require(const ordered_json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw DataError(where + ": missing field '" + key + "'");
    return *it;
}

double require_num(const ordered_json& j, const char* key, const std::string& where) {
    const auto& v = require(j, key, where);
    if (!v.is_number()) throw DataError(where + ": field '" + key + "' must be a number");
    return v.get<double>();
}

std::string require_str(const ordered_json& j, const char* key, const std::string& where) {
    const auto& v = require(j, key, where);
    if (!v.is_string()) throw DataError(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

bool require_bool(const ordered_json& j, const char* key, const std::string& where) {
    const auto& v = require(j, key, where);
    if (!v.is_boolean()) throw DataError(where + ": field '" + key + "' must be a boolean");
    return v.get<bool>();
}

Vec2 parse_point(const ordered_json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw DataError(where + ": expected [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

SceneRecord parse_scene(const ordered_json& j, const std::string& where) {
    SceneRecord s;
    s.scene_id = require_str(j, "scene_id", where);
    s.pause_time = require_num(j, "pause_time", where);
    s.window_len = j.contains("window_len") ? require_num(j, "window_len", where) : 10.0;
    s.frame_rate = j.contains("frame_rate") ? require_num(j, "frame_rate", where) : 60.0;
    s.pixels_per_degree = require_num(j, "pixels_per_degree", where);
    s.vanishing_point = parse_point(require(j, "vanishing_point", where), where + ".vanishing_point");

    std::string units = require_str(j, "units", where);
    if (units != "px" && units != "deg")
        throw DataError(where + ": units must be 'px' or 'deg', got '" + units + "'");
    if (!(s.window_len > 0)) throw DataError(where + ": window_len must be positive");
    if (!(s.frame_rate > 0)) throw DataError(where + ": frame_rate must be positive");
    if (!(s.pixels_per_degree > 0)) throw DataError(where + ": pixels_per_degree must be positive");

    if (j.contains("regions")) {
        const auto& regs = j.at("regions");
        if (!regs.is_array()) throw DataError(where + ": regions must be an array");
        for (const auto& r : regs) {
            RegionPolygon poly;
            poly.region_id = require_str(r, "region_id", where + ".regions");
            const auto& verts = require(r, "vertices", where + ".regions");
            if (!verts.is_array() || verts.size() < 3)
                throw DataError(where + ".regions: vertices needs at least 3 points");
            for (const auto& v : verts) poly.vertices.push_back(parse_point(v, where + ".regions.vertices"));
            s.regions.push_back(std::move(poly));
        }
    }

    if (units == "px") {
        s.vanishing_point = px_to_deg(s.vanishing_point, s.pixels_per_degree);
        for (auto& r : s.regions)
            for (auto& v : r.vertices) v = px_to_deg(v, s.pixels_per_degree);
    }
    return s;
}

ObjectTrack parse_object(const ordered_json& j, const std::string& where, bool px, double ppd) {
    ObjectTrack o;
    o.object_id = require_str(j, "object_id", where);
    o.is_target = require_bool(j, "is_target", where);

    const auto& p = require(j, "properties", where);
    const std::string pw = where + ".properties";
    o.properties.kind = object_kind_from_string(require_str(p, "kind", pw));
    o.properties.relevance = require_bool(p, "relevance", pw);
    o.properties.light_green = require_bool(p, "light_green", pw);
    o.properties.contrast = contrast_from_string(require_str(p, "contrast", pw));
    o.properties.movement = movement_from_string(require_str(p, "movement", pw));
    o.properties.area_change = require_bool(p, "area_change", pw);

    const auto& boxes = require(j, "boxes", where);
    if (!boxes.is_array() || boxes.empty())
        throw DataError(where + ": boxes must be a nonempty array");
    for (const auto& b : boxes) {
        if (!b.is_array() || b.size() != 5)
            throw DataError(where + ".boxes: expected [t, xmin, ymin, xmax, ymax]");
        TimedBox tb;
        tb.t = b[0].get<double>();
        tb.box = {b[1].get<double>(), b[2].get<double>(), b[3].get<double>(), b[4].get<double>()};
        if (px) {
            Vec2 lo = px_to_deg({tb.box.xmin, tb.box.ymin}, ppd);
            Vec2 hi = px_to_deg({tb.box.xmax, tb.box.ymax}, ppd);
            tb.box = {lo.x, lo.y, hi.x, hi.y};
        }
        o.boxes.push_back(tb);
    }
    return o;
}

}  // namespace

Dataset load_dataset(const fs::path& root) {
    Dataset ds;

    // manifest.json
    const fs::path manifest_path = root / "manifest.json";
    std::ifstream mf(manifest_path);
    if (!mf) throw DataError("missing file: " + manifest_path.string());
    ordered_json manifest;
    try {
        manifest = ordered_json::parse(mf);
    } catch (const std::exception& e) {
        throw DataError(manifest_path.string() + ": invalid JSON: " + e.what());
    }
    const auto& scenes = require(manifest, "scenes", manifest_path.string());
    if (!scenes.is_array() || scenes.empty())
        throw DataError(manifest_path.string() + ": scenes must be a nonempty array");

    std::map<Id, std::string> scene_units;
    for (std::size_t i = 0; i < scenes.size(); ++i) {
        std::string where = manifest_path.string() + ":scenes[" + std::to_string(i) + "]";
        SceneRecord s = parse_scene(scenes[i], where);
        scene_units[s.scene_id] = require_str(scenes[i], "units", where);
        ds.scenes.push_back(std::move(s));
    }
    std::sort(ds.scenes.begin(), ds.scenes.end(),
              [](const SceneRecord& a, const SceneRecord& b) { return a.scene_id < b.scene_id; });

    // objects.jsonl
    const fs::path obj_path = root / "objects.jsonl";
    std::ifstream of(obj_path);
    if (!of) throw DataError("missing file: " + obj_path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(of, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        std::string where = obj_path.string() + ":" + std::to_string(lineno);
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const std::exception& e) {
            throw DataError(where + ": invalid JSON: " + e.what());
        }
        Id scene_id = require_str(j, "scene_id", where);
        auto it = std::find_if(ds.scenes.begin(), ds.scenes.end(),
                               [&](const SceneRecord& s) { return s.scene_id == scene_id; });
        if (it == ds.scenes.end())
            throw DataError(where + ": unknown scene_id '" + scene_id + "'");
        bool px = scene_units[scene_id] == "px";
        it->objects.push_back(parse_object(j, where, px, it->pixels_per_degree));
    }
    for (auto& s : ds.scenes)
        std::sort(s.objects.begin(), s.objects.end(),
                  [](const ObjectTrack& a, const ObjectTrack& b) { return a.object_id < b.object_id; });

    // gaze/<participant>/<scene>.csv
    const fs::path gaze_dir = root / "gaze";
    if (!fs::is_directory(gaze_dir)) throw DataError("missing directory: " + gaze_dir.string());
    std::vector<fs::path> gaze_files;
    for (const auto& pdir : fs::directory_iterator(gaze_dir)) {
        if (!pdir.is_directory()) continue;
        for (const auto& f : fs::directory_iterator(pdir.path()))
            if (f.path().extension() == ".csv") gaze_files.push_back(f.path());
    }
    std::sort(gaze_files.begin(), gaze_files.end());
    for (const auto& path : gaze_files) {
        GazeTrack g;
        g.participant_id = path.parent_path().filename().string();
        g.scene_id = path.stem().string();
        const SceneRecord* scene = ds.find_scene(g.scene_id);
        if (!scene) throw DataError(path.string() + ": unknown scene_id '" + g.scene_id + "'");
        bool px = scene_units[g.scene_id] == "px";

        CsvReader rd(path.string());
        std::vector<std::string> f;
        if (!rd.next(f) || f != std::vector<std::string>{"t", "x", "y", "valid"})
            throw DataError(path.string() + ": expected header t,x,y,valid");
        while (rd.next(f)) {
            if (f.size() != 4) throw DataError(rd.where() + ": expected 4 fields");
            GazeSample s;
            s.t = parse_double(f[0], rd.where() + " field t");
            s.x = parse_double(f[1], rd.where() + " field x");
            s.y = parse_double(f[2], rd.where() + " field y");
            s.valid = parse_bool01(f[3], rd.where() + " field valid") != 0;
            if (px) {
                Vec2 d = px_to_deg({s.x, s.y}, scene->pixels_per_degree);
                s.x = d.x;
                s.y = d.y;
            }
            g.samples.push_back(s);
        }
        ds.gaze.push_back(std::move(g));
    }
    std::sort(ds.gaze.begin(), ds.gaze.end(), [](const GazeTrack& a, const GazeTrack& b) {
        return std::tie(a.participant_id, a.scene_id) < std::tie(b.participant_id, b.scene_id);
    });

    // labels.csv
    const fs::path lbl_path = root / "labels.csv";
    {
        CsvReader rd(lbl_path.string());
        std::vector<std::string> f;
        if (!rd.next(f) || f != std::vector<std::string>{"participant", "scene", "object", "aware"})
            throw DataError(lbl_path.string() + ": expected header participant,scene,object,aware");
        while (rd.next(f)) {
            if (f.size() != 4) throw DataError(rd.where() + ": expected 4 fields");
            AwarenessLabel l;
            l.participant_id = f[0];
            l.scene_id = f[1];
            l.object_id = f[2];
            l.aware = parse_bool01(f[3], rd.where() + " field aware") != 0;
            ds.labels.push_back(std::move(l));
        }
    }
    std::sort(ds.labels.begin(), ds.labels.end(), [](const AwarenessLabel& a, const AwarenessLabel& b) {
        return std::tie(a.participant_id, a.scene_id, a.object_id) <
               std::tie(b.participant_id, b.scene_id, b.object_id);
    });

    validate_dataset(ds);
    return ds;
}

void validate_dataset(const Dataset& ds) {
    std::set<Id> scene_ids;
    for (const auto& s : ds.scenes) {
        const std::string where = "scene '" + s.scene_id + "'";
        if (!scene_ids.insert(s.scene_id).second)
            throw DataError("duplicate scene_id '" + s.scene_id + "'");
        if (!(s.window_len > 0)) throw DataError(where + ": window_len must be positive");
        if (!(s.frame_rate > 0)) throw DataError(where + ": frame_rate must be positive");
        if (!(s.pixels_per_degree > 0)) throw DataError(where + ": pixels_per_degree must be positive");

        const auto win = window_of(s);
        std::set<Id> object_ids;
        for (const auto& o : s.objects) {
            const std::string ow = where + " object '" + o.object_id + "'";
            if (!object_ids.insert(o.object_id).second)
                throw DataError(where + ": duplicate object_id '" + o.object_id + "'");
            if (o.boxes.empty()) throw DataError(ow + ": no boxes");
            bool any_in_window = false;
            for (std::size_t i = 0; i < o.boxes.size(); ++i) {
                const auto& b = o.boxes[i];
                if (!b.box.well_formed())
                    throw DataError(ow + ": box " + std::to_string(i) + " has xmin>xmax or ymin>ymax");
                if (i > 0 && !(b.t > o.boxes[i - 1].t))
                    throw DataError(ow + ": box timestamps not strictly increasing at index " +
                                    std::to_string(i));
                if (in_window(b.t, win)) any_in_window = true;
            }
            if (!any_in_window) throw DataError(ow + ": no box inside the analysis window");
        }
    }

    std::set<std::pair<Id, Id>> gaze_keys;
    for (const auto& g : ds.gaze) {
        const std::string where = "gaze (" + g.participant_id + ", " + g.scene_id + ")";
        if (!gaze_keys.insert({g.participant_id, g.scene_id}).second)
            throw DataError("duplicate gaze track for " + where);
        const SceneRecord* scene = ds.find_scene(g.scene_id);
        if (!scene) throw DataError(where + ": unknown scene_id");
        const auto win = window_of(*scene);
        const double period = scene->frame_period();
        bool any_valid_in_window = false;
        for (std::size_t i = 0; i < g.samples.size(); ++i) {
            const auto& s = g.samples[i];
            if (i > 0) {
                double dt = s.t - g.samples[i - 1].t;
                if (!(dt > 0))
                    throw DataError(where + ": sample timestamps not strictly increasing at row " +
                                    std::to_string(i + 1));
                if (dt < 0.8 * period || dt > 1.2 * period)
                    throw DataError(where + ": inter-sample spacing " + fmt_short(dt) +
                                    " s outside 20% jitter of nominal " + fmt_short(period) +
                                    " s at row " + std::to_string(i + 1));
            }
            if (s.valid && in_window(s.t, win)) any_valid_in_window = true;
        }
        if (!any_valid_in_window)
            throw DataError(where + ": no valid sample inside the analysis window");
    }

    std::set<std::tuple<Id, Id, Id>> label_keys;
    for (const auto& l : ds.labels) {
        const std::string where =
            "label (" + l.participant_id + ", " + l.scene_id + ", " + l.object_id + ")";
        const SceneRecord* scene = ds.find_scene(l.scene_id);
        if (!scene) throw DataError(where + ": unknown scene_id '" + l.scene_id + "'");
        const ObjectTrack* obj = scene->find_object(l.object_id);
        if (!obj) throw DataError(where + ": unknown object_id '" + l.object_id + "'");
        if (!obj->is_target) throw DataError(where + ": object is not a target");
        if (!ds.find_gaze(l.participant_id, l.scene_id))
            throw DataError(where + ": no gaze track for participant '" + l.participant_id + "'");
        if (!label_keys.insert({l.participant_id, l.scene_id, l.object_id}).second)
            throw DataError("duplicate " + where);
    }
    // Completeness: every (gaze track, target object) pair carries exactly one label.
    for (const auto& g : ds.gaze) {
        const SceneRecord* scene = ds.find_scene(g.scene_id);
        for (const auto& o : scene->objects) {
            if (!o.is_target) continue;
            if (!label_keys.count({g.participant_id, g.scene_id, o.object_id}))
                throw DataError("missing label (" + g.participant_id + ", " + g.scene_id + ", " +
                                o.object_id + ")");
        }
    }
}

void write_dataset(const Dataset& ds, const fs::path& root) {
    fs::create_directories(root);

    ordered_json manifest;
    manifest["version"] = 1;
    manifest["scenes"] = ordered_json::array();
    for (const auto& s : ds.scenes) {
        ordered_json js;
        js["scene_id"] = s.scene_id;
        js["pause_time"] = s.pause_time;
        js["window_len"] = s.window_len;
        js["frame_rate"] = s.frame_rate;
        js["units"] = "deg";
        js["pixels_per_degree"] = s.pixels_per_degree;
        js["vanishing_point"] = {s.vanishing_point.x, s.vanishing_point.y};
        if (!s.regions.empty()) {
            js["regions"] = ordered_json::array();
            for (const auto& r : s.regions) {
                ordered_json jr;
                jr["region_id"] = r.region_id;
                jr["vertices"] = ordered_json::array();
                for (const auto& v : r.vertices) jr["vertices"].push_back({v.x, v.y});
                js["regions"].push_back(std::move(jr));
            }
        }
        manifest["scenes"].push_back(std::move(js));
    }
    {
        std::ofstream out(root / "manifest.json");
        out << manifest.dump(2) << "\n";
    }

    {
        std::ofstream out(root / "objects.jsonl");
        for (const auto& s : ds.scenes) {
            for (const auto& o : s.objects) {
                ordered_json j;
                j["scene_id"] = s.scene_id;
                j["object_id"] = o.object_id;
                j["is_target"] = o.is_target;
                j["properties"] = {{"kind", to_string(o.properties.kind)},
                                   {"relevance", o.properties.relevance},
                                   {"light_green", o.properties.light_green},
                                   {"contrast", to_string(o.properties.contrast)},
                                   {"movement", to_string(o.properties.movement)},
                                   {"area_change", o.properties.area_change}};
                j["boxes"] = ordered_json::array();
                for (const auto& b : o.boxes)
                    j["boxes"].push_back({b.t, b.box.xmin, b.box.ymin, b.box.xmax, b.box.ymax});
                out << j.dump() << "\n";
            }
        }
    }

    for (const auto& g : ds.gaze) {
        fs::path dir = root / "gaze" / g.participant_id;
        fs::create_directories(dir);
        std::ofstream out(dir / (g.scene_id + ".csv"));
        out << "t,x,y,valid\n";
        for (const auto& s : g.samples)
            out << fmt_full(s.t) << "," << fmt_full(s.x) << "," << fmt_full(s.y) << ","
                << (s.valid ? 1 : 0) << "\n";
    }

    {
        std::ofstream out(root / "labels.csv");
        out << "participant,scene,object,aware\n";
        for (const auto& l : ds.labels)
            out << l.participant_id << "," << l.scene_id << "," << l.object_id << ","
                << (l.aware ? 1 : 0) << "\n";
    }
}

}  // namespace gazesa
