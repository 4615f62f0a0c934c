#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gazesa/common.hpp"
#include "gazesa/geometry.hpp"

namespace gazesa {

using Id = std::string;

enum class ObjectKind { pedestrian, vehicle };
enum class Contrast { low, medium, high };
enum class Movement { static_, slow, medium, high };

std::string to_string(ObjectKind k);
std::string to_string(Contrast c);
std::string to_string(Movement m);
ObjectKind object_kind_from_string(const std::string& s);
Contrast contrast_from_string(const std::string& s);
Movement movement_from_string(const std::string& s);

/// Annotated per-object properties. All fields are total: the loader
/// rejects objects with missing annotations, targets and non-targets alike.
struct ObjectProperties {
    ObjectKind kind = ObjectKind::vehicle;
    bool relevance = false;    // trajectory intersects the ego path
    bool light_green = false;  // false covers red and unknown
    Contrast contrast = Contrast::medium;
    Movement movement = Movement::static_;
    bool area_change = false;  // crossed a target-area border in the last second
    bool operator==(const ObjectProperties&) const = default;
};

struct TimedBox {
    double t = 0.0;  // seconds
    BBox box;
    bool operator==(const TimedBox&) const = default;
};

struct ObjectTrack {
    Id object_id;
    bool is_target = false;
    std::vector<TimedBox> boxes;  // strictly increasing t
    ObjectProperties properties;
    bool operator==(const ObjectTrack&) const = default;
};

/// One SAGAT pause: timing, calibration, and every annotated traffic
/// participant. All geometry is stored in degrees of visual angle.
struct SceneRecord {
    Id scene_id;
    double pause_time = 0.0;
    double window_len = 10.0;
    double frame_rate = 60.0;
    Vec2 vanishing_point;
    double pixels_per_degree = 1.0;
    std::vector<ObjectTrack> objects;
    std::vector<RegionPolygon> regions;  // optional target-area boundaries

    double frame_period() const { return 1.0 / frame_rate; }
    const ObjectTrack* find_object(const Id& id) const;
    bool operator==(const SceneRecord&) const = default;
};

struct GazeSample {
    double t = 0.0;
    double x = 0.0;  // degrees
    double y = 0.0;
    bool valid = true;
    bool operator==(const GazeSample&) const = default;
};

struct GazeTrack {
    Id participant_id;
    Id scene_id;
    std::vector<GazeSample> samples;  // strictly increasing t
    bool operator==(const GazeTrack&) const = default;
};

struct AwarenessLabel {
    Id participant_id;
    Id scene_id;
    Id object_id;
    bool aware = false;
    bool operator==(const AwarenessLabel&) const = default;
};

struct Dataset {
    std::vector<SceneRecord> scenes;  // sorted by scene_id
    std::vector<GazeTrack> gaze;      // sorted by (participant_id, scene_id)
    std::vector<AwarenessLabel> labels;

    const SceneRecord* find_scene(const Id& scene_id) const;
    const GazeTrack* find_gaze(const Id& participant_id, const Id& scene_id) const;
    bool operator==(const Dataset&) const = default;
};

/// Pixel <-> degree calibration. Throws ConfigError on calib <= 0.
Vec2 px_to_deg(Vec2 p, double pixels_per_degree);
Vec2 deg_to_px(Vec2 p, double pixels_per_degree);

/// Analysis window (t_start, t_end]: t_end is the pause itself.
std::pair<double, double> window_of(const SceneRecord& scene);

inline bool in_window(double t, const std::pair<double, double>& w) {
    return t > w.first && t <= w.second;
}

/// Loads a dataset directory (manifest.json, objects.jsonl, labels.csv,
/// gaze/<participant>/<scene>.csv). Pixel-valued scenes are converted to
/// degrees. Validates all invariants; throws DataError naming the field
/// and line on the first violation.
Dataset load_dataset(const std::filesystem::path& root);

/// Inverse of load_dataset: writes the directory layout in degrees.
/// Floats are written at full precision so a reload is bit-exact.
void write_dataset(const Dataset& ds, const std::filesystem::path& root);

/// Invariant checks shared by the loader and the synthetic generator.
void validate_dataset(const Dataset& ds);

}  // namespace gazesa
