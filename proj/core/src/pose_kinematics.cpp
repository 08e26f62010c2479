#include "hamcheck/pose_kinematics.hpp"

#include "hamcheck/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>

namespace hamcheck {

using json = nlohmann::json;

const LandmarkFrame* LandmarkSeries::frame_at(int index) const {
    const auto it = std::lower_bound(
        frames.begin(), frames.end(), index,
        [](const LandmarkFrame& f, int value) { return f.index < value; });
    return (it != frames.end() && it->index == index) ? &*it : nullptr;
}

namespace {

[[noreturn]] void schema_error(const std::string& origin, const std::string& detail) {
    raise("SchemaError", origin + ": " + detail);
}

double finite_number(const json& j, const std::string& origin, const std::string& field) {
    if (!j.is_number()) schema_error(origin, field + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) schema_error(origin, field + " must be finite");
    return v;
}

int positive_int(const json& j, const std::string& origin, const std::string& field) {
    const double v = finite_number(j, origin, field);
    if (v <= 0 || v != std::floor(v))
        schema_error(origin, field + " must be a positive integer");
    return static_cast<int>(v);
}

} // namespace

LandmarkSeries load_landmark_series(std::istream& in, const std::string& origin) {
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) schema_error(origin, "invalid JSON");
    if (!j.is_object()) schema_error(origin, "root must be an object");
    for (const char* field : {"topology", "fps", "width", "height", "frames"})
        if (!j.contains(field)) schema_error(origin, std::string("missing field ") + field);

    LandmarkSeries series;
    if (!j["topology"].is_string()) schema_error(origin, "topology must be a string");
    series.topology = j["topology"].get<std::string>();
    if (series.topology.empty()) schema_error(origin, "topology must be non-empty");
    series.fps = finite_number(j["fps"], origin, "fps");
    if (series.fps <= 0) schema_error(origin, "fps must be positive");
    series.width = positive_int(j["width"], origin, "width");
    series.height = positive_int(j["height"], origin, "height");

    std::size_t expected = 0;
    if (series.topology == "body33") expected = 33;
    else if (series.topology == "hand21") expected = 21;

    const json& frames = j["frames"];
    if (!frames.is_array() || frames.empty())
        schema_error(origin, "frames must be a non-empty array");
    series.frames.reserve(frames.size());
    int prev_index = 0;
    for (std::size_t k = 0; k < frames.size(); ++k) {
        const std::string where = "frame " + std::to_string(k);
        const json& fj = frames[k];
        if (!fj.is_object() || !fj.contains("i") || !fj.contains("p"))
            schema_error(origin, where + " must be an object with fields i and p");
        LandmarkFrame frame;
        const double iv = finite_number(fj["i"], origin, where + ".i");
        if (iv != std::floor(iv)) schema_error(origin, where + ".i must be an integer");
        frame.index = static_cast<int>(iv);
        if (k > 0 && frame.index <= prev_index)
            schema_error(origin, where + ".i is not strictly increasing");
        prev_index = frame.index;
        const json& pts = fj["p"];
        if (!pts.is_array()) schema_error(origin, where + ".p must be an array");
        if (expected == 0) expected = pts.size();  // custom topology: first frame decides
        if (pts.size() != expected)
            raise("TopologyMismatch", origin + ": " + where + " has " +
                                          std::to_string(pts.size()) + " points, expected " +
                                          std::to_string(expected) + " for topology \"" +
                                          series.topology + "\"");
        frame.points.reserve(pts.size());
        for (std::size_t p = 0; p < pts.size(); ++p) {
            const json& pj = pts[p];
            if (!pj.is_array() || pj.size() != 4)
                schema_error(origin, where + ".p[" + std::to_string(p) +
                                         "] must be [x,y,z,visibility]");
            LandmarkPoint point;
            const std::string pw = where + ".p[" + std::to_string(p) + "]";
            point.x = finite_number(pj[0], origin, pw + ".x");
            point.y = finite_number(pj[1], origin, pw + ".y");
            point.z = finite_number(pj[2], origin, pw + ".z");
            point.visibility = finite_number(pj[3], origin, pw + ".visibility");
            frame.points.push_back(point);
        }
        series.frames.push_back(std::move(frame));
    }
    return series;
}

LandmarkSeries load_landmark_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise("FileUnreadable", "cannot open landmark file \"" + path + "\"");
    return load_landmark_series(in, path);
}

namespace {

constexpr std::string_view kRoleNames[kRoleCount] = {
    "nose",           "left_wrist",     "right_wrist", "left_thumb_cmc",
    "right_thumb_cmc", "left_thumb_mcp", "right_thumb_mcp",
};

} // namespace

std::string_view to_string(Role role) { return kRoleNames[static_cast<std::size_t>(role)]; }

std::optional<Role> role_from_string(std::string_view name) {
    for (std::size_t i = 0; i < kRoleCount; ++i)
        if (kRoleNames[i] == name) return static_cast<Role>(i);
    return std::nullopt;
}

std::string_view to_string(Hand hand) { return hand == Hand::Left ? "left" : "right"; }

std::optional<Hand> hand_from_string(std::string_view name) {
    if (name == "left") return Hand::Left;
    if (name == "right") return Hand::Right;
    return std::nullopt;
}

std::string_view to_string(Norm norm) { return norm == Norm::L1 ? "L1" : "L2"; }

TopologyConfig TopologyConfig::defaults_for(std::string_view topology) {
    TopologyConfig cfg;
    if (topology == "body33") {
        cfg.role(Role::Nose) = 0;
        cfg.role(Role::LeftWrist) = 15;
        cfg.role(Role::RightWrist) = 16;
        cfg.role(Role::LeftThumbCmc) = 21;
        cfg.role(Role::RightThumbCmc) = 22;
    } else if (topology == "hand21") {
        cfg.role(Role::LeftWrist) = 0;
        cfg.role(Role::RightWrist) = 0;
        cfg.role(Role::LeftThumbCmc) = 1;
        cfg.role(Role::RightThumbCmc) = 1;
        cfg.role(Role::LeftThumbMcp) = 2;
        cfg.role(Role::RightThumbMcp) = 2;
    }
    return cfg;
}

TopologyConfig load_topology_config(std::istream& in, const std::string& origin) {
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) schema_error(origin, "invalid JSON");
    if (!j.is_object()) schema_error(origin, "root must be an object");
    TopologyConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "visibility_threshold") {
            cfg.visibility_threshold = finite_number(value, origin, key);
            if (cfg.visibility_threshold < 0.0 || cfg.visibility_threshold > 1.0)
                schema_error(origin, "visibility_threshold must be in [0,1]");
            continue;
        }
        if (key == "smoothing_window") {
            cfg.smoothing_window = positive_int(value, origin, key);
            if (cfg.smoothing_window % 2 == 0)
                raise("InvalidWindow", origin + ": smoothing_window must be odd");
            continue;
        }
        const auto role = role_from_string(key);
        if (!role) schema_error(origin, "unknown key \"" + key + "\"");
        const double v = finite_number(value, origin, key);
        if (v < 0 || v != std::floor(v))
            schema_error(origin, key + " must be a non-negative integer");
        cfg.role(*role) = static_cast<int>(v);
    }
    return cfg;
}

TopologyConfig load_topology_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise("FileUnreadable", "cannot open topology config \"" + path + "\"");
    return load_topology_config(in, path);
}

std::vector<double> smooth(std::span<const Sample> signal, int w) {
    if (w < 1 || w % 2 == 0)
        raise("InvalidWindow", "smoothing window must be a positive odd integer, got " +
                                   std::to_string(w));
    const std::size_t n = signal.size();
    std::vector<double> out(n);
    const std::size_t h = static_cast<std::size_t>(w / 2);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= h ? i - h : 0;
        const std::size_t hi = std::min(n - 1, i + h);
        double sum = 0.0;
        for (std::size_t k = lo; k <= hi; ++k) sum += signal[k].value;
        out[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

ExtremaPair first_extrema(std::span<const Sample> signal, int w) {
    if (signal.size() < 3)
        raise("TooShort", "extremum search needs at least 3 samples, got " +
                              std::to_string(signal.size()));
    const std::vector<double> s = smooth(signal, w);
    const std::size_t n = s.size();
    ExtremaPair out;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;  // plateau [i, j] of equal smoothed values
        while (j + 1 < n && s[j + 1] == s[i]) ++j;
        if (i > 0 && j + 1 < n) {
            if (!out.first_max && s[i - 1] < s[i] && s[j + 1] < s[i])
                out.first_max = signal[i].frame;
            if (!out.first_min && s[i - 1] > s[i] && s[j + 1] > s[i])
                out.first_min = signal[i].frame;
            if (out.first_max && out.first_min) break;
        }
        i = j + 1;
    }
    return out;
}

std::optional<int> first_local_extremum(std::span<const Sample> signal, int w) {
    const ExtremaPair ex = first_extrema(signal, w);
    if (ex.first_max && ex.first_min) return std::min(*ex.first_max, *ex.first_min);
    return ex.first_max ? ex.first_max : ex.first_min;
}

int lower_median(std::vector<int> values) {
    if (values.empty()) raise("NoExtremumFound", "median of an empty candidate list");
    std::sort(values.begin(), values.end());
    return values[(values.size() + 1) / 2 - 1];
}

InitialFrameResult detect_initial_frame(const LandmarkSeries& series,
                                        const TopologyConfig& cfg, Hand hand) {
    if (cfg.smoothing_window < 1 || cfg.smoothing_window % 2 == 0)
        raise("InvalidWindow", "smoothing window must be a positive odd integer, got " +
                                   std::to_string(cfg.smoothing_window));
    static constexpr Role kHandRoles[2][3] = {
        {Role::LeftWrist, Role::LeftThumbCmc, Role::LeftThumbMcp},
        {Role::RightWrist, Role::RightThumbCmc, Role::RightThumbMcp},
    };
    InitialFrameResult result;
    result.notes.push_back(
        "candidates: first local maximum and first local minimum of each "
        "landmark axis signal");
    const std::size_t points = series.landmark_count();
    std::size_t usable = 0;
    for (const Role role : kHandRoles[hand == Hand::Right ? 1 : 0]) {
        const std::optional<int> idx = cfg.role(role);
        if (!idx) {
            result.notes.push_back(std::string(to_string(role)) + ": no landmark mapped");
            continue;
        }
        if (*idx < 0 || static_cast<std::size_t>(*idx) >= points) {
            result.notes.push_back(std::string(to_string(role)) + ": index " +
                                   std::to_string(*idx) + " outside the " +
                                   std::to_string(points) + "-point topology");
            continue;
        }
        ++usable;
        for (int axis = 0; axis < 2; ++axis) {
            std::vector<Sample> signal;
            signal.reserve(series.frames.size());
            for (const LandmarkFrame& frame : series.frames) {
                const LandmarkPoint& pt = frame.points[*idx];
                if (pt.visibility >= cfg.visibility_threshold)
                    signal.push_back({frame.index, axis == 0 ? pt.x : pt.y});
            }
            const std::string name =
                std::string(to_string(role)) + (axis == 0 ? ".x" : ".y");
            if (signal.size() < 3) {
                result.notes.push_back(name + ": fewer than 3 visible samples");
                continue;
            }
            const ExtremaPair ex = first_extrema(signal, cfg.smoothing_window);
            if (ex.first_max) result.candidates.push_back(*ex.first_max);
            else result.notes.push_back(name + ": no local maximum");
            if (ex.first_min) result.candidates.push_back(*ex.first_min);
            else result.notes.push_back(name + ": no local minimum");
        }
    }
    if (usable == 0)
        raise("RoleUnresolved", std::string("no usable landmark mapped for the ") +
                                    std::string(to_string(hand)) + " hand");
    if (result.candidates.empty())
        raise("NoExtremumFound", std::string("no signal of the ") +
                                     std::string(to_string(hand)) +
                                     " hand has a local extremum");
    std::sort(result.candidates.begin(), result.candidates.end());
    result.chosen = lower_median(result.candidates);
    return result;
}

double pairwise_distance(const LandmarkSeries& series, const TopologyConfig& cfg,
                         int frame_index, Role a, Role b, Norm norm) {
    const LandmarkFrame* frame = series.frame_at(frame_index);
    if (!frame)
        raise("FrameOutOfRange", "no frame with index " + std::to_string(frame_index));
    const auto resolve = [&](Role role) -> const LandmarkPoint& {
        const std::optional<int> idx = cfg.role(role);
        if (!idx || *idx < 0 || static_cast<std::size_t>(*idx) >= frame->points.size())
            raise("RoleUnresolved", std::string("role ") + std::string(to_string(role)) +
                                        " is not mapped to a landmark");
        const LandmarkPoint& pt = frame->points[static_cast<std::size_t>(*idx)];
        if (pt.visibility < cfg.visibility_threshold)
            raise("LandmarkNotVisible", std::string(to_string(role)) + " is below the "
                                            "visibility threshold at frame " +
                                            std::to_string(frame_index));
        return pt;
    };
    const LandmarkPoint& pa = resolve(a);
    const LandmarkPoint& pb = resolve(b);
    const double dx = (pa.x - pb.x) * series.width;
    const double dy = (pa.y - pb.y) * series.height;
    return norm == Norm::L1 ? std::abs(dx) + std::abs(dy) : std::hypot(dx, dy);
}

} // namespace hamcheck
