#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hamcheck {

struct LandmarkPoint {
    double x = 0.0;  // normalized [0,1] image coordinates
    double y = 0.0;
    double z = 0.0;  // relative depth, unused by the analyses here
    double visibility = 0.0;
};

struct LandmarkFrame {
    int index = 0;  // strictly increasing across a series
    std::vector<LandmarkPoint> points;
};

struct LandmarkSeries {
    std::string topology;  // "body33", "hand21", or a custom name
    double fps = 0.0;
    int width = 0;
    int height = 0;
    std::vector<LandmarkFrame> frames;

    std::size_t landmark_count() const {
        return frames.empty() ? 0 : frames.front().points.size();
    }
    /// Frame with the given index value, or nullptr.
    const LandmarkFrame* frame_at(int index) const;
};

/// Reads a landmark JSON file:
/// {"topology":"body33","fps":N,"width":W,"height":H,
///  "frames":[{"i":k,"p":[[x,y,z,vis],...]},...]}
/// Known topologies pin the point count (body33: 33, hand21: 21); any other
/// name takes its count from the first frame.
/// Errors: FileUnreadable, SchemaError (names field and frame), TopologyMismatch.
LandmarkSeries load_landmark_series(const std::string& path);
LandmarkSeries load_landmark_series(std::istream& in, const std::string& origin);

enum class Role {
    Nose,
    LeftWrist,
    RightWrist,
    LeftThumbCmc,
    RightThumbCmc,
    LeftThumbMcp,
    RightThumbMcp,
};
inline constexpr std::size_t kRoleCount = 7;

std::string_view to_string(Role role);
std::optional<Role> role_from_string(std::string_view name);

enum class Hand { Left, Right };

std::string_view to_string(Hand hand);
std::optional<Hand> hand_from_string(std::string_view name);

/// Maps landmark roles to point indices plus the two detector parameters.
struct TopologyConfig {
    std::array<std::optional<int>, kRoleCount> roles;
    double visibility_threshold = 0.5;
    int smoothing_window = 1;  // odd; 1 means no smoothing

    std::optional<int>& role(Role r) { return roles[static_cast<std::size_t>(r)]; }
    const std::optional<int>& role(Role r) const { return roles[static_cast<std::size_t>(r)]; }

    /// Shipped defaults: body33 maps nose 0, wrists 15/16, thumbs 21/22 as
    /// CMC stand-ins (MCP unmapped); hand21 maps wrist 0, CMC 1, MCP 2 for
    /// both hands (single-hand capture). Unknown topologies map nothing.
    static TopologyConfig defaults_for(std::string_view topology);
};

/// Reads a JSON role map, e.g. {"nose":0,"right_wrist":16,
/// "visibility_threshold":0.5,"smoothing_window":1}. Keys are role names
/// plus the two parameters; missing roles stay unmapped.
/// Errors: FileUnreadable, SchemaError, InvalidWindow.
TopologyConfig load_topology_config(const std::string& path);
TopologyConfig load_topology_config(std::istream& in, const std::string& origin);

struct Sample {
    int frame = 0;
    double value = 0.0;
};

/// Centered moving average of width w; truncated windows at the edges, so
/// the output length equals the input length. w=1 is the identity.
std::vector<double> smooth(std::span<const Sample> signal, int w);

/// Earliest interior local extremum (either kind) of the smoothed signal.
/// A plateau flanked by strictly lower (or strictly higher) values counts
/// once, at the plateau's first frame; endpoints never qualify.
/// Errors: TooShort (<3 samples), InvalidWindow (w even or < 1).
std::optional<int> first_local_extremum(std::span<const Sample> signal, int w);

struct ExtremaPair {
    std::optional<int> first_max;
    std::optional<int> first_min;
};

/// First local maximum and first local minimum, searched independently.
/// Errors: TooShort, InvalidWindow.
ExtremaPair first_extrema(std::span<const Sample> signal, int w);

/// Element at position ceil(n/2)-1 (0-based) of the sorted values: the
/// median for odd n, the lower of the two middles for even n.
int lower_median(std::vector<int> values);

struct InitialFrameResult {
    std::vector<int> candidates;  // sorted ascending, at most 12
    int chosen = 0;               // lower median of candidates
    std::vector<std::string> notes;  // skipped signals, interpretation record
};

/// Detects the initial-configuration frame for one hand: for each of the
/// hand's mapped landmarks (wrist, thumb CMC, thumb MCP) and each of x and
/// y, samples below the visibility threshold are dropped, the signal is
/// smoothed, and the first local maximum and first local minimum each
/// contribute a candidate frame. The chosen frame is the lower median.
/// Errors: RoleUnresolved (no usable landmark for the hand),
/// NoExtremumFound (signals exist but yield zero candidates).
InitialFrameResult detect_initial_frame(const LandmarkSeries& series,
                                        const TopologyConfig& cfg, Hand hand);

enum class Norm { L1, L2 };

std::string_view to_string(Norm norm);

/// Pixel-space distance between two roles at the frame with index value
/// `frame_index`; x scales by width, y by height, z is ignored.
/// Errors: RoleUnresolved, FrameOutOfRange, LandmarkNotVisible.
double pairwise_distance(const LandmarkSeries& series, const TopologyConfig& cfg,
                         int frame_index, Role a, Role b, Norm norm);

} // namespace hamcheck
