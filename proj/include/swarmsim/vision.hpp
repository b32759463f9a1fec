#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "swarmsim/dynamics.hpp"
#include "swarmsim/geometry.hpp"
#include "swarmsim/rng.hpp"

namespace swarmsim {

/// Body-frame LED offsets (x forward, y left, z up), mm. LEDs 1 and 2 are
/// the stacked posterior pair, LED 3 sits forward of them on the body axis.
struct LedLayout {
    Vec3 posterior_bottom{0.0, 0.0, -25.0};  // LED 1
    Vec3 posterior_top{0.0, 0.0, 25.0};      // LED 2
    Vec3 anterior{65.0, 0.0, 25.0};          // LED 3

    double baseline() const { return posterior_top.z - posterior_bottom.z; }
    double longitudinal_offset() const;
    Vec3 pair_midpoint() const { return (posterior_top + posterior_bottom) * 0.5; }
    /// Height of LED 3 above the posterior pair's midpoint.
    double anterior_height() const { return anterior.z - pair_midpoint().z; }

    void validate() const;
};

struct BlobObservation {
    double azimuth{0.0};    // camera-frame bearing, left positive
    double elevation{0.0};  // positive DOWN
    int source_agent{-1};   // robot the light came from
    bool is_reflection{false};  // ground truth only; the parser never reads it
};

struct LeaderEstimate {
    double bearing{0.0};
    double pitch{0.0};
    double distance{0.0};
    Vec3 heading{1.0, 0.0, 0.0};  // unit, horizontal, follower body frame
    bool heading_valid{false};
    Vec3 leader_position;  // posterior-pair midpoint, follower body frame (z up)
    int source_agent{-1};
};

struct VisionParams {
    double blind_spot_half_angle{deg_to_rad(2.5)};
    double fov_elevation_limit{deg_to_rad(90.0)};  // |elevation| beyond this is unseen
    double merge_threshold{deg_to_rad(1.0)};
    double pitch_match_threshold{deg_to_rad(6.0)};
    double noise_sigma{deg_to_rad(0.2)};
    double reflection_rate{0.0};
    double max_range{3000.0};
    double body_radius{25.0};
    // Azimuth window inside which two blobs count as vertically stacked.
    double pair_azimuth_tolerance{deg_to_rad(0.75)};
    // Elevation-residual gap above which LED 3's elevation overrides the
    // previous heading when choosing between the two heading solutions.
    double heading_disambiguation_margin{deg_to_rad(0.5)};
    double surface_z{0.0};

    void validate() const;
};

/// Unit direction of a blob in the camera body frame (z up).
Vec3 blob_direction(const BlobObservation& blob);

/// Angle between two blob directions.
double angular_separation(const BlobObservation& a, const BlobObservation& b);

/// Synthesizes the blobs robot `observer` sees this cycle. Only robots with
/// LEDs lit emit light; blind spot, range, field of view, occlusion by other
/// bodies, blob merging, reflections and angular noise are applied in that
/// order. All randomness comes from `rng`.
std::vector<BlobObservation> observe(std::span<const AgentState> world, std::size_t observer,
                                     const LedLayout& layout, const VisionParams& params, Rng& rng);

/// Range to the posterior pair from its two blobs, exploiting that LEDs 1 and
/// 2 are stacked vertically `baseline` apart. Reduces to
/// baseline / (2 tan(gamma / 2)) for a pair viewed level.
/// Throws GeometryError when the blobs have no vertical separation.
double estimate_distance(const BlobObservation& lower, const BlobObservation& upper, double baseline);

struct HeadingSolution {
    Vec3 heading{1.0, 0.0, 0.0};
    bool valid{false};
};

/// Leader heading from LED 3: intersects the anterior blob's sight ray with
/// the circle of radius `longitudinal_offset` around the pair.
HeadingSolution estimate_heading(const BlobObservation& anterior, const LeaderEstimate& pair_estimate,
                                 const LedLayout& layout, const VisionParams& params,
                                 std::optional<Vec3> previous_heading = std::nullopt);

/// Parses one robot's blobs into a leader estimate. Absent when fewer than
/// two usable blobs were seen.
std::optional<LeaderEstimate> parse_blobs(std::span<const BlobObservation> blobs, const LedLayout& layout,
                                          const VisionParams& params,
                                          std::optional<Vec3> previous_heading = std::nullopt);

/// Splits blobs by emitting robot, preserving order.
std::map<int, std::vector<BlobObservation>> group_by_source(std::span<const BlobObservation> blobs);

}  // namespace swarmsim
