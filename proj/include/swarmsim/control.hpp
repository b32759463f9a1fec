#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "swarmsim/dynamics.hpp"
#include "swarmsim/geometry.hpp"
#include "swarmsim/vision.hpp"

namespace swarmsim {

class ControlError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

enum class Zone { Approach, Follow, Dead, Lost };

std::string_view zone_name(Zone zone);

struct ZoneParams {
    double approach_threshold{500.0};
    double dead_radius{120.0};
    double follow_distance{200.0};          // l, horizontal
    double follow_angle{deg_to_rad(90.0)};  // alpha, positive = leader's left
    double pitch_low{deg_to_rad(-1.0)};
    double pitch_high{deg_to_rad(1.0)};
    double v_min_frac{0.2};
    double v_max_frac{1.0};
    double turn_deadband{deg_to_rad(2.0)};
    double lost_hold_time{2.0};  // s of replaying the last command

    void validate() const;
};

struct TanhParams {
    double length_scale{300.0};  // mm
    double f_cap{3.0};           // Hz

    void validate(double f_max) const;
};

struct FollowerMemory {
    std::optional<LeaderEstimate> last_estimate;
    double last_seen_time{0.0};
    FinCommand last_command;
    bool dorsal_state{false};
};

struct ControlOutput {
    FinCommand command;
    FollowerMemory memory;
    Zone zone{Zone::Lost};
    std::optional<Vec3> target;  // follower body frame
};

/// Formation goal: leader position plus l times the heading rotated by alpha.
/// Throws ControlError when the estimate carries no valid heading.
Vec3 target_pose(const LeaderEstimate& estimate, double follow_distance, double follow_angle);

/// Follow owns both boundaries: d in [dead_radius, approach_threshold].
Zone classify_zone(double distance, const ZoneParams& zp);

/// Proportional bearing steering with a deadband; gain f_max per 90 degrees.
/// Returns (left, right) pectoral frequencies; right > left turns CCW.
std::pair<double, double> steer_towards(const Vec3& target_body, double f_max, double deadband);

bool depth_command(double observed_pitch, double band_low, double band_high, bool previous);

ControlOutput lost_leader_policy(const FollowerMemory& mem, double t, const ZoneParams& zp, double f_max);

ControlOutput follower_command_zonal(const std::optional<LeaderEstimate>& estimate, const ZoneParams& zp,
                                     double f_max, const FollowerMemory& mem, double t);

ControlOutput follower_command_tanh(const std::optional<LeaderEstimate>& estimate, const ZoneParams& zp,
                                    const TanhParams& tp, double f_max, const FollowerMemory& mem, double t);

/// Index of the nearest estimate; ties go to the lowest index.
std::size_t select_leader(std::span<const LeaderEstimate> estimates);

struct ProgramSegment {
    double duration{0.0};
    double caudal_freq{0.0};
    double pectoral_bias{0.0};
};

struct LeaderProgram {
    enum class Kind { Straight, Circle, Piecewise };

    Kind kind{Kind::Straight};
    double caudal_freq{1.0};
    double pectoral_bias{0.0};  // Hz, positive turns left (CCW)
    double depth_setpoint{500.0};  // mm below the surface
    double depth_hysteresis{10.0};
    std::vector<ProgramSegment> segments;

    void validate(double f_max) const;
};

std::string_view program_kind_name(LeaderProgram::Kind kind);

/// Open-loop fin schedule with a bang-bang depth hold on the dorsal fin.
FinCommand leader_command(const LeaderProgram& program, const AgentState& state, double t);

}  // namespace swarmsim
