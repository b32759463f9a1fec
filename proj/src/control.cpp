#include "swarmsim/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace swarmsim {

namespace {

FinCommand bias_to_pectorals(double caudal, double bias, bool dorsal)
{
    FinCommand cmd;
    cmd.caudal_freq = caudal;
    cmd.pectoral_right_freq = std::max(bias, 0.0);
    cmd.pectoral_left_freq = std::max(-bias, 0.0);
    cmd.dorsal_on = dorsal;
    return cmd;
}

double follow_ramp(double distance, const ZoneParams& zp)
{
    const double span = zp.approach_threshold - zp.dead_radius;
    const double frac = std::clamp((distance - zp.dead_radius) / span, 0.0, 1.0);
    return zp.v_min_frac + (zp.v_max_frac - zp.v_min_frac) * frac;
}

ControlOutput remember(const LeaderEstimate& est, const FinCommand& cmd, Zone zone,
                       std::optional<Vec3> target, double t)
{
    ControlOutput out;
    out.command = cmd;
    out.zone = zone;
    out.target = target;
    out.memory.last_estimate = est;
    out.memory.last_seen_time = t;
    out.memory.last_command = cmd;
    out.memory.dorsal_state = cmd.dorsal_on;
    return out;
}

// Target used while following: the formation point when the heading is
// known, otherwise the leader itself.
Vec3 follow_target(const LeaderEstimate& est, const ZoneParams& zp)
{
    return est.heading_valid ? target_pose(est, zp.follow_distance, zp.follow_angle) : est.leader_position;
}

}  // namespace

std::string_view zone_name(Zone zone)
{
    switch (zone) {
    case Zone::Approach: return "approach";
    case Zone::Follow: return "follow";
    case Zone::Dead: return "dead";
    case Zone::Lost: return "lost";
    }
    return "lost";
}

void ZoneParams::validate() const
{
    if (!(dead_radius >= 0.0) || !(dead_radius < approach_threshold)) {
        throw std::invalid_argument("zone params: need 0 <= dead_radius < approach_threshold");
    }
    if (!(pitch_low < pitch_high)) {
        throw std::invalid_argument("zone params: pitch band needs low < high");
    }
    if (!(v_min_frac >= 0.0 && v_min_frac < v_max_frac && v_max_frac <= 1.0)) {
        throw std::invalid_argument("zone params: need 0 <= v_min_frac < v_max_frac <= 1");
    }
    if (!(follow_distance >= 0.0) || !(turn_deadband >= 0.0) || !(lost_hold_time >= 0.0)) {
        throw std::invalid_argument("zone params: distances and times must be nonnegative");
    }
}

void TanhParams::validate(double f_max) const
{
    if (!(length_scale > 0.0)) {
        throw std::invalid_argument("tanh params: length_scale must be positive");
    }
    if (!(f_cap > 0.0 && f_cap <= f_max)) {
        throw std::invalid_argument("tanh params: f_cap must lie in (0, f_max]");
    }
}

Vec3 target_pose(const LeaderEstimate& estimate, double follow_distance, double follow_angle)
{
    if (!estimate.heading_valid) {
        throw ControlError("target pose needs a valid leader heading");
    }
    const Vec3 offset = rotate_z(estimate.heading, follow_angle) * follow_distance;
    return {estimate.leader_position.x + offset.x, estimate.leader_position.y + offset.y,
            estimate.leader_position.z};
}

Zone classify_zone(double distance, const ZoneParams& zp)
{
    if (distance > zp.approach_threshold) {
        return Zone::Approach;
    }
    if (distance < zp.dead_radius) {
        return Zone::Dead;
    }
    return Zone::Follow;
}

std::pair<double, double> steer_towards(const Vec3& target_body, double f_max, double deadband)
{
    if (target_body.x == 0.0 && target_body.y == 0.0) {
        return {0.0, 0.0};
    }
    const double error = std::atan2(target_body.y, target_body.x);
    if (std::abs(error) <= deadband) {
        return {0.0, 0.0};
    }
    const double gain = f_max / (0.5 * kPi);
    const double diff = std::clamp(gain * error, -f_max, f_max);
    return {std::max(-diff, 0.0), std::max(diff, 0.0)};
}

bool depth_command(double observed_pitch, double band_low, double band_high, bool previous)
{
    if (observed_pitch > band_high) {
        return true;  // leader lower: dive
    }
    if (observed_pitch < band_low) {
        return false;  // leader higher: float up
    }
    return previous;
}

ControlOutput lost_leader_policy(const FollowerMemory& mem, double t, const ZoneParams& zp, double f_max)
{
    ControlOutput out;
    out.memory = mem;
    out.zone = Zone::Lost;
    if (!mem.last_estimate) {
        // Never seen: rotate slowly in place to search.
        out.command = bias_to_pectorals(0.0, 0.25 * f_max, mem.dorsal_state);
        return out;
    }
    if (t - mem.last_seen_time <= zp.lost_hold_time) {
        out.command = mem.last_command;
        return out;
    }
    const Vec3 last_dir{std::cos(mem.last_estimate->bearing), std::sin(mem.last_estimate->bearing), 0.0};
    const auto [left, right] = steer_towards(last_dir, f_max, zp.turn_deadband);
    out.command.caudal_freq = zp.v_min_frac * f_max;
    out.command.pectoral_left_freq = left;
    out.command.pectoral_right_freq = right;
    out.command.dorsal_on = mem.dorsal_state;
    return out;
}

ControlOutput follower_command_zonal(const std::optional<LeaderEstimate>& estimate, const ZoneParams& zp,
                                     double f_max, const FollowerMemory& mem, double t)
{
    if (!estimate) {
        return lost_leader_policy(mem, t, zp, f_max);
    }
    const LeaderEstimate& est = *estimate;
    const bool dorsal = depth_command(est.pitch, zp.pitch_low, zp.pitch_high, mem.dorsal_state);
    const Zone zone = classify_zone(est.distance, zp);

    FinCommand cmd;
    cmd.dorsal_on = dorsal;
    std::optional<Vec3> target;
    if (zone == Zone::Dead) {
        return remember(est, cmd, zone, target, t);
    }
    double caudal = f_max;
    if (zone == Zone::Approach) {
        target = est.leader_position;
    } else {
        target = follow_target(est, zp);
        caudal = f_max * follow_ramp(est.distance, zp);
    }
    const auto [left, right] = steer_towards(*target, f_max, zp.turn_deadband);
    cmd.caudal_freq = caudal;
    cmd.pectoral_left_freq = left;
    cmd.pectoral_right_freq = right;
    return remember(est, cmd, zone, target, t);
}

ControlOutput follower_command_tanh(const std::optional<LeaderEstimate>& estimate, const ZoneParams& zp,
                                    const TanhParams& tp, double f_max, const FollowerMemory& mem, double t)
{
    if (!estimate) {
        return lost_leader_policy(mem, t, zp, f_max);
    }
    const LeaderEstimate& est = *estimate;
    const bool dorsal = depth_command(est.pitch, zp.pitch_low, zp.pitch_high, mem.dorsal_state);
    const Zone zone = classify_zone(est.distance, zp);

    FinCommand cmd;
    cmd.dorsal_on = dorsal;
    if (zone == Zone::Dead) {
        return remember(est, cmd, zone, std::nullopt, t);
    }
    const Vec3 target = follow_target(est, zp);
    // Depth is handled by the dorsal fin, so the speed law sees horizontal distance.
    cmd.caudal_freq = std::min(tp.f_cap * std::tanh(target.norm_xy() / tp.length_scale), f_max);
    const auto [left, right] = steer_towards(target, f_max, zp.turn_deadband);
    cmd.pectoral_left_freq = left;
    cmd.pectoral_right_freq = right;
    return remember(est, cmd, zone, target, t);
}

std::size_t select_leader(std::span<const LeaderEstimate> estimates)
{
    if (estimates.empty()) {
        throw ControlError("select_leader needs at least one estimate");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < estimates.size(); ++i) {
        if (estimates[i].distance < estimates[best].distance) {
            best = i;
        }
    }
    return best;
}

std::string_view program_kind_name(LeaderProgram::Kind kind)
{
    switch (kind) {
    case LeaderProgram::Kind::Straight: return "straight";
    case LeaderProgram::Kind::Circle: return "circle";
    case LeaderProgram::Kind::Piecewise: return "piecewise";
    }
    return "straight";
}

void LeaderProgram::validate(double f_max) const
{
    auto check = [f_max](double caudal, double bias) {
        if (!(caudal >= 0.0 && caudal <= f_max) || !(std::abs(bias) <= f_max)) {
            throw std::invalid_argument("leader program frequencies must lie within [0, f_max]");
        }
    };
    check(caudal_freq, pectoral_bias);
    if (!(depth_setpoint >= 0.0) || !(depth_hysteresis >= 0.0)) {
        throw std::invalid_argument("leader program depth values must be nonnegative");
    }
    if (kind == Kind::Piecewise) {
        if (segments.empty()) {
            throw std::invalid_argument("piecewise leader program needs at least one segment");
        }
        for (const auto& seg : segments) {
            check(seg.caudal_freq, seg.pectoral_bias);
            if (!(seg.duration > 0.0)) {
                throw std::invalid_argument("piecewise segment durations must be positive");
            }
        }
    }
}

FinCommand leader_command(const LeaderProgram& program, const AgentState& state, double t)
{
    double caudal = program.caudal_freq;
    double bias = 0.0;
    switch (program.kind) {
    case LeaderProgram::Kind::Straight:
        break;
    case LeaderProgram::Kind::Circle:
        bias = program.pectoral_bias;
        break;
    case LeaderProgram::Kind::Piecewise: {
        double start = 0.0;
        const ProgramSegment* active = &program.segments.back();
        for (const auto& seg : program.segments) {
            if (t < start + seg.duration) {
                active = &seg;
                break;
            }
            start += seg.duration;
        }
        caudal = active->caudal_freq;
        bias = active->pectoral_bias;
        break;
    }
    }
    const double depth = -state.pose.position.z;
    bool dorsal = state.fins.dorsal_on;
    if (depth < program.depth_setpoint - program.depth_hysteresis) {
        dorsal = true;
    } else if (depth > program.depth_setpoint + program.depth_hysteresis) {
        dorsal = false;
    }
    return bias_to_pectorals(caudal, bias, dorsal);
}

}  // namespace swarmsim
