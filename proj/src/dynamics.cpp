#include "swarmsim/dynamics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace swarmsim {

namespace {

constexpr double kMmPerM = 1000.0;

// v' = (v + a_drive dt) / (1 + k |v| dt): the linearised-implicit form of
// dv/dt = a_drive - k v|v|. Its fixed point is the exact terminal velocity.
double advance_velocity(double v, double drive_accel, double drag_per_speed, double dt)
{
    return (v + drive_accel * dt) / (1.0 + drag_per_speed * std::abs(v) * dt);
}

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(std::string("dynamics parameter '") + name + "' must be positive");
    }
}

}  // namespace

void DynamicsParams::validate() const
{
    require_positive(mass, "mass");
    require_positive(yaw_inertia, "yaw_inertia");
    require_positive(k_caudal, "k_caudal");
    require_positive(k_pectoral, "k_pectoral");
    require_positive(pectoral_arm, "pectoral_arm");
    require_positive(k_dorsal, "k_dorsal");
    require_positive(buoyancy, "buoyancy");
    require_positive(drag_surge, "drag_surge");
    require_positive(drag_yaw, "drag_yaw");
    require_positive(drag_heave, "drag_heave");
    require_positive(f_max, "f_max");
    require_positive(body_length, "body_length");
}

bool Tank::contains(const Vec3& p) const
{
    if (p.z > 0.0 || p.z < -depth) {
        return false;
    }
    if (shape == Shape::Box) {
        return p.x >= 0.0 && p.x <= size_x && p.y >= 0.0 && p.y <= size_y;
    }
    return p.norm_xy() <= 0.5 * diameter;
}

Vec3 Tank::clamp(const Vec3& p) const
{
    Vec3 out = p;
    out.z = std::clamp(p.z, -depth, 0.0);
    if (shape == Shape::Box) {
        out.x = std::clamp(p.x, 0.0, size_x);
        out.y = std::clamp(p.y, 0.0, size_y);
    } else {
        const double radius = 0.5 * diameter;
        const double r = p.norm_xy();
        if (r > radius) {
            out.x = p.x * radius / r;
            out.y = p.y * radius / r;
        }
    }
    return out;
}

FinCommand saturate(const FinCommand& cmd, double f_max)
{
    auto clip = [f_max](double f) { return std::isfinite(f) ? std::clamp(f, 0.0, f_max) : 0.0; };
    return {clip(cmd.caudal_freq), clip(cmd.pectoral_left_freq), clip(cmd.pectoral_right_freq),
            cmd.dorsal_on};
}

NetForces net_forces(const AgentState& state, const FinCommand& cmd, const DynamicsParams& params)
{
    const FinCommand fins = saturate(cmd, params.f_max);
    const double dorsal_freq = fins.dorsal_on ? params.f_max : 0.0;
    NetForces f;
    f.surge = params.k_caudal * fins.caudal_freq - params.drag_surge * state.surge * std::abs(state.surge);
    f.yaw_torque = params.k_pectoral * (fins.pectoral_right_freq - fins.pectoral_left_freq) * params.pectoral_arm
                   - params.drag_yaw * state.yaw_rate * std::abs(state.yaw_rate);
    f.vertical = params.buoyancy - params.k_dorsal * dorsal_freq
                 - params.drag_heave * state.heave * std::abs(state.heave);
    return f;
}

AgentState step(const AgentState& state, const FinCommand& cmd, double dt,
                const DynamicsParams& params, const Tank& tank)
{
    if (!(dt > 0.0) || dt > 0.05) {
        throw std::invalid_argument("physics step dt must lie in (0, 0.05] s");
    }
    const FinCommand fins = saturate(cmd, params.f_max);
    const double dorsal_freq = fins.dorsal_on ? params.f_max : 0.0;

    const double surge_accel = kMmPerM * params.k_caudal * fins.caudal_freq / params.mass;
    const double surge_drag = kMmPerM * params.drag_surge / params.mass;
    const double yaw_accel = kMmPerM * params.k_pectoral * params.pectoral_arm
                             * (fins.pectoral_right_freq - fins.pectoral_left_freq) / params.yaw_inertia;
    const double yaw_drag = kMmPerM * params.drag_yaw / params.yaw_inertia;
    const double heave_accel = kMmPerM * (params.buoyancy - params.k_dorsal * dorsal_freq) / params.mass;
    const double heave_drag = kMmPerM * params.drag_heave / params.mass;

    AgentState next = state;
    next.fins = fins;
    next.surge = advance_velocity(state.surge, surge_accel, surge_drag, dt);
    next.yaw_rate = advance_velocity(state.yaw_rate, yaw_accel, yaw_drag, dt);
    next.heave = advance_velocity(state.heave, heave_accel, heave_drag, dt);

    next.pose.yaw = normalize_angle(state.pose.yaw + next.yaw_rate * dt);
    const Vec3 heading = next.pose.heading();
    const Vec3 moved = state.pose.position + heading * (next.surge * dt) + Vec3{0.0, 0.0, next.heave * dt};

    const Vec3 clamped = tank.clamp(moved);
    if (clamped.z != moved.z) {
        next.heave = 0.0;
    }
    if (clamped.x != moved.x || clamped.y != moved.y) {
        next.surge = 0.0;
    }
    next.pose.position = clamped;
    return next;
}

double terminal_speed(const DynamicsParams& params)
{
    return std::sqrt(params.k_caudal * params.f_max / params.drag_surge);
}

}  // namespace swarmsim
