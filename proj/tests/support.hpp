#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "swarmsim/dynamics.hpp"
#include "swarmsim/geometry.hpp"
#include "swarmsim/vision.hpp"

namespace swarmsim::testing {

inline VisionParams clean_vision()
{
    VisionParams p;
    p.noise_sigma = 0.0;
    p.reflection_rate = 0.0;
    return p;
}

/// Follower at `origin` facing `follower_yaw`; leader pair midpoint at
/// `range` (3D), body-frame `bearing`, height offset `dz`; leader yaw relative
/// to the follower's.
inline std::vector<AgentState> place_leader(double range, double bearing, double dz, double relative_yaw,
                                            double follower_yaw = 0.0, Vec3 origin = {0.0, 0.0, -800.0})
{
    AgentState follower;
    follower.pose = {origin, follower_yaw};
    const double rho = std::sqrt(std::max(range * range - dz * dz, 0.0));
    AgentState leader;
    leader.leds_on = true;
    leader.pose.position = origin + rotate_z({rho * std::cos(bearing), rho * std::sin(bearing), dz}, follower_yaw);
    leader.pose.yaw = normalize_angle(follower_yaw + relative_yaw);
    return {follower, leader};
}

/// Noise-free blob of one LED of `world[source]` as seen by `world[observer]`.
inline BlobObservation led_blob(const std::vector<AgentState>& world, std::size_t observer, std::size_t source,
                                const Vec3& led_offset, bool mirror = false, double surface_z = 0.0)
{
    Vec3 led = body_to_world(world[source].pose, led_offset);
    if (mirror) {
        led.z = 2.0 * surface_z - led.z;
    }
    const Vec3 rel = world_to_body(world[observer].pose, led);
    BlobObservation b;
    b.azimuth = normalize_angle(std::atan2(rel.y, rel.x));
    b.elevation = std::atan2(-rel.z, rel.norm_xy());
    b.source_agent = static_cast<int>(source);
    b.is_reflection = mirror;
    return b;
}

inline double angle_between(const Vec3& a, const Vec3& b)
{
    return std::abs(normalize_angle(std::atan2(a.y, a.x) - std::atan2(b.y, b.x)));
}

}  // namespace swarmsim::testing
