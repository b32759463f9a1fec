#pragma once

#include "swarmsim/geometry.hpp"

namespace swarmsim {

/// Fin flapping frequencies in Hz. Fins only push forward: there is no
/// reverse thrust and no active braking.
struct FinCommand {
    double caudal_freq{0.0};
    double pectoral_left_freq{0.0};
    double pectoral_right_freq{0.0};
    bool dorsal_on{false};

    bool operator==(const FinCommand&) const = default;
};

struct AgentState {
    PoseYaw pose;
    double surge{0.0};     // mm/s along the body axis
    double yaw_rate{0.0};  // rad/s, CCW positive
    double heave{0.0};     // mm/s, world z (up positive)
    FinCommand fins;
    bool leds_on{false};

    bool operator==(const AgentState&) const = default;
};

/// Surge-yaw-heave model constants. Forces in N, lengths in mm, mass in kg,
/// so accelerations pick up a factor 1000 (m -> mm).
///
/// Defaults are calibrated, not measured: top speed sqrt(k_caudal * f_max /
/// drag_surge) = 130 mm/s = 1 BL/s, and a coasting time to 5% of top speed
/// near 10 s so the robots visibly drift past their targets.
struct DynamicsParams {
    double mass{0.2};               // kg, includes added mass
    double yaw_inertia{100.0};      // kg mm^2
    double k_caudal{0.0169};        // N/Hz
    double k_pectoral{0.01};        // N/Hz
    double pectoral_arm{20.0};      // mm, lever arm of the pectoral thrust
    double k_dorsal{0.02 / 3.0};    // N/Hz; dorsal downthrust = k_dorsal * f_max
    double buoyancy{0.01};          // N, net upward force with the dorsal fin off
    double drag_surge{3.0e-6};      // N / (mm/s)^2
    double drag_yaw{2.0};           // N mm / (rad/s)^2
    double drag_heave{1.6e-5};      // N / (mm/s)^2
    double f_max{3.0};              // Hz
    double body_length{130.0};      // mm

    /// Throws std::invalid_argument naming the first non-positive field.
    void validate() const;
};

struct Tank {
    enum class Shape { Box, Cylinder };

    Shape shape{Shape::Cylinder};
    // Box spans x in [0, size_x], y in [0, size_y]; a cylinder is centred on
    // the origin. Both span z in [-depth, 0] (water surface at z = 0).
    double size_x{2200.0};
    double size_y{1400.0};
    double diameter{6400.0};
    double depth{2400.0};

    bool contains(const Vec3& p) const;
    /// Nearest point inside the tank.
    Vec3 clamp(const Vec3& p) const;
};

struct NetForces {
    double surge{0.0};       // N
    double yaw_torque{0.0};  // N mm
    double vertical{0.0};    // N, up positive
};

FinCommand saturate(const FinCommand& cmd, double f_max);

NetForces net_forces(const AgentState& state, const FinCommand& cmd, const DynamicsParams& params);

/// One semi-implicit Euler step: velocities from forces first, then positions
/// from the new velocities. Drag is applied implicitly in the velocity update
/// so coasting can never flip the sign of a velocity. Position is clamped to
/// the tank and the velocity pushing into the wall is zeroed.
AgentState step(const AgentState& state, const FinCommand& cmd, double dt,
                const DynamicsParams& params, const Tank& tank);

/// Steady surge speed at full caudal frequency, mm/s.
double terminal_speed(const DynamicsParams& params);

}  // namespace swarmsim
