#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swarmsim {

// Lengths are millimeters, angles radians. World frame: x/y horizontal, z up,
// water surface at z = 0.

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Thrown when a direction or angle is undefined (zero-length input).
class GeometryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct Vec3 {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr bool operator==(const Vec3&) const = default;

    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    double norm_xy() const { return std::hypot(x, y); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// Camera-frame point seen from a follower: p forward, q left, r DOWN.
struct PqrPoint {
    double p{0.0};
    double q{0.0};
    double r{0.0};
};

/// Horizontal pose. Pitch and roll are identically zero for these robots.
struct PoseYaw {
    Vec3 position;
    double yaw{0.0};  // CCW from world +x, kept in [-pi, pi)

    Vec3 heading() const { return {std::cos(yaw), std::sin(yaw), 0.0}; }
    constexpr bool operator==(const PoseYaw&) const = default;
};

/// Wraps an angle into [-pi, pi).
double normalize_angle(double a);

/// Counterclockwise rotation about +z.
Vec3 rotate_z(const Vec3& v, double angle);

/// World point -> observer body frame (x forward, y left, z up).
Vec3 world_to_body(const PoseYaw& observer, const Vec3& target);
Vec3 body_to_world(const PoseYaw& observer, const Vec3& body);

constexpr PqrPoint body_to_pqr(const Vec3& b) { return {b.x, b.y, -b.z}; }
constexpr Vec3 pqr_to_body(const PqrPoint& c) { return {c.p, c.q, -c.r}; }

PqrPoint world_to_pqr(const PoseYaw& observer, const Vec3& target);
Vec3 pqr_to_world(const PoseYaw& observer, const PqrPoint& pt);

/// Horizontal bearing, atan2(q, p), in [-pi, pi); positive = left.
double bearing_of(const PqrPoint& pt);

/// Pitch atan(r / sqrt(p^2 + q^2)); positive when the target is lower.
double pitch_of(const PqrPoint& pt);

}  // namespace swarmsim
