#include "swarmsim/geometry.hpp"

namespace swarmsim {

double normalize_angle(double a)
{
    double wrapped = std::fmod(a + kPi, kTwoPi);
    if (wrapped < 0.0) {
        wrapped += kTwoPi;
    }
    wrapped -= kPi;
    // fmod can land exactly on +pi after the shift for inputs just below -pi.
    return wrapped >= kPi ? wrapped - kTwoPi : wrapped;
}

Vec3 rotate_z(const Vec3& v, double angle)
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

Vec3 world_to_body(const PoseYaw& observer, const Vec3& target)
{
    return rotate_z(target - observer.position, -observer.yaw);
}

Vec3 body_to_world(const PoseYaw& observer, const Vec3& body)
{
    return observer.position + rotate_z(body, observer.yaw);
}

PqrPoint world_to_pqr(const PoseYaw& observer, const Vec3& target)
{
    return body_to_pqr(world_to_body(observer, target));
}

Vec3 pqr_to_world(const PoseYaw& observer, const PqrPoint& pt)
{
    return body_to_world(observer, pqr_to_body(pt));
}

double bearing_of(const PqrPoint& pt)
{
    if (pt.p == 0.0 && pt.q == 0.0) {
        throw GeometryError("bearing undefined: target on the observer's vertical axis");
    }
    return normalize_angle(std::atan2(pt.q, pt.p));
}

double pitch_of(const PqrPoint& pt)
{
    const double horizontal = std::hypot(pt.p, pt.q);
    if (horizontal == 0.0) {
        throw GeometryError("pitch undefined: target directly above or below");
    }
    return std::atan(pt.r / horizontal);
}

}  // namespace swarmsim
