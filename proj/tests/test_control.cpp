#include <doctest.h>

#include <vector>

#include "swarmsim/control.hpp"
#include "swarmsim/rng.hpp"

using namespace swarmsim;

namespace {

LeaderEstimate estimate_at(const Vec3& position, double heading_angle, bool heading_valid = true)
{
    LeaderEstimate e;
    e.leader_position = position;
    e.distance = position.norm();
    const PqrPoint pqr = body_to_pqr(position);
    e.bearing = bearing_of(pqr);
    e.pitch = pitch_of(pqr);
    e.heading = {std::cos(heading_angle), std::sin(heading_angle), 0.0};
    e.heading_valid = heading_valid;
    e.source_agent = 1;
    return e;
}

LeaderEstimate mirrored(const LeaderEstimate& e)
{
    LeaderEstimate m = e;
    m.leader_position.y = -e.leader_position.y;
    m.bearing = -e.bearing;
    m.heading.y = -e.heading.y;
    return m;
}

ZoneParams zone_with(double alpha_deg, double l = 200.0)
{
    ZoneParams zp;
    zp.follow_angle = deg_to_rad(alpha_deg);
    zp.follow_distance = l;
    return zp;
}

constexpr double kFmax = 3.0;

}  // namespace

TEST_CASE("target_pose")
{
    const LeaderEstimate e = estimate_at({500.0, 0.0, 0.0}, 0.0);
    const Vec3 ahead = target_pose(e, 200.0, 0.0);
    CHECK(ahead.x == doctest::Approx(700.0));
    CHECK(ahead.y == doctest::Approx(0.0).scale(1.0));
    const Vec3 left = target_pose(e, 200.0, deg_to_rad(90.0));
    CHECK(left.x == doctest::Approx(500.0));
    CHECK(left.y == doctest::Approx(200.0));
    const Vec3 behind = target_pose(e, 200.0, kPi);
    CHECK(behind.x == doctest::Approx(300.0));
    CHECK(behind.y == doctest::Approx(0.0).scale(1.0));

    const LeaderEstimate below = estimate_at({300.0, 100.0, -150.0}, 0.3);
    CHECK(target_pose(below, 150.0, 1.0).z == -150.0);
    CHECK_THROWS_AS(target_pose(estimate_at({500.0, 0.0, 0.0}, 0.0, false), 200.0, 0.0), ControlError);
}

TEST_CASE("classify_zone examples and boundary ownership")
{
    const ZoneParams zp;
    CHECK(classify_zone(600.0, zp) == Zone::Approach);
    CHECK(classify_zone(250.0, zp) == Zone::Follow);
    CHECK(classify_zone(100.0, zp) == Zone::Dead);
    CHECK(classify_zone(zp.approach_threshold, zp) == Zone::Follow);
    CHECK(classify_zone(zp.dead_radius, zp) == Zone::Follow);
    CHECK(classify_zone(std::nextafter(zp.approach_threshold, 1e9), zp) == Zone::Approach);
    CHECK(classify_zone(std::nextafter(zp.dead_radius, 0.0), zp) == Zone::Dead);
    CHECK(classify_zone(0.0, zp) == Zone::Dead);
}

TEST_CASE("property: zones partition [0, inf) exactly")
{
    Rng rng(31);
    for (int i = 0; i < 10000; ++i) {
        ZoneParams zp;
        zp.dead_radius = rng.uniform(0.0, 300.0);
        zp.approach_threshold = zp.dead_radius + rng.uniform(1.0, 1000.0);
        const double d = rng.uniform(0.0, 2000.0);
        const Zone z = classify_zone(d, zp);
        const bool dead = d < zp.dead_radius;
        const bool approach = d > zp.approach_threshold;
        const bool follow = !dead && !approach;
        REQUIRE(static_cast<int>(dead) + static_cast<int>(approach) + static_cast<int>(follow) == 1);
        REQUIRE(z == (dead ? Zone::Dead : approach ? Zone::Approach : Zone::Follow));
        REQUIRE(classify_zone(zp.dead_radius, zp) == Zone::Follow);
        REQUIRE(classify_zone(zp.approach_threshold, zp) == Zone::Follow);
    }
}

TEST_CASE("zonal controller examples")
{
    const FollowerMemory mem;
    const ZoneParams zp = zone_with(90.0);

    const ControlOutput far = follower_command_zonal(estimate_at({800.0, 0.0, 0.0}, 0.0), zp, kFmax, mem, 1.0);
    CHECK(far.zone == Zone::Approach);
    CHECK(far.command.caudal_freq == kFmax);
    CHECK(far.command.pectoral_left_freq == far.command.pectoral_right_freq);

    const ControlOutput flank = follower_command_zonal(estimate_at({250.0, 0.0, 0.0}, 0.0), zp, kFmax, mem, 1.0);
    CHECK(flank.zone == Zone::Follow);
    REQUIRE(flank.target);
    const double expected_error = std::atan2(200.0, 250.0);
    CHECK(std::atan2(flank.target->y, flank.target->x) == doctest::Approx(expected_error));
    CHECK(flank.command.pectoral_right_freq > flank.command.pectoral_left_freq);
    CHECK(flank.command.pectoral_right_freq == doctest::Approx(kFmax / (kPi / 2) * expected_error));

    const ControlOutput close = follower_command_zonal(estimate_at({100.0, 0.0, 0.0}, 0.0), zp, kFmax, mem, 1.0);
    CHECK(close.zone == Zone::Dead);
    CHECK(close.command.caudal_freq == 0.0);
    CHECK(close.command.pectoral_left_freq == 0.0);
    CHECK(close.command.pectoral_right_freq == 0.0);

    const ControlOutput blind = follower_command_zonal(estimate_at({300.0, 100.0, 0.0}, 0.0, false), zp, kFmax, mem, 1.0);
    REQUIRE(blind.target);
    CHECK(blind.target->x == 300.0);
    CHECK(blind.target->y == 100.0);

    const double ramp_mid = (300.0 - zp.dead_radius) / (zp.approach_threshold - zp.dead_radius);
    const ControlOutput mid = follower_command_zonal(estimate_at({300.0, 0.0, 0.0}, 0.0), zp, kFmax, mem, 1.0);
    CHECK(mid.command.caudal_freq == doctest::Approx(kFmax * (0.2 + 0.8 * ramp_mid)));
}

TEST_CASE("tanh controller examples")
{
    const FollowerMemory mem;
    ZoneParams zp = zone_with(0.0, 0.0);
    TanhParams tp;
    const ControlOutput at_goal = follower_command_tanh(estimate_at({0.0, 300.0, 0.0}, 0.0), zp, tp, kFmax, mem, 0.0);
    CHECK(at_goal.command.caudal_freq == doctest::Approx(kFmax * std::tanh(1.0)));

    zp = zone_with(-90.0, 300.0);
    const ControlOutput zero = follower_command_tanh(estimate_at({0.0, 300.0, 0.0}, 0.0), zp, tp, kFmax, mem, 0.0);
    CHECK(zero.command.caudal_freq == doctest::Approx(0.0).scale(1.0));

    const ControlOutput dead = follower_command_tanh(estimate_at({50.0, 0.0, 0.0}, 0.0), zp, tp, kFmax, mem, 0.0);
    CHECK(dead.zone == Zone::Dead);
    CHECK(dead.command.caudal_freq == 0.0);
}

TEST_CASE("property: follow-zone speed laws are monotone")
{
    Rng rng(32);
    const FollowerMemory mem;
    for (int i = 0; i < 2000; ++i) {
        ZoneParams zp = zone_with(rng.uniform(-180.0, 180.0), rng.uniform(50.0, 300.0));
        const double heading = rng.uniform(-kPi, kPi);
        const double bearing = rng.uniform(-kPi, kPi);
        const double d1 = rng.uniform(zp.dead_radius, zp.approach_threshold);
        const double d2 = rng.uniform(d1, zp.approach_threshold);
        const Vec3 dir{std::cos(bearing), std::sin(bearing), 0.0};
        const double c1 = follower_command_zonal(estimate_at(dir * d1, heading), zp, kFmax, mem, 0.0).command.caudal_freq;
        const double c2 = follower_command_zonal(estimate_at(dir * d2, heading), zp, kFmax, mem, 0.0).command.caudal_freq;
        REQUIRE(c1 <= c2);

        TanhParams tp;
        tp.length_scale = rng.uniform(50.0, 600.0);
        zp.dead_radius = 0.0;
        zp.follow_distance = 0.0;
        const double c3 = follower_command_tanh(estimate_at(dir * d1, heading), zp, tp, kFmax, mem, 0.0).command.caudal_freq;
        const double c4 = follower_command_tanh(estimate_at(dir * d2, heading), zp, tp, kFmax, mem, 0.0).command.caudal_freq;
        REQUIRE(c3 <= c4);
        REQUIRE(c4 <= tp.f_cap);
    }
}

TEST_CASE("property: negating alpha on a mirrored world mirrors the command")
{
    Rng rng(33);
    const FollowerMemory mem;
    for (int i = 0; i < 2000; ++i) {
        const ZoneParams zp = zone_with(rng.uniform(-180.0, 180.0), rng.uniform(0.0, 300.0));
        ZoneParams zm = zp;
        zm.follow_angle = -zp.follow_angle;
        const double bearing = rng.uniform(-kPi, kPi);
        const double d = rng.uniform(50.0, 900.0);
        const LeaderEstimate e = estimate_at({d * std::cos(bearing), d * std::sin(bearing), rng.uniform(-200.0, 200.0)},
                                             rng.uniform(-kPi, kPi), rng.bernoulli(0.8));
        const LeaderEstimate m = mirrored(e);
        const TanhParams tp;
        for (int variant = 0; variant < 2; ++variant) {
            const FinCommand a = variant == 0 ? follower_command_zonal(e, zp, kFmax, mem, 0.0).command
                                              : follower_command_tanh(e, zp, tp, kFmax, mem, 0.0).command;
            const FinCommand b = variant == 0 ? follower_command_zonal(m, zm, kFmax, mem, 0.0).command
                                              : follower_command_tanh(m, zm, tp, kFmax, mem, 0.0).command;
            REQUIRE(a.caudal_freq == b.caudal_freq);
            REQUIRE(a.pectoral_left_freq == b.pectoral_right_freq);
            REQUIRE(a.pectoral_right_freq == b.pectoral_left_freq);
            REQUIRE(a.dorsal_on == b.dorsal_on);
        }
    }
}

TEST_CASE("property: dead zone never thrusts")
{
    Rng rng(34);
    for (int i = 0; i < 2000; ++i) {
        ZoneParams zp = zone_with(rng.uniform(-180.0, 180.0));
        zp.dead_radius = rng.uniform(50.0, 300.0);
        FollowerMemory mem;
        mem.dorsal_state = rng.bernoulli(0.5);
        const double d = rng.uniform(1.0, zp.dead_radius * 0.999);
        const double bearing = rng.uniform(-kPi, kPi);
        const LeaderEstimate e = estimate_at({d * std::cos(bearing), d * std::sin(bearing), 0.0}, rng.uniform(-kPi, kPi),
                                             rng.bernoulli(0.5));
        const FinCommand a = follower_command_zonal(e, zp, kFmax, mem, 0.0).command;
        const FinCommand b = follower_command_tanh(e, zp, TanhParams{}, kFmax, mem, 0.0).command;
        for (const FinCommand& c : {a, b}) {
            REQUIRE(c.caudal_freq == 0.0);
            REQUIRE(c.pectoral_left_freq == 0.0);
            REQUIRE(c.pectoral_right_freq == 0.0);
        }
    }
}

TEST_CASE("depth_command")
{
    const double lo = deg_to_rad(-1.0);
    const double hi = deg_to_rad(1.0);
    CHECK(depth_command(deg_to_rad(5.0), lo, hi, false));
    CHECK_FALSE(depth_command(deg_to_rad(-5.0), lo, hi, true));
    CHECK_FALSE(depth_command(deg_to_rad(-42.0), deg_to_rad(-45.0), deg_to_rad(-40.0), false));
    CHECK(depth_command(hi, lo, hi, true));
    CHECK_FALSE(depth_command(hi, lo, hi, false));
    CHECK(depth_command(lo, lo, hi, true));
}

TEST_CASE("property: depth band hysteresis never chatters")
{
    Rng rng(35);
    for (int i = 0; i < 2000; ++i) {
        const double lo = deg_to_rad(rng.uniform(-60.0, 10.0));
        const double hi = lo + deg_to_rad(rng.uniform(0.5, 10.0));
        bool state = rng.bernoulli(0.5);
        const bool initial = state;
        for (int k = 0; k < 50; ++k) {
            state = depth_command(rng.uniform(lo, hi), lo, hi, state);
            REQUIRE(state == initial);
        }
        REQUIRE(depth_command(hi + 1e-3, lo, hi, state));
        REQUIRE_FALSE(depth_command(lo - 1e-3, lo, hi, state));
    }
}

TEST_CASE("select_leader")
{
    std::vector<LeaderEstimate> e(2);
    e[0].distance = 900.0;
    e[1].distance = 400.0;
    CHECK(select_leader(e) == 1);
    e[0].distance = 400.0;
    CHECK(select_leader(e) == 0);
    CHECK(select_leader(std::span<const LeaderEstimate>(e.data(), 1)) == 0);
    CHECK_THROWS_AS(select_leader(std::span<const LeaderEstimate>{}), ControlError);
}

TEST_CASE("lost leader policy")
{
    const ZoneParams zp;
    FollowerMemory mem;
    mem.last_estimate = estimate_at({0.0, 400.0, 0.0}, 0.0);
    mem.last_seen_time = 10.0;
    mem.last_command = {2.0, 0.5, 0.0, true};
    mem.dorsal_state = true;

    const ControlOutput recent = lost_leader_policy(mem, 10.4, zp, kFmax);
    CHECK(recent.zone == Zone::Lost);
    CHECK(recent.command == mem.last_command);

    const ControlOutput later = lost_leader_policy(mem, 15.0, zp, kFmax);
    CHECK(later.command.caudal_freq == doctest::Approx(zp.v_min_frac * kFmax));
    CHECK(later.command.pectoral_right_freq > later.command.pectoral_left_freq);

    const ControlOutput search = lost_leader_policy(FollowerMemory{}, 3.0, zp, kFmax);
    CHECK(search.command.caudal_freq == 0.0);
    CHECK(search.command.pectoral_right_freq > 0.0);

    const ControlOutput via_controller = follower_command_zonal(std::nullopt, zp, kFmax, mem, 10.4);
    CHECK(via_controller.command == mem.last_command);
}

TEST_CASE("leader programs")
{
    AgentState s;
    s.pose.position.z = -500.0;
    LeaderProgram straight;
    straight.caudal_freq = 2.0;
    straight.depth_setpoint = 500.0;
    const FinCommand a = leader_command(straight, s, 12.3);
    CHECK(a.caudal_freq == 2.0);
    CHECK(a.pectoral_left_freq == 0.0);
    CHECK(a.pectoral_right_freq == 0.0);

    LeaderProgram circle = straight;
    circle.kind = LeaderProgram::Kind::Circle;
    circle.pectoral_bias = 0.5;
    CHECK(leader_command(circle, s, 0.0).pectoral_right_freq == 0.5);
    CHECK(leader_command(circle, s, 99.0).pectoral_right_freq == 0.5);
    CHECK(leader_command(circle, s, 99.0).pectoral_left_freq == 0.0);

    LeaderProgram pw;
    pw.kind = LeaderProgram::Kind::Piecewise;
    pw.segments = {{10.0, 1.0, 0.0}, {5.0, 2.0, -0.3}};
    CHECK(leader_command(pw, s, 9.99).caudal_freq == 1.0);
    CHECK(leader_command(pw, s, 10.0).caudal_freq == 2.0);
    CHECK(leader_command(pw, s, 10.0).pectoral_left_freq == doctest::Approx(0.3));
    CHECK(leader_command(pw, s, 100.0).caudal_freq == 2.0);

    AgentState shallow = s;
    shallow.pose.position.z = -480.0;
    CHECK(leader_command(straight, shallow, 0.0).dorsal_on);
    AgentState deep = s;
    deep.pose.position.z = -520.0;
    deep.fins.dorsal_on = true;
    CHECK_FALSE(leader_command(straight, deep, 0.0).dorsal_on);
    s.fins.dorsal_on = true;
    CHECK(leader_command(straight, s, 0.0).dorsal_on);

    LeaderProgram bad = straight;
    bad.caudal_freq = 4.0;
    CHECK_THROWS(bad.validate(3.0));
}

TEST_CASE("parameter validation")
{
    ZoneParams zp;
    CHECK_NOTHROW(zp.validate());
    zp.dead_radius = 600.0;
    CHECK_THROWS(zp.validate());
    zp = ZoneParams{};
    zp.pitch_low = zp.pitch_high;
    CHECK_THROWS(zp.validate());
    TanhParams tp;
    CHECK_NOTHROW(tp.validate(3.0));
    tp.f_cap = 4.0;
    CHECK_THROWS(tp.validate(3.0));
    tp = TanhParams{};
    tp.length_scale = 0.0;
    CHECK_THROWS(tp.validate(3.0));
}
