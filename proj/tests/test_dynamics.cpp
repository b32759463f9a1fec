#include <doctest.h>

#include <vector>

#include "swarmsim/dynamics.hpp"
#include "swarmsim/rng.hpp"

using namespace swarmsim;

namespace {

AgentState at_rest(Vec3 position = {0.0, 0.0, -1000.0})
{
    AgentState s;
    s.pose.position = position;
    return s;
}

Tank open_tank()
{
    Tank t;
    t.shape = Tank::Shape::Cylinder;
    t.diameter = 1e7;
    t.depth = 1e7;
    return t;
}

AgentState run_for(AgentState s, const FinCommand& cmd, double seconds, const DynamicsParams& p, const Tank& tank,
                   double dt = 0.01)
{
    const auto n = static_cast<int>(std::lround(seconds / dt));
    for (int i = 0; i < n; ++i) {
        s = step(s, cmd, dt, p, tank);
    }
    return s;
}

}  // namespace

TEST_CASE("net_forces")
{
    const DynamicsParams p;
    const AgentState rest = at_rest();
    const NetForces idle = net_forces(rest, FinCommand{}, p);
    CHECK(idle.surge == 0.0);
    CHECK(idle.yaw_torque == 0.0);
    CHECK(idle.vertical == doctest::Approx(p.buoyancy));

    AgentState cruising = rest;
    cruising.surge = terminal_speed(p);
    CHECK(net_forces(cruising, {p.f_max, 0.0, 0.0, false}, p).surge == doctest::Approx(0.0).scale(1e-3));

    CHECK(net_forces(rest, {1.0, 2.0, 2.0, false}, p).yaw_torque == 0.0);
    CHECK(net_forces(rest, {0.0, 0.0, 1.0, false}, p).yaw_torque > 0.0);
    CHECK(net_forces(rest, FinCommand{0.0, 0.0, 0.0, true}, p).vertical < 0.0);
}

TEST_CASE("terminal speed calibration and scaling")
{
    DynamicsParams p;
    CHECK(terminal_speed(p) == doctest::Approx(130.0).epsilon(1e-3));
    DynamicsParams k2 = p;
    k2.k_caudal *= 2.0;
    CHECK(terminal_speed(k2) == doctest::Approx(terminal_speed(p) * std::sqrt(2.0)));
    DynamicsParams c2 = p;
    c2.drag_surge *= 2.0;
    CHECK(terminal_speed(c2) == doctest::Approx(terminal_speed(p) / std::sqrt(2.0)));
}

TEST_CASE("full caudal from rest reaches terminal speed within 2% in 30 s")
{
    const DynamicsParams p;
    const AgentState s = run_for(at_rest(), {p.f_max, 0.0, 0.0, true}, 30.0, p, open_tank());
    CHECK(std::abs(s.surge - terminal_speed(p)) <= 0.02 * terminal_speed(p));
}

TEST_CASE("zero command from rest only drifts upward")
{
    const DynamicsParams p;
    const AgentState start = at_rest();
    const AgentState s = run_for(start, FinCommand{}, 2.0, p, open_tank());
    CHECK(s.pose.position.x == start.pose.position.x);
    CHECK(s.pose.position.y == start.pose.position.y);
    CHECK(s.pose.position.z > start.pose.position.z);
    CHECK(s.pose.yaw == start.pose.yaw);
}

TEST_CASE("coasting never reverses and decays monotonically")
{
    const DynamicsParams p;
    Rng rng(21);
    for (int trial = 0; trial < 1000; ++trial) {
        AgentState s = at_rest();
        s.surge = rng.uniform(-200.0, 200.0);
        s.yaw_rate = rng.uniform(-2.0, 2.0);
        const double dt = rng.uniform(0.001, 0.05);
        for (int i = 0; i < 200; ++i) {
            const AgentState next = step(s, FinCommand{}, dt, p, open_tank());
            REQUIRE(std::abs(next.surge) <= std::abs(s.surge));
            REQUIRE(next.surge * s.surge >= 0.0);
            REQUIRE(next.yaw_rate * s.yaw_rate >= 0.0);
            s = next;
        }
    }
}

TEST_CASE("inertial drift lasts longer than a second after the caudal stops")
{
    const DynamicsParams p;
    AgentState s = at_rest();
    s.surge = terminal_speed(p);
    double t = 0.0;
    while (std::abs(s.surge) >= 0.05 * terminal_speed(p)) {
        s = step(s, FinCommand{}, 0.01, p, open_tank());
        t += 0.01;
    }
    CHECK(t > 1.0);
}

TEST_CASE("turning in place does not translate")
{
    const DynamicsParams p;
    AgentState s = at_rest();
    double turned = 0.0;
    while (turned < kTwoPi) {
        const AgentState next = step(s, {0.0, 0.0, p.f_max, false}, 0.01, p, open_tank());
        turned += next.yaw_rate * 0.01;
        s = next;
    }
    CHECK(s.pose.position.norm_xy() == 0.0);
}

TEST_CASE("constant caudal and pectoral differential settle on a circle of radius u / yaw_rate")
{
    const DynamicsParams p;
    const FinCommand cmd{1.5, 0.0, 0.4, true};
    AgentState s = run_for(at_rest(), cmd, 60.0, p, open_tank());
    const double predicted = s.surge / s.yaw_rate;
    std::vector<Vec3> pts;
    const double period = kTwoPi / s.yaw_rate;
    const int n = static_cast<int>(period / 0.01);
    for (int i = 0; i < n; ++i) {
        s = step(s, cmd, 0.01, p, open_tank());
        pts.push_back(s.pose.position);
    }
    Vec3 centre;
    for (const auto& q : pts) {
        centre += q;
    }
    centre = centre / static_cast<double>(pts.size());
    double radius = 0.0;
    for (const auto& q : pts) {
        radius += (q - centre).norm_xy();
    }
    radius /= static_cast<double>(pts.size());
    CHECK(radius == doctest::Approx(predicted).epsilon(0.05));
}

TEST_CASE("step is bit-deterministic and validates dt")
{
    const DynamicsParams p;
    AgentState s = at_rest();
    s.surge = 50.0;
    s.yaw_rate = 0.3;
    const FinCommand cmd{2.0, 0.5, 1.0, true};
    CHECK(step(s, cmd, 0.01, p, open_tank()) == step(s, cmd, 0.01, p, open_tank()));
    CHECK_THROWS(step(s, cmd, 0.0, p, open_tank()));
    CHECK_THROWS(step(s, cmd, 0.06, p, open_tank()));
}

TEST_CASE("commands are saturated to [0, f_max]")
{
    const FinCommand c = saturate({5.0, -1.0, 2.0, true}, 3.0);
    CHECK(c.caudal_freq == 3.0);
    CHECK(c.pectoral_left_freq == 0.0);
    CHECK(c.pectoral_right_freq == 2.0);
    CHECK(c.dorsal_on);
}

TEST_CASE("walls clamp position and zero the contacting velocity")
{
    const DynamicsParams p;
    Tank box;
    box.shape = Tank::Shape::Box;
    AgentState s = at_rest({2197.0, 700.0, -250.0});
    s.surge = 100.0;
    const AgentState next = step(s, {p.f_max, 0.0, 0.0, false}, 0.05, p, box);
    CHECK(next.pose.position.x == 2200.0);
    CHECK(next.surge == 0.0);
    CHECK(box.contains(next.pose.position));

    AgentState top = at_rest({100.0, 100.0, -0.01});
    top.heave = 50.0;
    const AgentState surfaced = step(top, FinCommand{}, 0.05, p, box);
    CHECK(surfaced.pose.position.z == 0.0);
    CHECK(surfaced.heave == 0.0);

    Tank cyl;
    CHECK(cyl.contains({0.0, 3199.0, -10.0}));
    CHECK_FALSE(cyl.contains({0.0, 3201.0, -10.0}));
    CHECK(cyl.clamp({0.0, 4000.0, 10.0}) == Vec3{0.0, 3200.0, 0.0});
}

TEST_CASE("parameter validation names the offending field")
{
    DynamicsParams p;
    CHECK_NOTHROW(p.validate());
    p.drag_yaw = 0.0;
    try {
        p.validate();
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("drag_yaw") != std::string::npos);
    }
}
