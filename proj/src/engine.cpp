#include <algorithm>
#include <cmath>
#include <map>

#include "swarmsim/scenario.hpp"

namespace swarmsim {

namespace {

constexpr std::uint64_t kInitStream = 0;

std::uint64_t vision_stream(std::size_t agent) { return 1 + static_cast<std::uint64_t>(agent); }

void check_in_tank(const Tank& tank, const Vec3& p, std::size_t agent)
{
    if (!tank.contains(p)) {
        throw ConfigError("agent " + std::to_string(agent) + ": initial position lies outside the tank");
    }
}

// Per-follower state carried between ticks.
struct FollowerSlot {
    FollowerMemory memory;
    Rng rng{0};
    // Last valid world-frame heading per source robot.
    std::map<int, Vec3> headings;
};

}  // namespace

Vec3 led_reference_point(const AgentState& agent, const LedLayout& layout)
{
    return body_to_world(agent.pose, layout.pair_midpoint());
}

std::vector<AgentState> sample_initial_conditions(const ScenarioConfig& cfg, std::uint64_t seed)
{
    Rng rng = Rng::stream(cfg.seed_base, seed, kInitStream);
    std::vector<AgentState> states;
    states.reserve(cfg.agents.size());
    for (std::size_t i = 0; i < cfg.agents.size(); ++i) {
        const auto& a = cfg.agents[i];
        AgentState s;
        s.leds_on = a.leds_on;
        if (a.init.pose) {
            s.pose = *a.init.pose;
            check_in_tank(cfg.tank, s.pose.position, i);
        } else {
            const auto& init = a.init;
            for (double x : {init.x.lo, init.x.hi}) {
                for (double y : {init.y.lo, init.y.hi}) {
                    for (double d : {init.depth.lo, init.depth.hi}) {
                        if (!cfg.tank.contains({x, y, -d})) {
                            throw ConfigError("agent " + std::to_string(i) + ": sampling region leaves the tank");
                        }
                    }
                }
            }
            // Draw order is fixed so fixed-pose agents never shift others.
            const double x = rng.uniform(init.x.lo, init.x.hi);
            const double y = rng.uniform(init.y.lo, init.y.hi);
            const double depth = rng.uniform(init.depth.lo, init.depth.hi);
            const double yaw = rng.uniform(-kPi, kPi);
            s.pose.position = {x, y, -depth};
            s.pose.yaw = init.yaw ? *init.yaw : normalize_angle(yaw);
        }
        states.push_back(s);
    }
    return states;
}

TrajectoryLog run(const ScenarioConfig& cfg, std::uint64_t seed)
{
    cfg.validate();
    std::vector<AgentState> states = sample_initial_conditions(cfg, seed);
    const std::size_t n = states.size();
    const std::size_t ticks = cfg.tick_count();
    const std::size_t substeps = cfg.substeps();
    const double f_max = cfg.dynamics.f_max;

    std::vector<FollowerSlot> slots(n);
    for (std::size_t i = 0; i < n; ++i) {
        slots[i].rng = Rng::stream(cfg.seed_base, seed, vision_stream(i));
    }

    TrajectoryLog log;
    log.roles.reserve(n);
    for (const auto& a : cfg.agents) {
        log.roles.push_back(a.role);
    }
    log.ticks.reserve(ticks);

    std::vector<FinCommand> commands(n);
    for (std::size_t k = 0; k < ticks; ++k) {
        const double t = static_cast<double>(k) * cfg.control_period;
        const std::vector<AgentState> snapshot = states;
        TickRecord tick;
        tick.time = t;
        tick.agents.resize(n);

        for (std::size_t i = 0; i < n; ++i) {
            const auto& agent_cfg = cfg.agents[i];
            AgentRecord& rec = tick.agents[i];
            rec.state = snapshot[i];
            if (agent_cfg.role == Role::Leader) {
                commands[i] = leader_command(agent_cfg.program, snapshot[i], t);
                rec.command = commands[i];
                rec.zone = Zone::Lost;
                continue;
            }

            FollowerSlot& slot = slots[i];
            const PoseYaw& pose = snapshot[i].pose;
            const auto blobs = observe(snapshot, i, cfg.leds, cfg.vision, slot.rng);
            const auto groups = group_by_source(blobs);

            std::vector<LeaderEstimate> estimates;
            for (const auto& [source, group] : groups) {
                std::optional<Vec3> prev;
                if (const auto it = slot.headings.find(source); it != slot.headings.end()) {
                    prev = rotate_z(it->second, -pose.yaw);
                }
                auto est = parse_blobs(group, cfg.leds, cfg.vision, prev);
                if (!est) {
                    continue;
                }
                est->source_agent = source;
                if (est->heading_valid) {
                    slot.headings[source] = rotate_z(est->heading, pose.yaw);
                }
                rec.candidates.emplace_back(source, est->distance);
                estimates.push_back(*est);
            }

            std::optional<LeaderEstimate> chosen;
            if (!estimates.empty()) {
                chosen = estimates[select_leader(estimates)];
                rec.leader_id = chosen->source_agent;
            }

            const ControlOutput out =
                cfg.controller_variant == ControllerVariant::Zonal
                    ? follower_command_zonal(chosen, agent_cfg.zone, f_max, slot.memory, t)
                    : follower_command_tanh(chosen, agent_cfg.zone, agent_cfg.tanh, f_max, slot.memory, t);
            slot.memory = out.memory;
            commands[i] = out.command;
            rec.command = out.command;
            rec.estimate = chosen;
            rec.zone = out.zone;
            if (out.target) {
                rec.target_world = body_to_world(pose, *out.target);
            }
        }
        log.ticks.push_back(std::move(tick));

        if (k + 1 == ticks) {
            break;
        }
        for (std::size_t s = 0; s < substeps; ++s) {
            for (std::size_t i = 0; i < n; ++i) {
                states[i] = step(states[i], commands[i], cfg.physics_dt, cfg.dynamics, cfg.tank);
            }
        }
    }
    return log;
}

}  // namespace swarmsim
