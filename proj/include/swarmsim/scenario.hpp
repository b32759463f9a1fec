#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swarmsim/control.hpp"
#include "swarmsim/dynamics.hpp"
#include "swarmsim/vision.hpp"

namespace swarmsim {

/// Malformed or invalid scenario document. `what()` carries the line and
/// field when known.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Role { Leader, Follower };
enum class ControllerVariant { Zonal, Tanh };

std::string_view role_name(Role role);
std::string_view variant_name(ControllerVariant variant);

struct Interval {
    double lo{0.0};
    double hi{0.0};
};

/// Initial placement: a fixed pose, or a box to sample uniformly with a
/// uniformly random heading unless `yaw` is given.
struct InitSpec {
    std::optional<PoseYaw> pose;
    Interval x;
    Interval y;
    Interval depth;  // mm below the surface
    std::optional<double> yaw;
};

struct AgentConfig {
    Role role{Role::Follower};
    bool leds_on{false};
    LeaderProgram program;
    ZoneParams zone;
    TanhParams tanh;
    InitSpec init;
};

struct ScenarioConfig {
    std::string name{"custom"};
    Tank tank;
    double duration{60.0};
    double control_period{0.2};
    double physics_dt{0.01};
    std::uint64_t seed_base{0};
    ControllerVariant controller_variant{ControllerVariant::Zonal};
    VisionParams vision;
    LedLayout leds;
    DynamicsParams dynamics;
    std::vector<AgentConfig> agents;

    std::size_t tick_count() const;
    std::size_t substeps() const;
    std::size_t leader_count() const;

    /// Throws ConfigError naming the violated invariant.
    void validate() const;
};

/// Parses and validates a scenario document (YAML). Unknown keys are rejected.
ScenarioConfig load_scenario(std::string_view text);

/// Fully defaulted YAML echo of a config; load_scenario accepts it back.
std::string dump_scenario(const ScenarioConfig& cfg);

std::vector<std::string> builtin_scenario_names();
/// Source text of a built-in scenario, or nullopt for unknown names.
std::optional<std::string> builtin_scenario_text(std::string_view name);
/// Built-in scenario by name; throws ConfigError for unknown names.
ScenarioConfig builtin_scenario(std::string_view name);

/// Deterministic initial states for one seed. Throws ConfigError when a
/// sampling region leaves the tank.
std::vector<AgentState> sample_initial_conditions(const ScenarioConfig& cfg, std::uint64_t seed);

struct AgentRecord {
    AgentState state;
    FinCommand command;
    std::optional<LeaderEstimate> estimate;
    Zone zone{Zone::Lost};
    std::optional<Vec3> target_world;
    int leader_id{-1};
    // (source robot, estimated distance) for every leader parsed this tick.
    std::vector<std::pair<int, double>> candidates;
};

struct TickRecord {
    double time{0.0};
    std::vector<AgentRecord> agents;
};

struct TrajectoryLog {
    std::vector<Role> roles;
    std::vector<TickRecord> ticks;
};

/// Perception-then-movement loop: each tick every follower perceives the
/// same frozen snapshot, commands are held for the physics substeps.
TrajectoryLog run(const ScenarioConfig& cfg, std::uint64_t seed);

/// World position of the posterior LED pair (the point followers estimate).
Vec3 led_reference_point(const AgentState& agent, const LedLayout& layout);

}  // namespace swarmsim
