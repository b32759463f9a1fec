#include <algorithm>
#include <array>

#include "swarmsim/scenario.hpp"

namespace swarmsim {

namespace {

struct Builtin {
    std::string_view name;
    std::string_view text;
};

constexpr std::string_view kStraight = R"(name: sec41_straight
duration: 60
controller_variant: zonal
tank: {shape: cylinder, diameter: 6400, depth: 2400}
vision: {reflection_rate: 0.02}
agents:
  - role: leader
    program: {kind: straight, caudal_freq: 1.0, depth_setpoint: 600}
    init:
      pose: {x: -2200, y: -200, depth: 600, yaw: 0}
  - role: follower
    controller: {follow_distance: 200, follow_angle: 90, pitch_band: [-1, 1]}
    init:
      region: {x: [-2900, -2700], y: [-700, 300], depth: [500, 700]}
)";

constexpr std::string_view kCircleOutside = R"(name: sec42_circle_outside
duration: 120
controller_variant: zonal
tank: {shape: cylinder, diameter: 6400, depth: 2400}
vision: {reflection_rate: 0.02}
agents:
  - role: leader
    program: {kind: circle, caudal_freq: 1.0, pectoral_bias: 0.156, depth_setpoint: 550}
    init:
      pose: {x: 0, y: -600, depth: 550, yaw: 0}
  - role: follower
    controller: {follow_distance: 150, follow_angle: -90, pitch_band: [-45, -40], dead_radius: 190}
    init:
      region: {x: [-900, -500], y: [-1300, -900], depth: [600, 800]}
)";

constexpr std::string_view kCircleInside = R"(name: sec42_circle_inside
duration: 120
controller_variant: zonal
tank: {shape: cylinder, diameter: 6400, depth: 2400}
vision: {reflection_rate: 0.02}
agents:
  - role: leader
    program: {kind: circle, caudal_freq: 1.0, pectoral_bias: 0.156, depth_setpoint: 550}
    init:
      pose: {x: 0, y: -600, depth: 550, yaw: 0}
  - role: follower
    controller: {follow_distance: 150, follow_angle: 90, pitch_band: [-45, -40], dead_radius: 190}
    init:
      region: {x: [-900, -500], y: [-500, -100], depth: [600, 800]}
)";

constexpr std::string_view kTwoFollowers = R"(name: sec43_two_followers
duration: 40
controller_variant: zonal
tank: {shape: cylinder, diameter: 6400, depth: 2400}
vision: {reflection_rate: 0.02}
agents:
  - role: leader
    program:
      kind: piecewise
      depth_setpoint: 600
      segments:
        - {duration: 20, caudal_freq: 1.0, pectoral_bias: 0}
        - {duration: 8, caudal_freq: 1.0, pectoral_bias: 0.06}
        - {duration: 12, caudal_freq: 1.0, pectoral_bias: 0}
    init:
      pose: {x: -2000, y: -300, depth: 600, yaw: 0}
  - role: follower
    controller: {follow_distance: 200, follow_angle: 90, pitch_band: [-1, 1]}
    init:
      region: {x: [-2700, -2500], y: [-800, -500], depth: [500, 700]}
  - role: follower
    controller: {follow_distance: 200, follow_angle: -90, pitch_band: [-1, 1]}
    init:
      region: {x: [-2700, -2500], y: [-100, 200], depth: [500, 700]}
)";

constexpr std::string_view kTanhOutside = R"(name: sec51_zonal_vs_tanh_outside
duration: 120
controller_variant: zonal
tank: {shape: cylinder, diameter: 6400, depth: 2400}
agents:
  - role: leader
    program: {kind: circle, caudal_freq: 1.0, pectoral_bias: 0.156, depth_setpoint: 600}
    init:
      pose: {x: 0, y: -600, depth: 600, yaw: 0}
  - role: follower
    controller: {follow_distance: 200, follow_angle: -90, pitch_band: [-1, 1], length_scale: 300}
    init:
      region: {x: [-1000, 0], y: [-1600, -1100], depth: [500, 700]}
)";

constexpr std::string_view kTanhInside = R"(name: sec51_zonal_vs_tanh_inside
duration: 120
controller_variant: zonal
tank: {shape: cylinder, diameter: 6400, depth: 2400}
agents:
  - role: leader
    program: {kind: circle, caudal_freq: 1.0, pectoral_bias: 0.156, depth_setpoint: 600}
    init:
      pose: {x: 0, y: -600, depth: 600, yaw: 0}
  - role: follower
    controller: {follow_distance: 200, follow_angle: 90, pitch_band: [-1, 1], length_scale: 300}
    init:
      region: {x: [-1000, 0], y: [-300, 200], depth: [500, 700]}
)";

constexpr std::string_view kHexagon = R"(name: sec52_hexagon
duration: 120
controller_variant: tanh
tank: {shape: cylinder, diameter: 6400, depth: 2400}
agents:
  - role: leader
    program: {kind: circle, caudal_freq: 1.0, pectoral_bias: 0.156, depth_setpoint: 600}
    init:
      pose: {x: 0, y: -600, depth: 600, yaw: 0}
  - role: follower
    controller: {follow_distance: 250, follow_angle: 0, pitch_band: [-1, 1]}
    init:
      region: {x: [300, 500], y: [-700, -500], depth: [550, 650]}
  - role: follower
    controller: {follow_distance: 250, follow_angle: 60, pitch_band: [-1, 1]}
    init:
      region: {x: [100, 300], y: [-500, -300], depth: [550, 650]}
  - role: follower
    controller: {follow_distance: 250, follow_angle: 120, pitch_band: [-1, 1]}
    init:
      region: {x: [-300, -100], y: [-500, -300], depth: [550, 650]}
  - role: follower
    controller: {follow_distance: 250, follow_angle: 180, pitch_band: [-1, 1]}
    init:
      region: {x: [-500, -300], y: [-700, -500], depth: [550, 650]}
  - role: follower
    controller: {follow_distance: 250, follow_angle: 240, pitch_band: [-1, 1]}
    init:
      region: {x: [-300, -100], y: [-900, -700], depth: [550, 650]}
  - role: follower
    controller: {follow_distance: 250, follow_angle: 300, pitch_band: [-1, 1]}
    init:
      region: {x: [100, 300], y: [-900, -700], depth: [550, 650]}
)";

constexpr std::string_view kTwoLeaders = R"(name: sec52_two_leaders
duration: 120
controller_variant: tanh
tank: {shape: cylinder, diameter: 6400, depth: 2400}
agents:
  - role: leader
    program: {kind: circle, caudal_freq: 1.0, pectoral_bias: 0.156, depth_setpoint: 600}
    init:
      pose: {x: 0, y: 0, depth: 600, yaw: 0}
  - role: leader
    program: {kind: circle, caudal_freq: 1.0, pectoral_bias: 0.104, depth_setpoint: 600}
    init:
      pose: {x: 0, y: -1700, depth: 600, yaw: 0}
  - role: follower
    controller: {follow_distance: 200, follow_angle: 90, pitch_band: [-1, 1], length_scale: 300}
    init:
      region: {x: [-700, -400], y: [0, 300], depth: [550, 650]}
  - role: follower
    controller: {follow_distance: 200, follow_angle: -90, pitch_band: [-1, 1], length_scale: 300}
    init:
      region: {x: [-700, -400], y: [-400, -100], depth: [550, 650]}
  - role: follower
    controller: {follow_distance: 200, follow_angle: 90, pitch_band: [-1, 1], length_scale: 300}
    init:
      region: {x: [-700, -400], y: [-1700, -1400], depth: [550, 650]}
  - role: follower
    controller: {follow_distance: 200, follow_angle: -90, pitch_band: [-1, 1], length_scale: 300}
    init:
      region: {x: [-700, -400], y: [-2100, -1800], depth: [550, 650]}
)";

constexpr std::array<Builtin, 8> kBuiltins{{
    {"sec41_straight", kStraight},
    {"sec42_circle_outside", kCircleOutside},
    {"sec42_circle_inside", kCircleInside},
    {"sec43_two_followers", kTwoFollowers},
    {"sec51_zonal_vs_tanh_outside", kTanhOutside},
    {"sec51_zonal_vs_tanh_inside", kTanhInside},
    {"sec52_hexagon", kHexagon},
    {"sec52_two_leaders", kTwoLeaders},
}};

}  // namespace

std::vector<std::string> builtin_scenario_names()
{
    std::vector<std::string> names;
    for (const auto& b : kBuiltins) {
        names.emplace_back(b.name);
    }
    return names;
}

std::optional<std::string> builtin_scenario_text(std::string_view name)
{
    const auto it = std::find_if(kBuiltins.begin(), kBuiltins.end(), [&](const Builtin& b) { return b.name == name; });
    if (it == kBuiltins.end()) {
        return std::nullopt;
    }
    return std::string(it->text);
}

ScenarioConfig builtin_scenario(std::string_view name)
{
    const auto text = builtin_scenario_text(name);
    if (!text) {
        throw ConfigError("unknown built-in scenario '" + std::string(name) + "'");
    }
    return load_scenario(*text);
}

}  // namespace swarmsim
