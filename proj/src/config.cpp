#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <initializer_list>
#include <sstream>

#include "swarmsim/scenario.hpp"

namespace swarmsim {

namespace {

std::string where(const YAML::Node& node, const std::string& path)
{
    std::ostringstream os;
    const auto mark = node.Mark();
    if (mark.line >= 0) {
        os << "line " << mark.line + 1 << ": ";
    }
    os << "field '" << path << "'";
    return os.str();
}

std::string join(const std::string& path, std::string_view key)
{
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

void expect_map(const YAML::Node& node, const std::string& path)
{
    if (!node.IsMap()) {
        throw ConfigError(where(node, path) + ": expected a section of key/value pairs");
    }
}

void reject_unknown(const YAML::Node& node, const std::string& path, std::initializer_list<std::string_view> allowed)
{
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(where(kv.first, join(path, key)) + ": unknown key");
        }
    }
}

double as_number(const YAML::Node& node, const std::string& path)
{
    try {
        const double v = node.as<double>();
        if (!std::isfinite(v)) {
            throw ConfigError(where(node, path) + ": expected a finite number");
        }
        return v;
    } catch (const YAML::Exception&) {
        throw ConfigError(where(node, path) + ": expected a number");
    }
}

void read_number(const YAML::Node& sec, const std::string& path, std::string_view key, double& out)
{
    if (const auto n = sec[std::string(key)]) {
        out = as_number(n, join(path, key));
    }
}

void read_angle(const YAML::Node& sec, const std::string& path, std::string_view key, double& out_rad)
{
    if (const auto n = sec[std::string(key)]) {
        out_rad = deg_to_rad(as_number(n, join(path, key)));
    }
}

void read_bool(const YAML::Node& sec, const std::string& path, std::string_view key, bool& out)
{
    if (const auto n = sec[std::string(key)]) {
        try {
            out = n.as<bool>();
        } catch (const YAML::Exception&) {
            throw ConfigError(where(n, join(path, key)) + ": expected true or false");
        }
    }
}

std::string read_string(const YAML::Node& n, const std::string& path)
{
    if (!n.IsScalar()) {
        throw ConfigError(where(n, path) + ": expected a string");
    }
    return n.as<std::string>();
}

std::vector<double> read_list(const YAML::Node& n, const std::string& path, std::size_t count)
{
    if (!n.IsSequence() || n.size() != count) {
        throw ConfigError(where(n, path) + ": expected a list of " + std::to_string(count) + " numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(as_number(n[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

Vec3 read_vec3(const YAML::Node& n, const std::string& path)
{
    const auto v = read_list(n, path, 3);
    return {v[0], v[1], v[2]};
}

Interval read_interval(const YAML::Node& n, const std::string& path)
{
    const auto v = read_list(n, path, 2);
    return {std::min(v[0], v[1]), std::max(v[0], v[1])};
}

void parse_tank(const YAML::Node& sec, Tank& tank)
{
    const std::string path = "tank";
    expect_map(sec, path);
    reject_unknown(sec, path, {"shape", "extents", "diameter", "depth"});
    if (const auto n = sec["shape"]) {
        const auto shape = read_string(n, "tank.shape");
        if (shape == "box") {
            tank.shape = Tank::Shape::Box;
        } else if (shape == "cylinder") {
            tank.shape = Tank::Shape::Cylinder;
        } else {
            throw ConfigError(where(n, "tank.shape") + ": expected 'box' or 'cylinder'");
        }
    }
    if (const auto n = sec["extents"]) {
        const Vec3 e = read_vec3(n, "tank.extents");
        tank.size_x = e.x;
        tank.size_y = e.y;
        tank.depth = e.z;
    }
    read_number(sec, path, "diameter", tank.diameter);
    read_number(sec, path, "depth", tank.depth);
}

void parse_vision(const YAML::Node& sec, VisionParams& v)
{
    const std::string path = "vision";
    expect_map(sec, path);
    reject_unknown(sec, path,
                   {"blind_spot_half_angle", "fov_elevation_limit", "merge_threshold", "pitch_match_threshold",
                    "noise_sigma", "reflection_rate", "max_range", "body_radius", "pair_azimuth_tolerance",
                    "heading_disambiguation_margin", "surface_z"});
    read_angle(sec, path, "blind_spot_half_angle", v.blind_spot_half_angle);
    read_angle(sec, path, "fov_elevation_limit", v.fov_elevation_limit);
    read_angle(sec, path, "merge_threshold", v.merge_threshold);
    read_angle(sec, path, "pitch_match_threshold", v.pitch_match_threshold);
    read_angle(sec, path, "noise_sigma", v.noise_sigma);
    read_number(sec, path, "reflection_rate", v.reflection_rate);
    read_number(sec, path, "max_range", v.max_range);
    read_number(sec, path, "body_radius", v.body_radius);
    read_angle(sec, path, "pair_azimuth_tolerance", v.pair_azimuth_tolerance);
    read_angle(sec, path, "heading_disambiguation_margin", v.heading_disambiguation_margin);
    read_number(sec, path, "surface_z", v.surface_z);
}

void parse_leds(const YAML::Node& sec, LedLayout& leds)
{
    const std::string path = "leds";
    expect_map(sec, path);
    reject_unknown(sec, path, {"posterior_bottom", "posterior_top", "anterior"});
    if (const auto n = sec["posterior_bottom"]) {
        leds.posterior_bottom = read_vec3(n, "leds.posterior_bottom");
    }
    if (const auto n = sec["posterior_top"]) {
        leds.posterior_top = read_vec3(n, "leds.posterior_top");
    }
    if (const auto n = sec["anterior"]) {
        leds.anterior = read_vec3(n, "leds.anterior");
    }
}

void parse_dynamics(const YAML::Node& sec, DynamicsParams& d)
{
    const std::string path = "dynamics";
    expect_map(sec, path);
    reject_unknown(sec, path,
                   {"mass", "yaw_inertia", "k_caudal", "k_pectoral", "pectoral_arm", "k_dorsal", "buoyancy",
                    "drag_surge", "drag_yaw", "drag_heave", "f_max", "body_length"});
    read_number(sec, path, "mass", d.mass);
    read_number(sec, path, "yaw_inertia", d.yaw_inertia);
    read_number(sec, path, "k_caudal", d.k_caudal);
    read_number(sec, path, "k_pectoral", d.k_pectoral);
    read_number(sec, path, "pectoral_arm", d.pectoral_arm);
    read_number(sec, path, "k_dorsal", d.k_dorsal);
    read_number(sec, path, "buoyancy", d.buoyancy);
    read_number(sec, path, "drag_surge", d.drag_surge);
    read_number(sec, path, "drag_yaw", d.drag_yaw);
    read_number(sec, path, "drag_heave", d.drag_heave);
    read_number(sec, path, "f_max", d.f_max);
    read_number(sec, path, "body_length", d.body_length);
}

void parse_program(const YAML::Node& sec, const std::string& path, LeaderProgram& p)
{
    expect_map(sec, path);
    reject_unknown(sec, path,
                   {"kind", "caudal_freq", "pectoral_bias", "depth_setpoint", "depth_hysteresis", "segments"});
    if (const auto n = sec["kind"]) {
        const auto kind = read_string(n, join(path, "kind"));
        if (kind == "straight") {
            p.kind = LeaderProgram::Kind::Straight;
        } else if (kind == "circle") {
            p.kind = LeaderProgram::Kind::Circle;
        } else if (kind == "piecewise") {
            p.kind = LeaderProgram::Kind::Piecewise;
        } else {
            throw ConfigError(where(n, join(path, "kind")) + ": expected straight, circle or piecewise");
        }
    }
    read_number(sec, path, "caudal_freq", p.caudal_freq);
    read_number(sec, path, "pectoral_bias", p.pectoral_bias);
    read_number(sec, path, "depth_setpoint", p.depth_setpoint);
    read_number(sec, path, "depth_hysteresis", p.depth_hysteresis);
    if (const auto segs = sec["segments"]) {
        const std::string spath = join(path, "segments");
        if (!segs.IsSequence()) {
            throw ConfigError(where(segs, spath) + ": expected a list of segments");
        }
        p.segments.clear();
        for (std::size_t i = 0; i < segs.size(); ++i) {
            const std::string ipath = spath + "[" + std::to_string(i) + "]";
            expect_map(segs[i], ipath);
            reject_unknown(segs[i], ipath, {"duration", "caudal_freq", "pectoral_bias"});
            ProgramSegment seg;
            read_number(segs[i], ipath, "duration", seg.duration);
            read_number(segs[i], ipath, "caudal_freq", seg.caudal_freq);
            read_number(segs[i], ipath, "pectoral_bias", seg.pectoral_bias);
            p.segments.push_back(seg);
        }
    }
}

void parse_controller(const YAML::Node& sec, const std::string& path, ZoneParams& z, TanhParams& t,
                      bool& f_cap_given)
{
    expect_map(sec, path);
    reject_unknown(sec, path,
                   {"approach_threshold", "dead_radius", "follow_distance", "follow_angle", "pitch_band",
                    "v_min_frac", "v_max_frac", "turn_deadband", "lost_hold_time", "length_scale", "f_cap"});
    read_number(sec, path, "approach_threshold", z.approach_threshold);
    read_number(sec, path, "dead_radius", z.dead_radius);
    read_number(sec, path, "follow_distance", z.follow_distance);
    read_angle(sec, path, "follow_angle", z.follow_angle);
    if (const auto n = sec["pitch_band"]) {
        const Interval band = read_interval(n, join(path, "pitch_band"));
        z.pitch_low = deg_to_rad(band.lo);
        z.pitch_high = deg_to_rad(band.hi);
    }
    read_number(sec, path, "v_min_frac", z.v_min_frac);
    read_number(sec, path, "v_max_frac", z.v_max_frac);
    read_angle(sec, path, "turn_deadband", z.turn_deadband);
    read_number(sec, path, "lost_hold_time", z.lost_hold_time);
    read_number(sec, path, "length_scale", t.length_scale);
    if (sec["f_cap"]) {
        read_number(sec, path, "f_cap", t.f_cap);
        f_cap_given = true;
    }
}

void parse_init(const YAML::Node& sec, const std::string& path, InitSpec& init)
{
    expect_map(sec, path);
    reject_unknown(sec, path, {"pose", "region"});
    if (sec["pose"] && sec["region"]) {
        throw ConfigError(where(sec, path) + ": give either 'pose' or 'region', not both");
    }
    if (const auto n = sec["pose"]) {
        const std::string ppath = join(path, "pose");
        expect_map(n, ppath);
        reject_unknown(n, ppath, {"x", "y", "depth", "yaw"});
        double x = 0.0;
        double y = 0.0;
        double depth = 0.0;
        double yaw = 0.0;
        read_number(n, ppath, "x", x);
        read_number(n, ppath, "y", y);
        read_number(n, ppath, "depth", depth);
        read_angle(n, ppath, "yaw", yaw);
        init.pose = PoseYaw{{x, y, -depth}, normalize_angle(yaw)};
    } else if (const auto r = sec["region"]) {
        const std::string rpath = join(path, "region");
        expect_map(r, rpath);
        reject_unknown(r, rpath, {"x", "y", "depth", "yaw"});
        for (const char* key : {"x", "y", "depth"}) {
            if (!r[key]) {
                throw ConfigError(where(r, rpath) + ": region needs x, y and depth intervals");
            }
        }
        init.x = read_interval(r["x"], join(rpath, "x"));
        init.y = read_interval(r["y"], join(rpath, "y"));
        init.depth = read_interval(r["depth"], join(rpath, "depth"));
        if (r["yaw"]) {
            double yaw = 0.0;
            read_angle(r, rpath, "yaw", yaw);
            init.yaw = normalize_angle(yaw);
        }
    } else {
        throw ConfigError(where(sec, path) + ": needs a 'pose' or a 'region'");
    }
}

AgentConfig parse_agent(const YAML::Node& sec, const std::string& path, bool& f_cap_given)
{
    expect_map(sec, path);
    reject_unknown(sec, path, {"role", "leds_on", "program", "controller", "init"});
    AgentConfig a;
    const auto role = sec["role"];
    if (!role) {
        throw ConfigError(where(sec, path) + ": missing 'role'");
    }
    const auto role_str = read_string(role, join(path, "role"));
    if (role_str == "leader") {
        a.role = Role::Leader;
        a.leds_on = true;
    } else if (role_str == "follower") {
        a.role = Role::Follower;
        a.leds_on = false;
    } else {
        throw ConfigError(where(role, join(path, "role")) + ": expected 'leader' or 'follower'");
    }
    read_bool(sec, path, "leds_on", a.leds_on);
    if (const auto n = sec["program"]) {
        if (a.role != Role::Leader) {
            throw ConfigError(where(n, join(path, "program")) + ": only leaders run a program");
        }
        parse_program(n, join(path, "program"), a.program);
    }
    if (const auto n = sec["controller"]) {
        if (a.role != Role::Follower) {
            throw ConfigError(where(n, join(path, "controller")) + ": only followers take controller params");
        }
        parse_controller(n, join(path, "controller"), a.zone, a.tanh, f_cap_given);
    }
    const auto init = sec["init"];
    if (!init) {
        throw ConfigError(where(sec, path) + ": missing 'init'");
    }
    parse_init(init, join(path, "init"), a.init);
    return a;
}

// Shortest round-trip text for a double.
std::string fmt_num(double v)
{
    v += 0.0;
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string fmt_deg(double rad)
{
    // Trim floating noise from the rad -> deg conversion.
    const double deg = rad_to_deg(rad);
    const double rounded = std::round(deg * 1e9) / 1e9;
    return fmt_num(rounded);
}

}  // namespace

std::string_view role_name(Role role)
{
    return role == Role::Leader ? "leader" : "follower";
}

std::string_view variant_name(ControllerVariant variant)
{
    return variant == ControllerVariant::Zonal ? "zonal" : "tanh";
}

std::size_t ScenarioConfig::tick_count() const
{
    return static_cast<std::size_t>(std::llround(duration / control_period)) + 1;
}

std::size_t ScenarioConfig::substeps() const
{
    return static_cast<std::size_t>(std::llround(control_period / physics_dt));
}

std::size_t ScenarioConfig::leader_count() const
{
    return static_cast<std::size_t>(
        std::count_if(agents.begin(), agents.end(), [](const AgentConfig& a) { return a.role == Role::Leader; }));
}

void ScenarioConfig::validate() const
{
    auto fail = [](const std::string& msg) { throw ConfigError("invalid scenario: " + msg); };
    if (!(duration > 0.0)) {
        fail("duration must be positive");
    }
    if (!(control_period > 0.0)) {
        fail("control_period must be positive");
    }
    if (!(physics_dt > 0.0 && physics_dt <= 0.05)) {
        fail("physics_dt must lie in (0, 0.05] s");
    }
    const double sub = control_period / physics_dt;
    if (std::abs(sub - std::round(sub)) > 1e-9 * sub) {
        fail("control_period must be an integer multiple of physics_dt");
    }
    const double ticks = duration / control_period;
    if (std::abs(ticks - std::round(ticks)) > 1e-9 * std::max(ticks, 1.0)) {
        fail("duration must be an integer multiple of control_period");
    }
    if (tank.shape == Tank::Shape::Box && !(tank.size_x > 0.0 && tank.size_y > 0.0)) {
        fail("box tank extents must be positive");
    }
    if (tank.shape == Tank::Shape::Cylinder && !(tank.diameter > 0.0)) {
        fail("cylinder tank diameter must be positive");
    }
    if (!(tank.depth > 0.0)) {
        fail("tank depth must be positive");
    }
    try {
        dynamics.validate();
        vision.validate();
        leds.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    if (agents.empty()) {
        fail("no agents");
    }
    const std::size_t leaders = leader_count();
    const bool lit_leader = std::any_of(agents.begin(), agents.end(),
                                        [](const AgentConfig& a) { return a.role == Role::Leader && a.leds_on; });
    if (leaders == 0 || !lit_leader) {
        fail("needs at least one leader with leds_on");
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const auto& a = agents[i];
        const std::string who = "agent " + std::to_string(i) + ": ";
        if (a.role == Role::Follower && a.leds_on && leaders == 1) {
            fail(who + "followers keep their LEDs off in single-leader scenarios");
        }
        try {
            if (a.role == Role::Leader) {
                a.program.validate(dynamics.f_max);
            } else {
                a.zone.validate();
                a.tanh.validate(dynamics.f_max);
            }
        } catch (const std::invalid_argument& e) {
            fail(who + e.what());
        }
    }
}

ScenarioConfig load_scenario(std::string_view text)
{
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ConfigError("line " + std::to_string(e.mark.line + 1) + ": parse error: " + e.msg);
    }
    if (!root.IsMap()) {
        throw ConfigError("scenario document must be a section of key/value pairs");
    }
    reject_unknown(root, "",
                   {"name", "duration", "control_period", "physics_dt", "seed_base", "controller_variant", "tank",
                    "vision", "leds", "dynamics", "agents"});

    ScenarioConfig cfg;
    if (const auto n = root["name"]) {
        cfg.name = read_string(n, "name");
    }
    read_number(root, "", "duration", cfg.duration);
    read_number(root, "", "control_period", cfg.control_period);
    read_number(root, "", "physics_dt", cfg.physics_dt);
    if (const auto n = root["seed_base"]) {
        try {
            cfg.seed_base = n.as<std::uint64_t>();
        } catch (const YAML::Exception&) {
            throw ConfigError(where(n, "seed_base") + ": expected a nonnegative integer");
        }
    }
    if (const auto n = root["controller_variant"]) {
        const auto v = read_string(n, "controller_variant");
        if (v == "zonal") {
            cfg.controller_variant = ControllerVariant::Zonal;
        } else if (v == "tanh") {
            cfg.controller_variant = ControllerVariant::Tanh;
        } else {
            throw ConfigError(where(n, "controller_variant") + ": expected 'zonal' or 'tanh'");
        }
    }
    if (const auto n = root["tank"]) {
        parse_tank(n, cfg.tank);
    }
    if (const auto n = root["vision"]) {
        parse_vision(n, cfg.vision);
    }
    if (const auto n = root["leds"]) {
        parse_leds(n, cfg.leds);
    }
    if (const auto n = root["dynamics"]) {
        parse_dynamics(n, cfg.dynamics);
    }
    const auto agents = root["agents"];
    if (!agents || !agents.IsSequence()) {
        throw ConfigError("field 'agents': expected a list of agents");
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
        bool f_cap_given = false;
        AgentConfig a = parse_agent(agents[i], "agents[" + std::to_string(i) + "]", f_cap_given);
        if (!f_cap_given) {
            a.tanh.f_cap = cfg.dynamics.f_max;
        }
        cfg.agents.push_back(std::move(a));
    }
    cfg.validate();
    return cfg;
}

std::string dump_scenario(const ScenarioConfig& cfg)
{
    std::ostringstream os;
    auto vec = [](const Vec3& v) { return "[" + fmt_num(v.x) + ", " + fmt_num(v.y) + ", " + fmt_num(v.z) + "]"; };
    auto interval = [](const Interval& i) { return "[" + fmt_num(i.lo) + ", " + fmt_num(i.hi) + "]"; };

    os << "name: " << cfg.name << "\n";
    os << "duration: " << fmt_num(cfg.duration) << "\n";
    os << "control_period: " << fmt_num(cfg.control_period) << "\n";
    os << "physics_dt: " << fmt_num(cfg.physics_dt) << "\n";
    os << "seed_base: " << cfg.seed_base << "\n";
    os << "controller_variant: " << variant_name(cfg.controller_variant) << "\n";
    os << "tank:\n";
    if (cfg.tank.shape == Tank::Shape::Box) {
        os << "  shape: box\n  extents: " << vec({cfg.tank.size_x, cfg.tank.size_y, cfg.tank.depth}) << "\n";
    } else {
        os << "  shape: cylinder\n  diameter: " << fmt_num(cfg.tank.diameter) << "\n  depth: "
           << fmt_num(cfg.tank.depth) << "\n";
    }
    const auto& v = cfg.vision;
    os << "vision:\n"
       << "  blind_spot_half_angle: " << fmt_deg(v.blind_spot_half_angle) << "\n"
       << "  fov_elevation_limit: " << fmt_deg(v.fov_elevation_limit) << "\n"
       << "  merge_threshold: " << fmt_deg(v.merge_threshold) << "\n"
       << "  pitch_match_threshold: " << fmt_deg(v.pitch_match_threshold) << "\n"
       << "  noise_sigma: " << fmt_deg(v.noise_sigma) << "\n"
       << "  reflection_rate: " << fmt_num(v.reflection_rate) << "\n"
       << "  max_range: " << fmt_num(v.max_range) << "\n"
       << "  body_radius: " << fmt_num(v.body_radius) << "\n"
       << "  pair_azimuth_tolerance: " << fmt_deg(v.pair_azimuth_tolerance) << "\n"
       << "  heading_disambiguation_margin: " << fmt_deg(v.heading_disambiguation_margin) << "\n"
       << "  surface_z: " << fmt_num(v.surface_z) << "\n";
    os << "leds:\n"
       << "  posterior_bottom: " << vec(cfg.leds.posterior_bottom) << "\n"
       << "  posterior_top: " << vec(cfg.leds.posterior_top) << "\n"
       << "  anterior: " << vec(cfg.leds.anterior) << "\n";
    const auto& d = cfg.dynamics;
    os << "dynamics:\n"
       << "  mass: " << fmt_num(d.mass) << "\n"
       << "  yaw_inertia: " << fmt_num(d.yaw_inertia) << "\n"
       << "  k_caudal: " << fmt_num(d.k_caudal) << "\n"
       << "  k_pectoral: " << fmt_num(d.k_pectoral) << "\n"
       << "  pectoral_arm: " << fmt_num(d.pectoral_arm) << "\n"
       << "  k_dorsal: " << fmt_num(d.k_dorsal) << "\n"
       << "  buoyancy: " << fmt_num(d.buoyancy) << "\n"
       << "  drag_surge: " << fmt_num(d.drag_surge) << "\n"
       << "  drag_yaw: " << fmt_num(d.drag_yaw) << "\n"
       << "  drag_heave: " << fmt_num(d.drag_heave) << "\n"
       << "  f_max: " << fmt_num(d.f_max) << "\n"
       << "  body_length: " << fmt_num(d.body_length) << "\n";
    os << "agents:\n";
    for (const auto& a : cfg.agents) {
        os << "  - role: " << role_name(a.role) << "\n";
        os << "    leds_on: " << (a.leds_on ? "true" : "false") << "\n";
        if (a.role == Role::Leader) {
            const auto& p = a.program;
            os << "    program:\n"
               << "      kind: " << program_kind_name(p.kind) << "\n"
               << "      caudal_freq: " << fmt_num(p.caudal_freq) << "\n"
               << "      pectoral_bias: " << fmt_num(p.pectoral_bias) << "\n"
               << "      depth_setpoint: " << fmt_num(p.depth_setpoint) << "\n"
               << "      depth_hysteresis: " << fmt_num(p.depth_hysteresis) << "\n";
            if (!p.segments.empty()) {
                os << "      segments:\n";
                for (const auto& s : p.segments) {
                    os << "        - {duration: " << fmt_num(s.duration) << ", caudal_freq: " << fmt_num(s.caudal_freq)
                       << ", pectoral_bias: " << fmt_num(s.pectoral_bias) << "}\n";
                }
            }
        } else {
            const auto& z = a.zone;
            os << "    controller:\n"
               << "      approach_threshold: " << fmt_num(z.approach_threshold) << "\n"
               << "      dead_radius: " << fmt_num(z.dead_radius) << "\n"
               << "      follow_distance: " << fmt_num(z.follow_distance) << "\n"
               << "      follow_angle: " << fmt_deg(z.follow_angle) << "\n"
               << "      pitch_band: [" << fmt_deg(z.pitch_low) << ", " << fmt_deg(z.pitch_high) << "]\n"
               << "      v_min_frac: " << fmt_num(z.v_min_frac) << "\n"
               << "      v_max_frac: " << fmt_num(z.v_max_frac) << "\n"
               << "      turn_deadband: " << fmt_deg(z.turn_deadband) << "\n"
               << "      lost_hold_time: " << fmt_num(z.lost_hold_time) << "\n"
               << "      length_scale: " << fmt_num(a.tanh.length_scale) << "\n"
               << "      f_cap: " << fmt_num(a.tanh.f_cap) << "\n";
        }
        os << "    init:\n";
        if (a.init.pose) {
            const auto& p = *a.init.pose;
            os << "      pose: {x: " << fmt_num(p.position.x) << ", y: " << fmt_num(p.position.y)
               << ", depth: " << fmt_num(-p.position.z) << ", yaw: " << fmt_deg(p.yaw) << "}\n";
        } else {
            os << "      region:\n"
               << "        x: " << interval(a.init.x) << "\n"
               << "        y: " << interval(a.init.y) << "\n"
               << "        depth: " << interval(a.init.depth) << "\n";
            if (a.init.yaw) {
                os << "        yaw: " << fmt_deg(*a.init.yaw) << "\n";
            }
        }
    }
    return os.str();
}

}  // namespace swarmsim
