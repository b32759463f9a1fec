#include "swarmsim/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace swarmsim {

namespace {

std::string fmt_opt(bool present, double v) { return present ? format_number(v) : std::string(); }

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(std::string_view field, std::size_t line_no)
{
    const std::string s(field);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        throw FormatError("trajectory line " + std::to_string(line_no) + ": bad number '" + s + "'");
    }
    return v;
}

Zone parse_zone(std::string_view s, std::size_t line_no)
{
    for (Zone z : {Zone::Approach, Zone::Follow, Zone::Dead, Zone::Lost}) {
        if (zone_name(z) == s) {
            return z;
        }
    }
    throw FormatError("trajectory line " + std::to_string(line_no) + ": unknown zone '" + std::string(s) + "'");
}

nlohmann::ordered_json num(double v) { return round_sig6(v); }

nlohmann::ordered_json series(const std::vector<double>& v)
{
    auto arr = nlohmann::ordered_json::array();
    for (double x : v) {
        arr.push_back(round_sig6(x));
    }
    return arr;
}

nlohmann::ordered_json stats(const std::vector<double>& v)
{
    nlohmann::ordered_json j;
    j["count"] = v.size();
    if (v.empty()) {
        j["mean"] = nullptr;
        j["median"] = nullptr;
        j["p10"] = nullptr;
        j["p90"] = nullptr;
        return j;
    }
    double sum = 0.0;
    for (double x : v) {
        sum += x;
    }
    j["mean"] = num(sum / static_cast<double>(v.size()));
    j["median"] = num(median(v));
    j["p10"] = num(percentile(v, 10.0));
    j["p90"] = num(percentile(v, 90.0));
    return j;
}

}  // namespace

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    if (std::string_view(buf) == "-0") {
        return "0";
    }
    return buf;
}

double round_sig6(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

std::string trajectory_csv(const TrajectoryLog& log)
{
    std::string out;
    out.reserve(log.ticks.size() * log.roles.size() * 120 + 256);
    out += kTrajectoryHeader;
    out += '\n';
    for (const auto& tick : log.ticks) {
        for (std::size_t i = 0; i < tick.agents.size(); ++i) {
            const AgentRecord& a = tick.agents[i];
            const bool follower = log.roles[i] == Role::Follower;
            const auto& s = a.state;
            const bool has_est = a.estimate.has_value();
            const bool hv = has_est && a.estimate->heading_valid;
            std::string row;
            row += format_number(tick.time) + ',' + std::to_string(i) + ',' + std::string(role_name(log.roles[i]));
            for (double v : {s.pose.position.x, s.pose.position.y, s.pose.position.z, rad_to_deg(s.pose.yaw), s.surge,
                             s.heave, a.command.caudal_freq, a.command.pectoral_left_freq,
                             a.command.pectoral_right_freq}) {
                row += ',' + format_number(v);
            }
            row += a.command.dorsal_on ? ",1" : ",0";
            row += ',' + fmt_opt(has_est, has_est ? a.estimate->distance : 0.0);
            row += ',' + fmt_opt(has_est, has_est ? rad_to_deg(a.estimate->bearing) : 0.0);
            row += ',' + fmt_opt(has_est, has_est ? rad_to_deg(a.estimate->pitch) : 0.0);
            row += ',' + fmt_opt(hv, hv ? rad_to_deg(std::atan2(a.estimate->heading.y, a.estimate->heading.x)) : 0.0);
            row += ',';
            if (has_est) {
                row += hv ? '1' : '0';
            }
            row += ',';
            if (follower) {
                row += zone_name(a.zone);
            }
            out += row;
            out += '\n';
        }
    }
    return out;
}

TrajectoryLog parse_trajectory_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kTrajectoryHeader) {
        throw FormatError("trajectory: missing or unexpected header row");
    }
    TrajectoryLog log;
    std::map<int, Role> roles;
    std::size_t line_no = 1;
    constexpr std::size_t kColumns = 19;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != kColumns) {
            throw FormatError("trajectory line " + std::to_string(line_no) + ": expected " +
                              std::to_string(kColumns) + " columns, got " + std::to_string(f.size()));
        }
        const double t = parse_double(f[0], line_no);
        const int id = static_cast<int>(parse_double(f[1], line_no));
        Role role;
        if (f[2] == "leader") {
            role = Role::Leader;
        } else if (f[2] == "follower") {
            role = Role::Follower;
        } else {
            throw FormatError("trajectory line " + std::to_string(line_no) + ": unknown role");
        }
        if (id == 0 || log.ticks.empty() || log.ticks.back().time != t) {
            if (id != 0) {
                throw FormatError("trajectory line " + std::to_string(line_no) + ": tick does not start at agent 0");
            }
            log.ticks.push_back(TickRecord{t, {}});
        }
        auto& tick = log.ticks.back();
        if (static_cast<std::size_t>(id) != tick.agents.size()) {
            throw FormatError("trajectory line " + std::to_string(line_no) + ": agent ids out of order");
        }
        if (const auto it = roles.find(id); it != roles.end() && it->second != role) {
            throw FormatError("trajectory line " + std::to_string(line_no) + ": agent changed role");
        }
        roles[id] = role;

        AgentRecord a;
        a.state.pose.position = {parse_double(f[3], line_no), parse_double(f[4], line_no), parse_double(f[5], line_no)};
        a.state.pose.yaw = normalize_angle(deg_to_rad(parse_double(f[6], line_no)));
        a.state.surge = parse_double(f[7], line_no);
        a.state.heave = parse_double(f[8], line_no);
        a.command.caudal_freq = parse_double(f[9], line_no);
        a.command.pectoral_left_freq = parse_double(f[10], line_no);
        a.command.pectoral_right_freq = parse_double(f[11], line_no);
        a.command.dorsal_on = f[12] == "1";
        a.state.fins = a.command;
        a.state.leds_on = role == Role::Leader;
        if (!f[13].empty()) {
            LeaderEstimate e;
            e.distance = parse_double(f[13], line_no);
            e.bearing = deg_to_rad(parse_double(f[14], line_no));
            e.pitch = deg_to_rad(parse_double(f[15], line_no));
            e.heading_valid = f[17] == "1";
            if (e.heading_valid) {
                const double h = deg_to_rad(parse_double(f[16], line_no));
                e.heading = {std::cos(h), std::sin(h), 0.0};
            }
            const double c = std::cos(e.pitch);
            e.leader_position = Vec3{c * std::cos(e.bearing), c * std::sin(e.bearing), -std::sin(e.pitch)} * e.distance;
            a.estimate = e;
        }
        if (role == Role::Follower) {
            a.zone = parse_zone(f[18], line_no);
        }
        tick.agents.push_back(a);
    }
    if (log.ticks.empty()) {
        throw FormatError("trajectory: no data rows");
    }
    const std::size_t n = log.ticks.front().agents.size();
    for (const auto& tick : log.ticks) {
        if (tick.agents.size() != n) {
            throw FormatError("trajectory: ticks have differing agent counts");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        log.roles.push_back(roles.at(static_cast<int>(i)));
    }
    return log;
}

nlohmann::ordered_json metrics_json(const Metrics& metrics)
{
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    for (const auto& f : metrics.followers) {
        nlohmann::ordered_json j;
        j["settling_time"] = f.settling_time ? num(*f.settling_time) : nlohmann::ordered_json(nullptr);
        j["steady_window_start"] = num(f.steady_window_start);
        j["steady_rms_error"] = num(f.steady_rms_error);
        j["depth_deviation_max"] = num(f.depth_deviation_max);
        j["visibility_fraction"] = num(f.visibility_fraction);
        j["heading_valid_fraction"] = num(f.heading_valid_fraction);
        j["median_distance_to_leader"] = num(f.median_distance_to_leader);
        j["mean_distance_to_leader"] = num(f.mean_distance_to_leader);
        j["target_distance_to_leader"] = num(f.target_distance_to_leader);
        j["mean_caudal"] = num(f.mean_caudal);
        j["time"] = series(f.time);
        j["distance_to_leader"] = series(f.distance_to_leader);
        j["distance_to_target"] = series(f.distance_to_target);
        doc[std::to_string(f.agent_id)] = std::move(j);
    }
    return doc;
}

nlohmann::ordered_json batch_summary_json(std::string_view scenario_name,
                                          const std::vector<std::pair<std::uint64_t, Metrics>>& runs)
{
    nlohmann::ordered_json doc;
    doc["scenario"] = std::string(scenario_name);
    auto seeds = nlohmann::ordered_json::array();
    for (const auto& [seed, m] : runs) {
        seeds.push_back(seed);
    }
    doc["seeds"] = seeds;

    std::map<int, std::vector<const FollowerMetrics*>> by_agent;
    for (const auto& [seed, m] : runs) {
        for (const auto& f : m.followers) {
            by_agent[f.agent_id].push_back(&f);
        }
    }
    nlohmann::ordered_json followers = nlohmann::ordered_json::object();
    for (const auto& [id, list] : by_agent) {
        std::vector<double> rms;
        std::vector<double> settle;
        std::vector<double> med_d;
        std::vector<double> mean_d;
        std::vector<double> vis;
        for (const auto* f : list) {
            rms.push_back(f->steady_rms_error);
            if (f->settling_time) {
                settle.push_back(*f->settling_time);
            }
            med_d.push_back(f->median_distance_to_leader);
            mean_d.push_back(f->mean_distance_to_leader);
            vis.push_back(f->visibility_fraction);
        }
        nlohmann::ordered_json j;
        j["runs"] = list.size();
        j["settled_runs"] = settle.size();
        j["steady_rms_error"] = stats(rms);
        j["settling_time"] = stats(settle);
        j["median_distance_to_leader"] = stats(med_d);
        j["mean_distance_to_leader"] = stats(mean_d);
        j["visibility_fraction"] = stats(vis);
        followers[std::to_string(id)] = std::move(j);
    }
    doc["followers"] = followers;
    return doc;
}

std::string json_text(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

}  // namespace swarmsim
