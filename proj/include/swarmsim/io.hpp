#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "swarmsim/metrics.hpp"
#include "swarmsim/scenario.hpp"

namespace swarmsim {

/// Unreadable, truncated or malformed log files.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kTrajectoryHeader =
    "t,agent_id,role,x,y,z,yaw_deg,u,w,caudal,pect_l,pect_r,dorsal,est_d,est_bearing_deg,est_pitch_deg,"
    "est_heading_deg,heading_valid,zone";

/// Six significant digits; negative zero prints as 0.
std::string format_number(double v);
/// Rounds to the value format_number prints.
double round_sig6(double v);

std::string trajectory_csv(const TrajectoryLog& log);
/// Inverse of trajectory_csv up to the six-digit rounding. Yaw rate is not
/// logged and reads back as zero.
TrajectoryLog parse_trajectory_csv(std::string_view text);

nlohmann::ordered_json metrics_json(const Metrics& metrics);
nlohmann::ordered_json batch_summary_json(std::string_view scenario_name,
                                          const std::vector<std::pair<std::uint64_t, Metrics>>& runs);
/// Pretty-printed with a trailing newline.
std::string json_text(const nlohmann::ordered_json& doc);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace swarmsim
