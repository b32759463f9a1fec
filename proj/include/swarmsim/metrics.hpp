#pragma once

#include <optional>
#include <vector>

#include "swarmsim/scenario.hpp"

namespace swarmsim {

/// Ground-truth formation quality of one follower.
struct FollowerMetrics {
    int agent_id{-1};
    std::vector<double> time;
    std::vector<double> distance_to_leader;  // mm, 3D, to the nearest leader's LED pair
    std::vector<double> distance_to_target;  // mm, horizontal, to the formation point
    std::vector<double> depth_error;         // mm, signed, follower z minus desired z
    std::optional<double> settling_time;     // s
    double steady_window_start{0.0};         // s
    double steady_rms_error{0.0};            // mm
    double depth_deviation_max{0.0};         // BL, over the steady window
    double visibility_fraction{0.0};
    double heading_valid_fraction{0.0};
    double median_distance_to_leader{0.0};   // mm, steady window
    double mean_distance_to_leader{0.0};     // mm, steady window
    double mean_caudal{0.0};                 // Hz, steady window
    double target_distance_to_leader{0.0};   // mm, the configured Euclidean offset
};

struct Metrics {
    std::vector<FollowerMetrics> followers;
};

inline constexpr double kSettlingBand = 50.0;    // mm
inline constexpr double kSettlingSustain = 10.0; // s

/// Formation metrics from ground truth. The formation point is recomputed
/// from the true leader pose, so it never sees the follower's estimate.
/// Throws std::invalid_argument on an empty log.
Metrics compute_metrics(const TrajectoryLog& log, const ScenarioConfig& cfg);

/// First time from which `error` stays within `band` for `sustain` seconds.
/// The sustain window must fit inside the series.
std::optional<double> settling_time(const std::vector<double>& time, const std::vector<double>& error, double band,
                                    double sustain);

double median(std::vector<double> values);
/// Linear-interpolated percentile, q in [0, 100].
double percentile(std::vector<double> values, double q);

}  // namespace swarmsim
