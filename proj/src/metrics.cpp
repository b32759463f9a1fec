#include "swarmsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace swarmsim {

namespace {

// Index of the true leader nearest to `from`.
std::size_t nearest_leader(const TickRecord& tick, const std::vector<Role>& roles, const Vec3& from,
                           const LedLayout& layout)
{
    std::size_t best = roles.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roles.size(); ++j) {
        if (roles[j] != Role::Leader) {
            continue;
        }
        const double d = (led_reference_point(tick.agents[j].state, layout) - from).norm();
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

double mean_of(const std::vector<double>& v)
{
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double percentile(std::vector<double> values, double q)
{
    if (values.empty()) {
        throw std::invalid_argument("percentile of an empty set");
    }
    std::sort(values.begin(), values.end());
    const double pos = std::clamp(q, 0.0, 100.0) / 100.0 * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + (values[hi] - values[lo]) * frac;
}

double median(std::vector<double> values) { return percentile(std::move(values), 50.0); }

std::optional<double> settling_time(const std::vector<double>& time, const std::vector<double>& error, double band,
                                    double sustain)
{
    const std::size_t n = std::min(time.size(), error.size());
    if (n == 0) {
        return std::nullopt;
    }
    constexpr double kEps = 1e-9;
    // next_bad[k]: first index >= k outside the band.
    std::vector<std::size_t> next_bad(n + 1, n);
    for (std::size_t k = n; k-- > 0;) {
        next_bad[k] = error[k] > band ? k : next_bad[k + 1];
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (time[k] + sustain > time[n - 1] + kEps) {
            break;
        }
        const std::size_t bad = next_bad[k];
        if (bad == n || time[bad] > time[k] + sustain + kEps) {
            return time[k];
        }
    }
    return std::nullopt;
}

Metrics compute_metrics(const TrajectoryLog& log, const ScenarioConfig& cfg)
{
    if (log.ticks.empty()) {
        throw std::invalid_argument("empty trajectory log");
    }
    const std::size_t n_ticks = log.ticks.size();
    const double t_end = log.ticks.back().time;
    Metrics m;
    for (std::size_t i = 0; i < log.roles.size(); ++i) {
        if (log.roles[i] != Role::Follower) {
            continue;
        }
        const auto& zp = cfg.agents[i].zone;
        const double theta_mid = 0.5 * (zp.pitch_low + zp.pitch_high);
        FollowerMetrics fm;
        fm.agent_id = static_cast<int>(i);
        fm.target_distance_to_leader = zp.follow_distance / std::cos(theta_mid);

        std::size_t visible = 0;
        std::size_t heading_ok = 0;
        std::vector<double> caudal;
        for (const auto& tick : log.ticks) {
            const AgentRecord& me = tick.agents[i];
            const Vec3 pos = me.state.pose.position;
            const std::size_t li = nearest_leader(tick, log.roles, pos, cfg.leds);
            const AgentState& leader = tick.agents[li].state;
            const Vec3 ref = led_reference_point(leader, cfg.leds);
            const Vec3 goal = ref + rotate_z(leader.pose.heading(), zp.follow_angle) * zp.follow_distance;
            const double desired_z = ref.z + zp.follow_distance * std::tan(theta_mid);

            fm.time.push_back(tick.time);
            fm.distance_to_leader.push_back((ref - pos).norm());
            fm.distance_to_target.push_back(std::hypot(goal.x - pos.x, goal.y - pos.y));
            fm.depth_error.push_back(pos.z - desired_z);
            caudal.push_back(me.command.caudal_freq);
            if (me.estimate) {
                ++visible;
                if (me.estimate->heading_valid) {
                    ++heading_ok;
                }
            }
        }
        fm.visibility_fraction = static_cast<double>(visible) / static_cast<double>(n_ticks);
        fm.heading_valid_fraction = static_cast<double>(heading_ok) / static_cast<double>(n_ticks);
        fm.settling_time = settling_time(fm.time, fm.distance_to_target, kSettlingBand, kSettlingSustain);
        fm.steady_window_start = fm.settling_time ? *fm.settling_time : 0.5 * t_end;

        std::vector<double> dl;
        std::vector<double> cf;
        double sq = 0.0;
        double depth_max = 0.0;
        for (std::size_t k = 0; k < n_ticks; ++k) {
            if (fm.time[k] + 1e-9 < fm.steady_window_start) {
                continue;
            }
            sq += fm.distance_to_target[k] * fm.distance_to_target[k];
            dl.push_back(fm.distance_to_leader[k]);
            cf.push_back(caudal[k]);
            depth_max = std::max(depth_max, std::abs(fm.depth_error[k]));
        }
        fm.steady_rms_error = std::sqrt(sq / static_cast<double>(dl.size()));
        fm.median_distance_to_leader = median(dl);
        fm.mean_distance_to_leader = mean_of(dl);
        fm.mean_caudal = mean_of(cf);
        fm.depth_deviation_max = depth_max / cfg.dynamics.body_length;
        m.followers.push_back(std::move(fm));
    }
    return m;
}

}  // namespace swarmsim
