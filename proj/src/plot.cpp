#include "swarmsim/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <vector>

namespace swarmsim {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kMarginL = 70.0;
constexpr double kMarginR = 20.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginB = 50.0;
constexpr int kTimeChunks = 8;

constexpr std::array<const char*, 6> kWarm{"#d62728", "#ff7f0e", "#e377c2", "#bcbd22", "#8c564b", "#ff9896"};
constexpr const char* kLeaderColor = "#1f77b4";

std::string f2(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-9 ? 0.0 : v);
    return buf;
}

struct Range {
    double lo{std::numeric_limits<double>::infinity()};
    double hi{-std::numeric_limits<double>::infinity()};

    void add(double v)
    {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad()
    {
        if (!std::isfinite(lo)) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-9) {
            lo -= 1.0;
            hi += 1.0;
        }
        const double m = 0.05 * (hi - lo);
        lo -= m;
        hi += m;
    }
};

double nice_step(double span)
{
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (m * mag >= raw) {
            return m * mag;
        }
    }
    return 10.0 * mag;
}

class Canvas {
public:
    Canvas(Range x, Range y, bool equal_aspect) : x_(x), y_(y)
    {
        x_.pad();
        y_.pad();
        if (equal_aspect) {
            const double sx = (x_.hi - x_.lo) / plot_w();
            const double sy = (y_.hi - y_.lo) / plot_h();
            if (sx > sy) {
                const double c = 0.5 * (y_.lo + y_.hi);
                const double half = 0.5 * sx * plot_h();
                y_ = {c - half, c + half};
            } else {
                const double c = 0.5 * (x_.lo + x_.hi);
                const double half = 0.5 * sy * plot_w();
                x_ = {c - half, c + half};
            }
        }
    }

    static double plot_w() { return kWidth - kMarginL - kMarginR; }
    static double plot_h() { return kHeight - kMarginT - kMarginB; }
    double px(double x) const { return kMarginL + (x - x_.lo) / (x_.hi - x_.lo) * plot_w(); }
    double py(double y) const { return kMarginT + (y_.hi - y) / (y_.hi - y_.lo) * plot_h(); }

    void axes(const std::string& title, const std::string& xlabel, const std::string& ylabel)
    {
        os_ << "<rect x=\"" << f2(kMarginL) << "\" y=\"" << f2(kMarginT) << "\" width=\"" << f2(plot_w())
            << "\" height=\"" << f2(plot_h()) << "\" fill=\"none\" stroke=\"#444\"/>\n";
        const double xs = nice_step(x_.hi - x_.lo);
        for (double v = std::ceil(x_.lo / xs) * xs; v <= x_.hi; v += xs) {
            os_ << "<line x1=\"" << f2(px(v)) << "\" y1=\"" << f2(kMarginT + plot_h()) << "\" x2=\"" << f2(px(v))
                << "\" y2=\"" << f2(kMarginT + plot_h() + 5) << "\" stroke=\"#444\"/>\n"
                << "<text x=\"" << f2(px(v)) << "\" y=\"" << f2(kMarginT + plot_h() + 18)
                << "\" font-size=\"11\" text-anchor=\"middle\">" << tick_label(v) << "</text>\n";
        }
        const double ys = nice_step(y_.hi - y_.lo);
        for (double v = std::ceil(y_.lo / ys) * ys; v <= y_.hi; v += ys) {
            os_ << "<line x1=\"" << f2(kMarginL - 5) << "\" y1=\"" << f2(py(v)) << "\" x2=\"" << f2(kMarginL)
                << "\" y2=\"" << f2(py(v)) << "\" stroke=\"#444\"/>\n"
                << "<text x=\"" << f2(kMarginL - 8) << "\" y=\"" << f2(py(v) + 4)
                << "\" font-size=\"11\" text-anchor=\"end\">" << tick_label(v) << "</text>\n";
        }
        os_ << "<text x=\"" << f2(kWidth / 2) << "\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">" << title
            << "</text>\n"
            << "<text x=\"" << f2(kMarginL + plot_w() / 2) << "\" y=\"" << f2(kHeight - 10)
            << "\" font-size=\"12\" text-anchor=\"middle\">" << xlabel << "</text>\n"
            << "<text x=\"16\" y=\"" << f2(kMarginT + plot_h() / 2) << "\" font-size=\"12\" text-anchor=\"middle\" "
            << "transform=\"rotate(-90 16 " << f2(kMarginT + plot_h() / 2) << ")\">" << ylabel << "</text>\n";
    }

    void polyline(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& color,
                  double opacity, const std::string& extra = "")
    {
        if (xs.size() < 2) {
            return;
        }
        os_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" stroke-opacity=\""
            << f2(opacity) << "\"" << extra << " points=\"";
        for (std::size_t k = 0; k < xs.size(); ++k) {
            os_ << (k ? " " : "") << f2(px(xs[k])) << ',' << f2(py(ys[k]));
        }
        os_ << "\"/>\n";
    }

    void hline(double y, const std::string& color, const std::string& label)
    {
        os_ << "<line x1=\"" << f2(kMarginL) << "\" y1=\"" << f2(py(y)) << "\" x2=\"" << f2(kMarginL + plot_w())
            << "\" y2=\"" << f2(py(y)) << "\" stroke=\"" << color << "\" stroke-dasharray=\"6 4\"/>\n"
            << "<text x=\"" << f2(kMarginL + plot_w() - 4) << "\" y=\"" << f2(py(y) - 4)
            << "\" font-size=\"11\" text-anchor=\"end\" fill=\"" << color << "\">" << label << "</text>\n";
    }

    void band(double lo, double hi, const std::string& color)
    {
        const double top = py(std::min(hi, y_.hi));
        const double bottom = py(std::max(lo, y_.lo));
        if (bottom <= top) {
            return;
        }
        os_ << "<rect x=\"" << f2(kMarginL) << "\" y=\"" << f2(top) << "\" width=\"" << f2(plot_w())
            << "\" height=\"" << f2(bottom - top) << "\" fill=\"" << color << "\" fill-opacity=\"0.15\"/>\n";
    }

    void legend(const std::vector<std::pair<std::string, std::string>>& entries)
    {
        double y = kMarginT + 14;
        for (const auto& [label, color] : entries) {
            os_ << "<line x1=\"" << f2(kMarginL + 10) << "\" y1=\"" << f2(y - 4) << "\" x2=\"" << f2(kMarginL + 30)
                << "\" y2=\"" << f2(y - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
                << "<text x=\"" << f2(kMarginL + 36) << "\" y=\"" << f2(y) << "\" font-size=\"11\">" << label
                << "</text>\n";
            y += 15;
        }
    }

    std::string finish() const
    {
        std::ostringstream doc;
        doc << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
            << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << os_.str() << "</svg>\n";
        return doc.str();
    }

private:
    Range x_;
    Range y_;
    std::ostringstream os_;
};

std::string agent_color(const std::vector<Role>& roles, std::size_t i)
{
    if (roles[i] == Role::Leader) {
        return kLeaderColor;
    }
    std::size_t followers_before = 0;
    for (std::size_t j = 0; j < i; ++j) {
        followers_before += roles[j] == Role::Follower ? 1 : 0;
    }
    return kWarm[followers_before % kWarm.size()];
}

std::vector<std::pair<std::string, std::string>> agent_legend(const std::vector<Role>& roles)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < roles.size(); ++i) {
        out.emplace_back(std::string(role_name(roles[i])) + " " + std::to_string(i), agent_color(roles, i));
    }
    return out;
}

// Paths drawn in time chunks that darken as time advances.
std::string spatial_plot(std::span<const PlotRun> runs, bool top)
{
    Range xr;
    Range yr;
    for (const auto& run : runs) {
        for (const auto& tick : run.log.ticks) {
            for (const auto& a : tick.agents) {
                xr.add(a.state.pose.position.x);
                yr.add(top ? a.state.pose.position.y : a.state.pose.position.z);
            }
        }
    }
    Canvas c(xr, yr, true);
    c.axes(top ? "Top view (darker = later)" : "Side view (darker = later)", "x [mm]", top ? "y [mm]" : "z [mm]");
    const double run_alpha = runs.size() > 1 ? 0.5 : 1.0;
    for (const auto& run : runs) {
        const std::size_t n_ticks = run.log.ticks.size();
        for (std::size_t i = 0; i < run.log.roles.size(); ++i) {
            const std::string color = agent_color(run.log.roles, i);
            for (int chunk = 0; chunk < kTimeChunks; ++chunk) {
                const std::size_t begin = n_ticks * static_cast<std::size_t>(chunk) / kTimeChunks;
                const std::size_t end = std::min(n_ticks, n_ticks * static_cast<std::size_t>(chunk + 1) / kTimeChunks + 1);
                std::vector<double> xs;
                std::vector<double> ys;
                for (std::size_t k = begin; k < end; ++k) {
                    const auto& p = run.log.ticks[k].agents[i].state.pose.position;
                    xs.push_back(p.x);
                    ys.push_back(top ? p.y : p.z);
                }
                const double opacity = run_alpha * (0.2 + 0.8 * (chunk + 1) / static_cast<double>(kTimeChunks));
                c.polyline(xs, ys, color, opacity);
            }
        }
    }
    if (!runs.empty()) {
        c.legend(agent_legend(runs.front().log.roles));
    }
    return c.finish();
}

std::string distance_plot(std::span<const PlotRun> runs)
{
    Range tr;
    Range dr;
    dr.add(0.0);
    for (const auto& run : runs) {
        for (const auto& f : run.metrics.followers) {
            for (std::size_t k = 0; k < f.time.size(); ++k) {
                tr.add(f.time[k]);
                dr.add(f.distance_to_leader[k]);
                dr.add(f.distance_to_target[k]);
            }
            dr.add(f.target_distance_to_leader);
        }
    }
    Canvas c(tr, dr, false);
    c.axes("Distance to leader (solid) and to target (dashed)", "t [s]", "distance [mm]");
    c.band(0.0, kSettlingBand, "#2ca02c");
    std::vector<double> targets;
    for (const auto& run : runs) {
        for (const auto& f : run.metrics.followers) {
            targets.push_back(f.target_distance_to_leader);
        }
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end(), [](double a, double b) { return std::abs(a - b) < 0.5; }),
                  targets.end());
    for (double t : targets) {
        c.hline(t, "#2ca02c", "target " + tick_label(std::round(t)) + " mm");
    }
    const double run_alpha = runs.size() > 1 ? 0.5 : 1.0;
    for (const auto& run : runs) {
        for (const auto& f : run.metrics.followers) {
            const std::string color = agent_color(run.log.roles, static_cast<std::size_t>(f.agent_id));
            c.polyline(f.time, f.distance_to_leader, color, run_alpha);
            c.polyline(f.time, f.distance_to_target, color, run_alpha, " stroke-dasharray=\"4 3\"");
        }
    }
    if (!runs.empty()) {
        std::vector<std::pair<std::string, std::string>> entries;
        for (const auto& f : runs.front().metrics.followers) {
            entries.emplace_back("follower " + std::to_string(f.agent_id),
                                 agent_color(runs.front().log.roles, static_cast<std::size_t>(f.agent_id)));
        }
        c.legend(entries);
    }
    return c.finish();
}

std::string depth_plot(std::span<const PlotRun> runs)
{
    Range tr;
    Range zr;
    for (const auto& run : runs) {
        for (const auto& tick : run.log.ticks) {
            tr.add(tick.time);
            for (const auto& a : tick.agents) {
                zr.add(a.state.pose.position.z);
            }
        }
    }
    Canvas c(tr, zr, false);
    c.axes("Vertical position", "t [s]", "z [mm]");
    const double run_alpha = runs.size() > 1 ? 0.5 : 1.0;
    for (const auto& run : runs) {
        for (std::size_t i = 0; i < run.log.roles.size(); ++i) {
            std::vector<double> ts;
            std::vector<double> zs;
            for (const auto& tick : run.log.ticks) {
                ts.push_back(tick.time);
                zs.push_back(tick.agents[i].state.pose.position.z);
            }
            c.polyline(ts, zs, agent_color(run.log.roles, i), run_alpha);
        }
    }
    if (!runs.empty()) {
        c.legend(agent_legend(runs.front().log.roles));
    }
    return c.finish();
}

}  // namespace

std::optional<PlotKind> parse_plot_kind(std::string_view name)
{
    for (PlotKind k : {PlotKind::TopView, PlotKind::SideView, PlotKind::Distance, PlotKind::Depth}) {
        if (plot_kind_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::string_view plot_kind_name(PlotKind kind)
{
    switch (kind) {
    case PlotKind::TopView:
        return "topview";
    case PlotKind::SideView:
        return "sideview";
    case PlotKind::Distance:
        return "distance";
    case PlotKind::Depth:
        return "depth";
    }
    return "?";
}

std::string render_plot(PlotKind kind, std::span<const PlotRun> runs)
{
    switch (kind) {
    case PlotKind::TopView:
        return spatial_plot(runs, true);
    case PlotKind::SideView:
        return spatial_plot(runs, false);
    case PlotKind::Distance:
        return distance_plot(runs);
    case PlotKind::Depth:
        return depth_plot(runs);
    }
    return {};
}

}  // namespace swarmsim
