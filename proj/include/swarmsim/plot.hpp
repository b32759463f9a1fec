#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "swarmsim/metrics.hpp"
#include "swarmsim/scenario.hpp"

namespace swarmsim {

enum class PlotKind { TopView, SideView, Distance, Depth };

std::optional<PlotKind> parse_plot_kind(std::string_view name);
std::string_view plot_kind_name(PlotKind kind);

struct PlotRun {
    TrajectoryLog log;
    Metrics metrics;
};

/// Standalone SVG document. Several runs are overlaid (batch view).
std::string render_plot(PlotKind kind, std::span<const PlotRun> runs);

}  // namespace swarmsim
