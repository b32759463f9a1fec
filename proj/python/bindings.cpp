#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "swarmsim/dynamics.hpp"
#include "swarmsim/io.hpp"
#include "swarmsim/metrics.hpp"
#include "swarmsim/scenario.hpp"
#include "swarmsim/vision.hpp"

namespace py = pybind11;
using namespace swarmsim;

namespace {

ScenarioConfig resolve(const std::string& scenario, const std::string& variant)
{
    ScenarioConfig cfg = builtin_scenario_text(scenario) ? builtin_scenario(scenario) : load_scenario(scenario);
    if (variant == "zonal") {
        cfg.controller_variant = ControllerVariant::Zonal;
    } else if (variant == "tanh") {
        cfg.controller_variant = ControllerVariant::Tanh;
    } else if (!variant.empty()) {
        throw ConfigError("variant must be 'zonal' or 'tanh'");
    }
    return cfg;
}

py::object estimate_from_blobs(const std::vector<std::pair<double, double>>& blobs)
{
    std::vector<BlobObservation> obs;
    for (const auto& [az, el] : blobs) {
        BlobObservation b;
        b.azimuth = az;
        b.elevation = el;
        b.source_agent = 1;
        obs.push_back(b);
    }
    const auto est = parse_blobs(obs, LedLayout{}, VisionParams{});
    if (!est) {
        return py::none();
    }
    py::dict d;
    d["bearing"] = est->bearing;
    d["pitch"] = est->pitch;
    d["distance"] = est->distance;
    d["heading_valid"] = est->heading_valid;
    d["heading"] = py::make_tuple(est->heading.x, est->heading.y);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Vision-only leader-follower formation simulator";
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("builtin_scenario_names", &builtin_scenario_names);
    m.def("scenario_text", [](const std::string& scenario) { return dump_scenario(resolve(scenario, "")); },
          py::arg("scenario"), "Fully defaulted scenario document for a built-in name or YAML text.");
    m.def(
        "run_csv",
        [](const std::string& scenario, std::uint64_t seed, const std::string& variant) {
            const ScenarioConfig cfg = resolve(scenario, variant);
            py::gil_scoped_release release;
            return trajectory_csv(run(cfg, seed));
        },
        py::arg("scenario"), py::arg("seed") = 0, py::arg("variant") = "",
        "Simulate one seed and return trajectory.csv text.");
    m.def(
        "run_metrics_json",
        [](const std::string& scenario, std::uint64_t seed, const std::string& variant) {
            const ScenarioConfig cfg = resolve(scenario, variant);
            py::gil_scoped_release release;
            return json_text(metrics_json(compute_metrics(run(cfg, seed), cfg)));
        },
        py::arg("scenario"), py::arg("seed") = 0, py::arg("variant") = "",
        "Simulate one seed and return metrics.json text.");
    m.def("parse_blobs", &estimate_from_blobs, py::arg("blobs"),
          "Leader estimate from (azimuth, elevation) pairs in radians, or None.");
    m.def("terminal_speed", [] { return terminal_speed(DynamicsParams{}); });
}
