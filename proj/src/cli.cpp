#include "swarmsim/cli.hpp"

#include <CLI11.hpp>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <thread>

#include "swarmsim/io.hpp"
#include "swarmsim/metrics.hpp"
#include "swarmsim/plot.hpp"
#include "swarmsim/scenario.hpp"

namespace swarmsim::cli {

namespace fs = std::filesystem;

namespace {

class IoFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Style {
    bool color{false};
    std::string ok(std::string_view s) const { return wrap("32", s); }
    std::string bad(std::string_view s) const { return wrap("31", s); }
    std::string bold(std::string_view s) const { return wrap("1", s); }

private:
    std::string wrap(std::string_view code, std::string_view s) const
    {
        if (!color) {
            return std::string(s);
        }
        return "\x1b[" + std::string(code) + "m" + std::string(s) + "\x1b[0m";
    }
};

Style make_style()
{
    Style s;
    s.color = std::getenv("SWARMSIM_NO_COLOR") == nullptr && isatty(STDOUT_FILENO) != 0;
    return s;
}

ScenarioConfig resolve_scenario(const std::string& name_or_path, const std::string& variant)
{
    ScenarioConfig cfg;
    if (auto text = builtin_scenario_text(name_or_path)) {
        cfg = load_scenario(*text);
    } else if (fs::is_regular_file(name_or_path)) {
        std::string text;
        try {
            text = read_file(name_or_path);
        } catch (const std::exception& e) {
            throw IoFailure(e.what());
        }
        cfg = load_scenario(text);
    } else {
        throw ConfigError("unknown scenario '" + name_or_path + "' (not a built-in name or a readable file)");
    }
    if (variant == "zonal") {
        cfg.controller_variant = ControllerVariant::Zonal;
    } else if (variant == "tanh") {
        cfg.controller_variant = ControllerVariant::Tanh;
    } else if (!variant.empty()) {
        throw UsageError("--variant must be 'zonal' or 'tanh'");
    }
    return cfg;
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoFailure("cannot create output directory '" + dir.string() + "'");
    }
}

void write_or_throw(const fs::path& path, std::string_view content)
{
    try {
        write_file(path.string(), content);
    } catch (const std::exception& e) {
        throw IoFailure(e.what());
    }
}

// Simulates one seed and writes its three artifacts; metrics are computed
// from the CSV as written so `metrics` reproduces them exactly.
Metrics run_to_dir(const ScenarioConfig& cfg, std::uint64_t seed, const fs::path& dir)
{
    ensure_dir(dir);
    const TrajectoryLog log = run(cfg, seed);
    const std::string csv = trajectory_csv(log);
    const Metrics metrics = compute_metrics(parse_trajectory_csv(csv), cfg);
    write_or_throw(dir / "trajectory.csv", csv);
    write_or_throw(dir / "metrics.json", json_text(metrics_json(metrics)));
    write_or_throw(dir / "scenario.resolved", dump_scenario(cfg));
    return metrics;
}

PlotRun load_run_dir(const fs::path& dir, ScenarioConfig& cfg_out)
{
    std::string csv;
    std::string resolved;
    try {
        csv = read_file((dir / "trajectory.csv").string());
        resolved = read_file((dir / "scenario.resolved").string());
    } catch (const std::exception& e) {
        throw FormatError(std::string("missing run files: ") + e.what());
    }
    ScenarioConfig cfg;
    try {
        cfg = load_scenario(resolved);
    } catch (const ConfigError& e) {
        throw FormatError(std::string("corrupt scenario.resolved: ") + e.what());
    }
    PlotRun run{parse_trajectory_csv(csv), {}};
    if (run.log.roles.size() != cfg.agents.size()) {
        throw FormatError("trajectory.csv does not match scenario.resolved");
    }
    run.metrics = compute_metrics(run.log, cfg);
    cfg_out = std::move(cfg);
    return run;
}

std::vector<fs::path> seed_dirs(const fs::path& dir)
{
    std::vector<fs::path> out;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_directory() && entry.path().filename().string().rfind("seed_", 0) == 0) {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text)
{
    const auto pos = text.find("..");
    auto parse = [&](const std::string& s) -> std::uint64_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
            throw UsageError("--seeds expects A..B with nonnegative integers, got '" + text + "'");
        }
        return std::stoull(s);
    };
    if (pos == std::string::npos) {
        const auto v = parse(text);
        return {v, v};
    }
    const auto a = parse(text.substr(0, pos));
    const auto b = parse(text.substr(pos + 2));
    if (b < a) {
        throw UsageError("--seeds range '" + text + "' is empty");
    }
    return {a, b};
}

std::string seed_dir_name(std::uint64_t seed)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "seed_%04llu", static_cast<unsigned long long>(seed));
    return buf;
}

void print_metrics(std::ostream& out, const Metrics& m, const Style& style)
{
    for (const auto& f : m.followers) {
        out << "  follower " << f.agent_id << ": settling "
            << (f.settling_time ? style.ok(format_number(*f.settling_time) + " s") : style.bad("never"))
            << ", steady rms " << format_number(f.steady_rms_error) << " mm, median distance "
            << format_number(f.median_distance_to_leader) << " mm, visibility "
            << format_number(f.visibility_fraction) << "\n";
    }
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    const Style style = make_style();
    CLI::App app{"Vision-only leader-follower formation simulator"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string scenario;
    std::string variant;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::string seeds;
    unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
    std::string dir;
    std::string kind;
    std::string show_name;

    auto* run_cmd = app.add_subcommand("run", "Simulate one seed");
    run_cmd->add_option("--scenario", scenario, "Built-in name or scenario file")->required();
    run_cmd->add_option("--seed", seed, "Seed")->default_val(0);
    run_cmd->add_option("--out", out_dir, "Output directory")->required();
    run_cmd->add_option("--variant", variant, "Controller override: zonal|tanh");

    auto* batch_cmd = app.add_subcommand("batch", "Simulate a range of seeds");
    batch_cmd->add_option("--scenario", scenario, "Built-in name or scenario file")->required();
    batch_cmd->add_option("--seeds", seeds, "Inclusive range A..B")->required();
    batch_cmd->add_option("--out", out_dir, "Output directory")->required();
    batch_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    batch_cmd->add_option("--variant", variant, "Controller override: zonal|tanh");

    auto* metrics_cmd = app.add_subcommand("metrics", "Recompute metrics.json for a run directory");
    metrics_cmd->add_option("dir", dir, "Run directory");
    metrics_cmd->add_option("--out", out_dir, "Run directory (alternative to the positional)");

    auto* plot_cmd = app.add_subcommand("plot", "Write plot_<kind>.svg for a run or batch directory");
    plot_cmd->add_option("dir", dir, "Run or batch directory");
    plot_cmd->add_option("--out", out_dir, "Run or batch directory (alternative to the positional)");
    plot_cmd->add_option("--kind", kind, "topview|sideview|distance|depth")->required();

    auto* scenario_cmd = app.add_subcommand("scenario", "Inspect built-in scenarios");
    scenario_cmd->require_subcommand(1);
    auto* list_cmd = scenario_cmd->add_subcommand("list", "List built-in scenarios");
    auto* show_cmd = scenario_cmd->add_subcommand("show", "Print a fully defaulted scenario document");
    show_cmd->add_option("name", show_name, "Built-in name or scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*run_cmd) {
            const ScenarioConfig cfg = resolve_scenario(scenario, variant);
            const Metrics m = run_to_dir(cfg, seed, out_dir);
            out << style.bold(cfg.name) << " seed " << seed << " (" << variant_name(cfg.controller_variant)
                << ") -> " << out_dir << "\n";
            print_metrics(out, m, style);
            return kExitOk;
        }
        if (*batch_cmd) {
            const auto [first, last] = parse_seed_range(seeds);
            const ScenarioConfig cfg = resolve_scenario(scenario, variant);
            ensure_dir(out_dir);
            const std::size_t count = static_cast<std::size_t>(last - first + 1);
            std::vector<Metrics> results(count);
            std::vector<int> codes(count, kExitOk);
            std::vector<std::string> errors(count);
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (std::size_t k = next++; k < count; k = next++) {
                    const std::uint64_t s = first + k;
                    try {
                        results[k] = run_to_dir(cfg, s, fs::path(out_dir) / seed_dir_name(s));
                    } catch (const IoFailure& e) {
                        codes[k] = kExitIo;
                        errors[k] = e.what();
                    } catch (const std::exception& e) {
                        codes[k] = kExitUsage;
                        errors[k] = e.what();
                    }
                }
            };
            const unsigned n_workers = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
            std::vector<std::thread> pool;
            for (unsigned w = 1; w < n_workers; ++w) {
                pool.emplace_back(worker);
            }
            worker();
            for (auto& th : pool) {
                th.join();
            }
            int worst = kExitOk;
            std::vector<std::pair<std::uint64_t, Metrics>> ok_runs;
            for (std::size_t k = 0; k < count; ++k) {
                if (codes[k] != kExitOk) {
                    err << "seed " << first + k << ": " << errors[k] << "\n";
                    worst = std::max(worst, codes[k]);
                } else {
                    ok_runs.emplace_back(first + k, std::move(results[k]));
                }
            }
            write_or_throw(fs::path(out_dir) / "summary.json", json_text(batch_summary_json(cfg.name, ok_runs)));
            out << style.bold(cfg.name) << ": " << ok_runs.size() << "/" << count << " seeds ("
                << variant_name(cfg.controller_variant) << ") -> " << out_dir << "\n";
            return worst;
        }
        if (*metrics_cmd || *plot_cmd) {
            const std::string target = !dir.empty() ? dir : out_dir;
            if (target.empty()) {
                throw UsageError("a run directory is required");
            }
            if (*metrics_cmd) {
                ScenarioConfig cfg;
                const PlotRun r = load_run_dir(target, cfg);
                write_or_throw(fs::path(target) / "metrics.json", json_text(metrics_json(r.metrics)));
                out << style.bold(cfg.name) << " metrics -> " << (fs::path(target) / "metrics.json").string() << "\n";
                print_metrics(out, r.metrics, style);
                return kExitOk;
            }
            const auto plot_kind = parse_plot_kind(kind);
            if (!plot_kind) {
                err << "error: unknown plot kind '" << kind << "'\n" << plot_cmd->help();
                return kExitUsage;
            }
            std::vector<PlotRun> runs;
            ScenarioConfig cfg;
            if (fs::is_regular_file(fs::path(target) / "trajectory.csv")) {
                runs.push_back(load_run_dir(target, cfg));
            } else {
                for (const auto& sub : seed_dirs(target)) {
                    runs.push_back(load_run_dir(sub, cfg));
                }
                if (runs.empty()) {
                    throw FormatError("'" + target + "' holds neither a run nor seed_* run directories");
                }
            }
            const fs::path svg = fs::path(target) / ("plot_" + std::string(plot_kind_name(*plot_kind)) + ".svg");
            write_or_throw(svg, render_plot(*plot_kind, runs));
            out << "wrote " << svg.string() << "\n";
            return kExitOk;
        }
        if (*scenario_cmd) {
            if (*list_cmd) {
                for (const auto& name : builtin_scenario_names()) {
                    out << name << "\n";
                }
                return kExitOk;
            }
            if (*show_cmd) {
                out << dump_scenario(resolve_scenario(show_name, ""));
                return kExitOk;
            }
        }
    } catch (const IoFailure& e) {
        err << style.bad("I/O error") << ": " << e.what() << "\n";
        return kExitIo;
    } catch (const ConfigError& e) {
        err << style.bad("config error") << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const FormatError& e) {
        err << style.bad("log error") << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        err << style.bad("usage error") << ": " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace swarmsim::cli
