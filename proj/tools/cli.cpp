#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nucswitch/config.hpp"
#include "nucswitch/dynamics.hpp"
#include "nucswitch/report.hpp"
#include "nucswitch/steadystate.hpp"
#include "nucswitch/sweeps.hpp"

namespace nucswitch::cli {

namespace {

namespace fs = std::filesystem;

/// Flags shared by every command: config path plus drive overrides.
struct Common {
    std::string config_path;
    std::optional<double> field;
    std::optional<double> power;
    std::optional<double> bias;
    std::optional<int> helicity;
    std::string report_path;

    void add_to(CLI::App& cmd, bool with_power = true) {
        cmd.add_option("config", config_path, "Configuration file")->required();
        cmd.add_option("--bz", field, "External field B_z, T");
        if (with_power) cmd.add_option("--power", power, "Excitation power, mW");
        cmd.add_option("--bias", bias, "Applied bias, V");
        cmd.add_option("--helicity", helicity, "Pump helicity: -1 (sigma-) or +1 (sigma+)")
            ->check(CLI::IsMember({-1, 1}));
    }

    Config load() const {
        Config cfg = parse_config(config_path);
        if (field) cfg.drive.field = *field;
        if (power) cfg.drive.power = *power;
        if (bias) cfg.drive.bias = *bias;
        if (helicity) cfg.drive.helicity = *helicity > 0 ? Helicity::sigma_plus : Helicity::sigma_minus;
        cfg.drive.validate();
        return cfg;
    }
};

class UsageError : public Error {
public:
    using Error::Error;
};

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path.string());
    f << text;
    if (!f) throw UsageError("failed writing " + path.string());
}

fs::path report_path_for(const std::string& explicit_path, const std::string& csv_path) {
    if (!explicit_path.empty()) return explicit_path;
    fs::path p(csv_path);
    p.replace_extension(".json");
    if (p == fs::path(csv_path)) p += ".json";
    return p;
}

RunReport start_report(const std::string& command, const Config& cfg) {
    RunReport r;
    r.command = command;
    r.config = cfg;
    r.timestamp = utc_timestamp();
    return r;
}

AxisGrid parse_grid(const std::string& text) {
    // axis:from:to:points
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 4) throw UsageError("grid spec must be axis:from:to:points, got '" + text + "'");
    const auto axis = parse_axis(parts[0]);
    if (!axis) throw UsageError("unknown axis '" + parts[0] + "'");
    AxisGrid g;
    g.axis = *axis;
    try {
        std::size_t used = 0;
        g.start = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
        g.stop = std::stod(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
        g.points = std::stoi(parts[3], &used);
        if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
    } catch (const std::logic_error&) {
        throw UsageError("invalid number in grid spec '" + text + "'");
    }
    return g;
}

int cmd_steady(const Common& c, const std::string& out_path, std::ostream& out, std::ostream& err) {
    const Config cfg = c.load();
    RunReport report = start_report("steady", cfg);
    int status = kSuccess;
    try {
        const auto roots = find_fixed_points(cfg.model, cfg.drive);
        write_fixed_points_csv(out, roots);
        report.results["fixed_points"] = to_json(roots);
        report.results["bistable"] = count_stable(roots) >= 2;
    } catch (const MarginalFixedPoint& e) {
        err << "nucswitch: " << e.what() << " at B_N = " << format_number(e.root()) << '\n';
        report.results["error"] = e.what();
        report.results["marginal_root"] = e.root();
        status = kNumericWarning;
    }
    report.exit_status = status;
    if (!out_path.empty()) write_file(out_path, report.dump());
    return status;
}

struct SweepArgs {
    std::string axis;
    double from = 0.0;
    double to = 0.0;
    int steps = 0;
    std::string direction = "both";
    std::string out_path;
    double initial = 0.0;
    double jump_tol = SweepOptions{}.jump_tol;
};

int cmd_sweep(const Common& c, const SweepArgs& a, std::ostream& err) {
    const Config cfg = c.load();
    const auto axis = parse_axis(a.axis);
    if (!axis) throw UsageError("unknown axis '" + a.axis + "'");

    SweepSpec spec{*axis, a.from, a.to, a.steps, cfg.drive, a.initial};
    spec.validate();
    if (!(std::abs(a.initial) <= cfg.model.saturation_field))
        throw UsageError("--init outside [-B_sat, B_sat]");
    const SweepOptions opt{a.jump_tol};

    RunReport report = start_report("sweep", cfg);
    report.results["axis"] = to_string(*axis);
    report.results["from"] = a.from;
    report.results["to"] = a.to;
    report.results["steps"] = a.steps;
    report.results["direction"] = a.direction;

    int status = kSuccess;
    std::ostringstream csv;
    try {
        if (a.direction == "both") {
            const auto h = run_hysteresis(cfg.model, spec, opt);
            write_sweep_csv(csv, {{"up", &h.up}, {"down", &h.down}});
            report.results["thresholds"] = {{"up", to_json(h.up.thresholds)},
                                            {"down", to_json(h.down.thresholds)}};
            report.results["loop_area"] = h.loop_area;
        } else {
            if (a.direction == "down") std::swap(spec.start, spec.stop);
            const auto s = run_sweep(cfg.model, spec, opt);
            write_sweep_csv(csv, {{a.direction, &s}});
            report.results["thresholds"] = {{a.direction, to_json(s.thresholds)}};
        }
    } catch (const SweepFailed& e) {
        err << "nucswitch: " << e.what() << '\n';
        report.results["error"] = e.what();
        report.results["failed_at"] = e.axis_value();
        status = kNumericWarning;
    }
    report.exit_status = status;
    if (status == kSuccess) write_file(a.out_path, csv.str());
    write_file(report_path_for(c.report_path, a.out_path), report.dump());
    return status;
}

int cmd_atlas(const Common& c, const std::string& x_spec, const std::string& y_spec,
              const std::string& out_path) {
    const Config cfg = c.load();
    const AxisGrid x = parse_grid(x_spec);
    const AxisGrid y = parse_grid(y_spec);
    const auto atlas = bistability_atlas(cfg.model, cfg.drive, x, y);

    std::ostringstream csv;
    write_atlas_csv(csv, atlas);
    write_file(out_path, csv.str());

    RunReport report = start_report("atlas", cfg);
    report.results["x"] = {{"axis", to_string(x.axis)}, {"from", x.start}, {"to", x.stop},
                           {"points", x.points}};
    report.results["y"] = {{"axis", to_string(y.axis)}, {"from", y.start}, {"to", y.stop},
                           {"points", y.points}};
    const auto box = bistable_region(atlas);
    if (box)
        report.results["bistable_region"] = {{"x_min", box->x_min}, {"x_max", box->x_max},
                                             {"y_min", box->y_min}, {"y_max", box->y_max}};
    else
        report.results["bistable_region"] = nullptr;
    report.results["marginal_cells"] =
        std::count(atlas.counts.begin(), atlas.counts.end(), AtlasResult::kMarginal);
    write_file(report_path_for(c.report_path, out_path), report.dump());
    return kSuccess;
}

struct PthrArgs {
    double bias_from = 0.0;
    double bias_to = 0.0;
    int bias_steps = 0;
    double p_max = 0.0;
    double resolution = 1e-3;
    std::string out_path;
};

int cmd_pthr(const Common& c, const PthrArgs& a, std::ostream& err) {
    const Config cfg = c.load();
    if (a.bias_steps < 2) throw UsageError("bias-steps must be >= 2");
    if (a.bias_from == a.bias_to) throw UsageError("bias-from must differ from bias-to");
    if (!(a.p_max > 0.0)) throw UsageError("pmax must be > 0");
    if (!(a.resolution > 0.0)) throw UsageError("resolution must be > 0");

    const AxisGrid grid{Axis::bias, a.bias_from, a.bias_to, a.bias_steps};
    std::vector<double> biases;
    for (int i = 0; i < a.bias_steps; ++i) biases.push_back(grid.value(i));

    RunReport report = start_report("pthr", cfg);
    report.results["field"] = cfg.drive.field;
    report.results["pmax"] = a.p_max;
    report.results["resolution"] = a.resolution;

    int status = kSuccess;
    try {
        const auto curve = threshold_power_curve(cfg.model, cfg.drive.field, biases, a.p_max,
                                                 a.resolution, cfg.drive.helicity);
        std::ostringstream csv;
        write_pthr_csv(csv, biases, curve);
        write_file(a.out_path, csv.str());

        json rows = json::array();
        for (std::size_t i = 0; i < biases.size(); ++i)
            rows.push_back({{"bias_V", biases[i]},
                            {"P_thr_mW", curve[i] ? json(*curve[i]) : json(nullptr)}});
        report.results["curve"] = rows;
        json maxima = json::array();
        for (std::size_t i : local_maxima(curve))
            maxima.push_back({{"bias_V", biases[i]}, {"P_thr_mW", *curve[i]}});
        report.results["local_maxima"] = maxima;
    } catch (const SweepFailed& e) {
        err << "nucswitch: " << e.what() << '\n';
        report.results["error"] = e.what();
        status = kNumericWarning;
    }
    report.exit_status = status;
    write_file(report_path_for(c.report_path, a.out_path), report.dump());
    return status;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nuclear spin switch simulator for an optically pumped quantum dot"};
    app.require_subcommand(1);

    Common steady_common, sweep_common, atlas_common, pthr_common;

    auto* steady = app.add_subcommand("steady", "Fixed points at one drive point");
    steady_common.add_to(*steady);
    std::string steady_out;
    steady->add_option("--out", steady_out, "JSON report path");

    auto* sweep = app.add_subcommand("sweep", "Quasi-static sweep over power, bias or field");
    sweep_common.add_to(*sweep);
    SweepArgs sweep_args;
    sweep->add_option("--axis", sweep_args.axis, "power | bias | field")->required();
    sweep->add_option("--from", sweep_args.from, "First axis value")->required();
    sweep->add_option("--to", sweep_args.to, "Last axis value")->required();
    sweep->add_option("--steps", sweep_args.steps, "Number of points (>= 2)")->required();
    sweep->add_option("--direction", sweep_args.direction, "both | up | down")
        ->check(CLI::IsMember({"both", "up", "down"}));
    sweep->add_option("--out", sweep_args.out_path, "CSV output path")->required();
    sweep->add_option("--report", sweep_common.report_path, "JSON report path");
    sweep->add_option("--init", sweep_args.initial, "B_N at the first point, T");
    sweep->add_option("--jump-tol", sweep_args.jump_tol, "Switch detection threshold, T");

    auto* atlas = app.add_subcommand("atlas", "Stable-root counts over a 2-D drive grid");
    atlas_common.add_to(*atlas);
    std::string x_spec, y_spec, atlas_out;
    atlas->add_option("--x", x_spec, "axis:from:to:points")->required();
    atlas->add_option("--y", y_spec, "axis:from:to:points")->required();
    atlas->add_option("--out", atlas_out, "CSV output path")->required();
    atlas->add_option("--report", atlas_common.report_path, "JSON report path");

    auto* pthr = app.add_subcommand("pthr", "Switching threshold power versus bias");
    pthr_common.add_to(*pthr, false);
    PthrArgs pthr_args;
    pthr->add_option("--bias-from", pthr_args.bias_from, "First bias, V")->required();
    pthr->add_option("--bias-to", pthr_args.bias_to, "Last bias, V")->required();
    pthr->add_option("--bias-steps", pthr_args.bias_steps, "Number of biases (>= 2)")->required();
    pthr->add_option("--pmax", pthr_args.p_max, "Highest power searched, mW")->required();
    pthr->add_option("--resolution", pthr_args.resolution, "Threshold resolution, mW");
    pthr->add_option("--out", pthr_args.out_path, "CSV output path")->required();
    pthr->add_option("--report", pthr_common.report_path, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // prints help for --help, the error message otherwise
        return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
    }

    try {
        if (*steady) return cmd_steady(steady_common, steady_out, out, err);
        if (*sweep) return cmd_sweep(sweep_common, sweep_args, err);
        if (*atlas) return cmd_atlas(atlas_common, x_spec, y_spec, atlas_out);
        if (*pthr) return cmd_pthr(pthr_common, pthr_args, err);
    } catch (const std::exception& e) {
        err << "nucswitch: " << e.what() << '\n';
        return kUsageError;
    }
    return kUsageError;
}

}  // namespace nucswitch::cli
