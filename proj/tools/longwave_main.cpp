// Command-line front door: batch solvers, residual scans, approximation
// sweeps, energy series and kernel listings driven by a JSON config.
//
// Exit codes: 0 ok, 1 config error, 2 blow-up, 3 partial sweep failure.

#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"

#include "longwave/config.hpp"
#include "longwave/energy.hpp"
#include "longwave/errors.hpp"
#include "longwave/experiment.hpp"
#include "longwave/io.hpp"
#include "longwave/report.hpp"
#include "longwave/residual.hpp"
#include "longwave/spectral.hpp"

namespace fs = std::filesystem;
using namespace longwave;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitBlowUp = 2;
constexpr int kExitPartial = 3;

struct CommonArgs {
    std::string config_path;
    std::string output_dir; // overrides config output_dir when set
    std::vector<std::string> overrides;
};

AppConfig load(const CommonArgs& args) {
    if (args.config_path.empty()) throw ConfigError("missing --config");
    AppConfig cfg = load_config(args.config_path, args.overrides);
    if (!args.output_dir.empty()) cfg.output_dir = args.output_dir;
    return cfg;
}

void require_admissible_pair(double eps, double delta) {
    if (!(0.0 < eps && eps <= delta && delta <= 1.0))
        throw ConfigError("parameters violate 0 < eps <= delta <= 1 (eps=" +
                          std::to_string(eps) + ", delta=" + std::to_string(delta) + ")");
}

BidiTarget resolve_target(const AppConfig& cfg) {
    if (cfg.target_name == "ib") return BidiTarget::ib();
    if (cfg.target_name == "nonlocal") {
        if (cfg.kernel_name.empty()) throw ConfigError("target 'nonlocal' requires a kernel");
        const Kernel& kernel = kernel_by_name(cfg, cfg.kernel_name);
        const auto rep = check_ellipticity(kernel, cfg.delta * cfg.grid.max_wavenumber());
        if (!rep.pass)
            throw ConfigError("kernel '" + kernel.name + "' fails ellipticity: " + rep.note);
        return BidiTarget::nonlocal(kernel);
    }
    throw ConfigError("unknown target '" + cfg.target_name + "'");
}

int cmd_solve(const CommonArgs& args, bool solve_target) {
    const AppConfig cfg = load(args);
    require_admissible_pair(cfg.epsilon, cfg.delta);
    const Field w0 = sech_squared_pulse(cfg.grid, cfg.w0);
    const fs::path out = fs::path(cfg.output_dir) / "trajectory";
    SolveOptions options;
    options.blow_up_threshold = cfg.blow_up_threshold;

    if (solve_target) {
        const BidiTarget target = resolve_target(cfg);
        const UnidirectionalModel model = model_by_name(cfg.model_name);
        const Field u1 = time_derivative(w0, model, cfg.epsilon, cfg.delta);
        const BidiTrajectory traj = solve_bidirectional(w0, u1, target, cfg.epsilon, cfg.delta,
                                                        cfg.t_end, cfg.dt, options);
        export_trajectory(out, traj);
        if (traj.status != SolveStatus::ok) {
            std::cerr << "blow-up at t = " << traj.last_valid_time << "\n";
            return kExitBlowUp;
        }
        std::cout << "solved " << traj.target_name << " to t = " << cfg.t_end << ", "
                  << traj.times.size() << " snapshots -> " << out.string() << "\n";
        return kExitOk;
    }
    const UnidirectionalModel model = model_by_name(cfg.model_name);
    const Trajectory traj =
        solve_unidirectional(w0, model, cfg.epsilon, cfg.delta, cfg.t_end, cfg.dt, options);
    export_trajectory(out, traj);
    if (traj.status != SolveStatus::ok) {
        std::cerr << "blow-up at t = " << traj.last_valid_time << "\n";
        return kExitBlowUp;
    }
    std::cout << "solved " << model.name << " to t = " << cfg.t_end << ", " << traj.times.size()
              << " snapshots -> " << out.string() << "\n";
    return kExitOk;
}

int cmd_residual(const CommonArgs& args) {
    const AppConfig cfg = load(args);
    if (cfg.path.empty()) throw ConfigError("residual scan needs a nonempty path");
    const UnidirectionalModel model = model_by_name(cfg.model_name);
    std::optional<Kernel> kernel;
    if (!cfg.kernel_name.empty()) kernel = kernel_by_name(cfg, cfg.kernel_name);
    const Field w0 = sech_squared_pulse(cfg.grid, cfg.w0);
    const ScanResult scan =
        residual_scan(w0, model, kernel, cfg.s, cfg.path, cfg.t_star, cfg.dt);
    fs::create_directories(cfg.output_dir);
    write_text_file(fs::path(cfg.output_dir) / "scan.csv", scan_csv(scan));
    write_text_file(fs::path(cfg.output_dir) / "scan_fit.json", scan_json(scan, cfg.path));
    for (const auto& f : scan.fits)
        std::cout << "t = " << f.t << ": slope " << f.slope << " (r^2 " << f.r_squared << ")\n";
    if (scan.degenerate) std::cout << "fit degenerate (norms at noise floor)\n";
    return kExitOk;
}

int cmd_sweep(const CommonArgs& args) {
    const AppConfig cfg = load(args);
    const SweepConfig sweep = to_sweep_config(cfg);
    validate_sweep(sweep);
    const std::vector<RunRecord> records = run_approximation(sweep);
    const ErrorLaw law =
        sweep.model.name == "kdv" ? ErrorLaw::eps2 : ErrorLaw::eps2_plus_delta4;

    bool partial = false;
    for (const auto& rec : records)
        if (rec.status != "ok") partial = true;

    std::optional<FitResult> fit;
    std::string note;
    try {
        fit = fit_error_law(records, law, sweep.t_star);
    } catch (const std::exception& ex) {
        note = ex.what();
    }
    make_report(sweep, records, fit, law, cfg.output_dir);

    for (const auto& rec : records)
        std::cout << "eps=" << rec.epsilon << " delta=" << rec.delta << " status=" << rec.status
                  << "\n";
    if (fit) {
        for (const auto& sf : fit->slope_in_eps)
            std::cout << "slope-in-eps at t*=" << sf.at << ": " << sf.slope << "\n";
        for (const auto& sf : fit->slope_in_t)
            std::cout << "slope-in-t at eps=" << sf.at << ": " << sf.slope << "\n";
        std::cout << "C_bound = " << fit->C_bound << " (law " << law_name(law) << ")\n";
    } else {
        std::cout << "fit unavailable: " << note << "\n";
    }
    std::cout << "report -> " << cfg.output_dir << "\n";
    if (partial) return kExitPartial;
    if (!fit) return kExitPartial;
    return kExitOk;
}

int cmd_energy(const CommonArgs& args) {
    const AppConfig cfg = load(args);
    require_admissible_pair(cfg.epsilon, cfg.delta);
    SweepConfig sweep = to_sweep_config(cfg);
    sweep.path = {{cfg.epsilon, cfg.delta}};
    validate_sweep(sweep);
    const auto records = run_approximation(sweep);
    fs::create_directories(cfg.output_dir);
    write_text_file(fs::path(cfg.output_dir) / "energy.csv", energy_csv(records.front()));
    std::cout << "energy series (" << records.front().times.size() << " samples, status "
              << records.front().status << ") -> " << cfg.output_dir << "/energy.csv\n";
    if (records.front().status == "blowup") return kExitBlowUp;
    return records.front().status == "ok" ? kExitOk : kExitPartial;
}

int cmd_report(const CommonArgs& args, const std::string& records_path) {
    const AppConfig cfg = load(args);
    const SweepConfig sweep = to_sweep_config(cfg);
    const std::string path =
        records_path.empty() ? (fs::path(cfg.output_dir) / "records.csv").string() : records_path;
    const std::vector<RunRecord> records = parse_records_csv(read_text_file(path));
    const ErrorLaw law =
        sweep.model.name == "kdv" ? ErrorLaw::eps2 : ErrorLaw::eps2_plus_delta4;
    std::optional<FitResult> fit;
    std::string note;
    try {
        fit = fit_error_law(records, law, sweep.t_star);
    } catch (const std::exception& ex) {
        note = ex.what();
    }
    make_report(sweep, records, fit, law, cfg.output_dir);
    std::cout << "report -> " << cfg.output_dir << "\n";
    return kExitOk;
}

json kernel_json(const AppConfig& cfg, const Kernel& kernel) {
    json j;
    j["name"] = kernel.name;
    j["r"] = kernel.order;
    const auto rep = check_ellipticity(kernel, cfg.grid.max_wavenumber());
    j["ellipticity"] = {{"c1", rep.c1}, {"c2", rep.c2}, {"pass", rep.pass}, {"note", rep.note}};
    try {
        const auto mom = check_moments(kernel);
        j["moments"] = {{"m0", mom.m0},
                        {"m2", mom.m2},
                        {"m0_ok", mom.m0_ok},
                        {"m2_ok", mom.m2_ok}};
        if (mom.m4_verified)
            j["moments"]["m4_abs"] = mom.m4_abs;
        else
            j["moments"]["m4_abs"] = "unverified";
    } catch (const std::exception& ex) {
        j["moments"] = std::string("unavailable: ") + ex.what();
    }
    try {
        const double m0 = correction_symbol_at_zero(kernel);
        j["m_at_zero"] = m0;
        if (std::abs(m0) < 1e-9) j["note"] = "m == 0 (correction-free)";
    } catch (const std::exception& ex) {
        j["m_at_zero"] = std::string("unavailable: ") + ex.what();
    }
    return j;
}

int cmd_kernels(const CommonArgs& args, bool as_json) {
    AppConfig cfg;
    if (!args.config_path.empty()) cfg = load_config(args.config_path, args.overrides);
    json list = json::array();
    for (const auto& kernel : cfg.kernels) list.push_back(kernel_json(cfg, kernel));
    if (as_json) {
        std::cout << list.dump(2) << "\n";
        return kExitOk;
    }
    for (const auto& j : list) {
        std::cout << j["name"].get<std::string>() << "  r=" << j["r"].get<double>()
                  << "  ellipticity: " << (j["ellipticity"]["pass"].get<bool>() ? "pass" : "FAIL");
        if (!j["ellipticity"]["note"].get<std::string>().empty())
            std::cout << " (" << j["ellipticity"]["note"].get<std::string>() << ")";
        if (j.contains("moments") && j["moments"].is_object()) {
            std::cout << "  m0=" << j["moments"]["m0"].get<double>()
                      << " m2=" << j["moments"]["m2"].get<double>() << " m4_abs=";
            if (j["moments"]["m4_abs"].is_number())
                std::cout << j["moments"]["m4_abs"].get<double>();
            else
                std::cout << "unverified";
        }
        if (j.contains("note")) std::cout << "  [" << j["note"].get<std::string>() << "]";
        std::cout << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"longwave: pseudospectral long-wave approximation laboratory"};
    app.require_subcommand(1);

    CommonArgs args;
    bool solve_target = false, kernels_json = false;
    std::string records_path;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        sub->add_option("-c,--config", args.config_path, "JSON config file")
            ->required(config_required);
        sub->add_option("-o,--output", args.output_dir, "output directory (overrides config)");
        sub->add_option("--set", args.overrides, "config override key=value (repeatable)");
    };

    auto* solve = app.add_subcommand("solve", "integrate one model or target, export trajectory");
    add_common(solve, true);
    solve->add_flag("--target", solve_target, "solve the bidirectional target instead of the model");

    auto* residual = app.add_subcommand("residual", "residual potential scan over the path");
    add_common(residual, true);

    auto* sweep = app.add_subcommand("sweep", "approximation sweep + error-law fit + report");
    add_common(sweep, true);

    auto* energy = app.add_subcommand("energy", "energy time series for one parameter pair");
    add_common(energy, true);

    auto* report = app.add_subcommand("report", "re-render a report from records.csv");
    add_common(report, true);
    report->add_option("--records", records_path, "records.csv path (default: output_dir)");

    auto* kernels = app.add_subcommand("kernels", "list registered kernels");
    add_common(kernels, false);
    kernels->add_flag("--json", kernels_json, "machine-readable listing");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(args, solve_target);
        if (residual->parsed()) return cmd_residual(args);
        if (sweep->parsed()) return cmd_sweep(args);
        if (energy->parsed()) return cmd_energy(args);
        if (report->parsed()) return cmd_report(args, records_path);
        if (kernels->parsed()) return cmd_kernels(args, kernels_json);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
