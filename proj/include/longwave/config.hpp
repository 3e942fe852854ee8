#pragma once

#include <optional>
#include <string>
#include <vector>

#include "longwave/experiment.hpp"
#include "longwave/kernel.hpp"

namespace longwave {

/// Parsed experiment configuration. JSON key set (all optional unless a
/// command needs them): grid.L, grid.N, model, target, kernel,
/// custom_kernels, s, T, t_cap, dt, sample_dt, t_star, path, w0.a, w0.b,
/// c1, c2, epsilon, delta, t_end, workers, output_dir.
struct AppConfig {
    GridSpec grid{64.0 * 3.14159265358979323846, 1024};
    std::string model_name = "ch";
    std::string target_name = "ib";
    std::string kernel_name; // empty = none
    double s = 1.0;
    double T = 5.0;
    double t_cap = 5.0;
    double dt = 1e-3;
    bool dt_given = false; // when false, dt is the advection-aware default
    double sample_dt = 0.5;
    std::vector<double> t_star = {1.0, 2.0, 5.0};
    std::vector<std::pair<double, double>> path;
    PulseSpec w0;
    double c1 = 1.0, c2 = 1.0;
    double epsilon = 0.1, delta = 0.1; // single-run commands
    double t_end = 5.0;
    double blow_up_threshold = 1e6;
    int workers = 0;
    std::string output_dir = "out";
    std::vector<Kernel> kernels = builtin_kernels(); // plus custom_kernels entries
};

/// Load a JSON config file, then apply "key=value" overrides (dot paths,
/// values parsed as JSON when possible). Throws ConfigError on a missing
/// file, parse failure, or schema violation.
AppConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Parse from an in-memory JSON string (used by tests and defaults).
AppConfig parse_config(const std::string& json_text,
                       const std::vector<std::string>& overrides = {});

/// Registered kernel lookup; throws ConfigError listing registered names.
const Kernel& kernel_by_name(const AppConfig& config, const std::string& name);

/// Assemble the sweep description (resolves model, target, kernel).
SweepConfig to_sweep_config(const AppConfig& config);

} // namespace longwave
