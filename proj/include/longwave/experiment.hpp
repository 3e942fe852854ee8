#pragma once

#include <optional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "longwave/bidirectional.hpp"
#include "longwave/grid.hpp"
#include "longwave/kernel.hpp"
#include "longwave/unidirectional.hpp"

namespace longwave {

/// Initial datum a * sech^2(b (x - L/2)).
struct PulseSpec {
    double amplitude = 1.0;
    double width = 1.0;
};

Field sech_squared_pulse(const GridSpec& grid, const PulseSpec& pulse);

/// One approximation experiment: a unidirectional model against a
/// bidirectional target across a parameter path.
struct SweepConfig {
    GridSpec grid = {64.0 * 3.14159265358979323846, 1024};
    UnidirectionalModel model;
    BidiTarget target;
    double s = 1.0;
    double T = 5.0;       // time horizon is min(T/eps, t_cap)
    double t_cap = 5.0;
    double dt = 1e-3;
    double sample_dt = 0.5;
    std::vector<double> t_star = {1.0, 2.0, 5.0};
    std::vector<std::pair<double, double>> path; // (eps, delta)
    PulseSpec w0;
    double c1 = 1.0; // KdV band: c1 <= delta^2/eps <= c2
    double c2 = 1.0;
    double blow_up_threshold = 1e6;
    int workers = 0; // 0 = hardware concurrency
    std::string output_dir = "out";
};

/// Per-point validity: 0 < eps <= delta <= 1, the KdV band and delta^2 <= 1/3
/// for the KdV model, kernel admission for nonlocal targets. Throws
/// ConfigError with the violated constraint.
void validate_sweep(const SweepConfig& config);

struct EnergySample {
    double t = 0.0;
    double E = 0.0;           // energy with the epsilon cross terms
    double E_quadratic = 0.0; // plain quadratic energy
    double norm_r = 0.0;      // ||u - w||_{H^s}
    double quad_sum = 0.0;    // ||rho_t||^2 + d^2 ||r_t||^2 + ||r||^2
    bool positivity_ok = true; // 4 E^2 >= quad_sum
};

struct RunRecord {
    double epsilon = 0.0;
    double delta = 0.0;
    std::vector<double> times;
    std::vector<double> errors; // ||u - w||_{H^s} at times
    std::vector<EnergySample> energies;
    std::string status = "ok"; // ok | blowup | energy-regime-exit | norm-growth | failed: ...
};

/// Solve both sides from the shared initial data for every path point and
/// record the error and energy series at the sample times. Per-point solver
/// failures are recorded in the status, not thrown. Points run concurrently.
std::vector<RunRecord> run_approximation(const SweepConfig& config);

enum class ErrorLaw { eps2_plus_delta4, eps2 };

std::string law_name(ErrorLaw law);
double law_value(ErrorLaw law, double eps, double delta);

struct SlopeFit {
    double at = 0.0; // the fixed t* (slope in eps) or the fixed eps (slope in t)
    double slope = 0.0;
    double r_squared = 1.0;
};

struct FitResult {
    ErrorLaw law = ErrorLaw::eps2_plus_delta4;
    std::vector<SlopeFit> slope_in_eps; // at = t*
    std::vector<SlopeFit> slope_in_t;   // at = eps
    double C_bound = 0.0;    // max error / (law * t): minimal valid constant
    double C_lsq = 0.0;      // geometric-mean constant
    double max_violation = 0.0; // max(error - C_bound * law * t), ~0 by construction
    bool envelope_monotone = true; // peak error nonincreasing along the path
};

/// Two regressions per the experiment design: slope of log error against
/// log eps at each fixed t*, and against log t at each fixed eps; plus the
/// single fitted constant of the bound. Comparison times missing from some
/// record (horizon shorter than t*) are dropped. Throws DegenerateFitError
/// when all errors sit at the noise floor.
FitResult fit_error_law(const std::vector<RunRecord>& records, ErrorLaw law,
                        const std::vector<double>& t_star);

/// Rescaling of a KdV datum to the normalized single-parameter form:
/// returns (q0, eps_bar) with q0 = (2/9)(eps/delta^2) w0 and
/// eps_bar = 3 delta^2. Requires c1 <= delta^2/eps <= c2 and delta^2 <= 1/3.
std::pair<Field, double> kdv_normalization(const Field& w0, double eps, double delta,
                                           double c1 = 1.0, double c2 = 1.0);

} // namespace longwave
