#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "longwave/grid.hpp"
#include "longwave/kernel.hpp"
#include "longwave/unidirectional.hpp"

namespace longwave {

/// Residual of inserting a unidirectional state into the improved
/// Boussinesq equation, by direct substitution:
///   f = w_tt - w_xx - d^2 w_xxtt - e (w^2)_xx
/// with w_t, w_tt taken from the model's right-hand side. f integrates to
/// zero over the period.
Field residual_direct(const Field& w, const UnidirectionalModel& model, double eps, double delta);

/// Explicit potentials F with f = F_x, mean-normalized. Each formula is the
/// closed form obtained by eliminating time derivatives through the model
/// equation, so it must match residual_direct under one spatial derivative;
/// the paired tests enforce that identity.
Field ch_potential(const Field& w, double eps, double delta);
Field bbm_potential(const Field& w, double eps, double delta);
Field kdv_potential(const Field& w, double eps, double delta);

/// Potential of the named preset (ch, bbm, kdv).
Field potential_for(const Field& w, const UnidirectionalModel& model, double eps, double delta);

/// Additional potential term for the nonlocal equation:
///   d^4 * Dx^3 ( M_delta w_tt );
/// add to the base potential to get F^M. Vanishes identically for the
/// exponential kernel.
Field residual_correction(const Field& w, const UnidirectionalModel& model, const Kernel& kernel,
                          double eps, double delta);

struct ResidualSample {
    double epsilon = 0.0;
    double delta = 0.0;
    double t = 0.0;
    double s = 0.0;
    double norm_F = 0.0;
    std::string model;
    std::string kernel; // empty when no correction applied
};

struct ScanFit {
    double t = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

struct ScanResult {
    std::vector<ResidualSample> samples;
    std::vector<ScanFit> fits; // one per sample time, log ||F|| vs log eps
    bool degenerate = false;   // all norms at noise floor
};

/// Solve the model from w0 to each requested time for every (eps, delta)
/// pair, evaluate the potential (plus nonlocal correction when a kernel is
/// given) and fit log ||F||_{H^s} against log eps per time slice.
/// Pairs must satisfy 0 < eps <= delta <= 1.
ScanResult residual_scan(const Field& w0, const UnidirectionalModel& model,
                         const std::optional<Kernel>& kernel, double s,
                         const std::vector<std::pair<double, double>>& path,
                         const std::vector<double>& times, double dt);

} // namespace longwave
