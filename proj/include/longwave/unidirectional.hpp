#pragma once

#include <string>
#include <vector>

#include "longwave/grid.hpp"

namespace longwave {

/// Coefficients of the generic unidirectional long-wave evolution
///
///   w_t + w_x + a1 e w w_x + a2 e^2 w^2 w_x + a3 e^3 w^3 w_x
///       + d^2 (bx w_xxx + bt w_xxt) - e d^2 (c1 w w_xxx + c2 w_x w_xx) = 0
///
/// with a1..a3 = advection1..3, bx = dispersion_x, bt = dispersion_t,
/// c1 = mixed_www, c2 = mixed_wxwxx. Solvability of the implicit w_xxt term
/// requires 1 - dispersion_t * d^2 k^2 > 0 at every grid mode, which holds
/// for any grid when dispersion_t <= 0.
struct UnidirectionalModel {
    std::string name;
    double advection1 = 0.0;
    double advection2 = 0.0;
    double advection3 = 0.0;
    double dispersion_x = 0.0;
    double dispersion_t = 0.0;
    double mixed_www = 0.0;
    double mixed_wxwxx = 0.0;
};

/// Camassa-Holm: a1 = 1, bx = -3/4, bt = -5/4, c1 = 3/4, c2 = 3/2.
UnidirectionalModel ch_model();
/// BBM: a1 = 1, bx = -3/4, bt = -5/4.
UnidirectionalModel bbm_model();
/// KdV: a1 = 1, bx = 1/2.
UnidirectionalModel kdv_model();
/// KdV in the normalized form q_t + q_x + (3/2) e q q_x + (1/6) e q_xxx = 0,
/// reached with eps = delta^2 = the single parameter of that form.
UnidirectionalModel scaled_kdv_model();

UnidirectionalModel model_by_name(const std::string& name);

enum class SolveStatus { ok, blown_up };

/// Time-ordered snapshots of one solver run. When the L-infinity monitor
/// trips, status is blown_up and times/states end at the last finite state.
struct Trajectory {
    GridSpec grid;
    std::string model_name;
    double epsilon = 0.0;
    double delta = 0.0;
    double dt = 0.0;
    std::vector<double> times;
    std::vector<Field> states;
    SolveStatus status = SolveStatus::ok;
    double last_valid_time = 0.0;
};

struct SolveOptions {
    double blow_up_threshold = 1e6; // on ||w||_Linf
    int snapshot_stride = 0;        // steps between stored states; 0 = auto (<= 2000 states)
};

/// Right-hand side w_t solved from the model equation; all nonlinear
/// products pass through the two-thirds filter.
Field model_rhs(const Field& w, const UnidirectionalModel& model, double eps, double delta);

/// Alias of model_rhs; supplies the coupled initial velocity u_t(x,0).
Field time_derivative(const Field& w, const UnidirectionalModel& model, double eps, double delta);

/// Directional derivative of model_rhs at w in direction v (exact Jacobian
/// action of the discrete right-hand side, filters included).
Field model_rhs_directional(const Field& w, const Field& v, const UnidirectionalModel& model,
                            double eps, double delta);

/// w_tt along solutions: the Jacobian of model_rhs applied to w_t.
Field second_time_derivative(const Field& w, const UnidirectionalModel& model, double eps,
                             double delta);

/// The operator (1 - (5/4) d^2 Dxx)^{-1} that puts the CH equation in
/// evolution form; symbol 1 / (1 + (5/4) d^2 k^2).
Field apply_q(const Field& field, double delta);

/// Integrating-factor classical RK4: the linear part (transport plus
/// dispersion) advances exactly per mode, the nonlinear remainder is
/// stepped explicitly.
Trajectory solve_unidirectional(const Field& w0, const UnidirectionalModel& model, double eps,
                                double delta, double t_end, double dt,
                                const SolveOptions& options = {});

} // namespace longwave
