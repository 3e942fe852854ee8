#pragma once

#include "longwave/grid.hpp"
#include "longwave/kernel.hpp"
#include "longwave/unidirectional.hpp"

namespace longwave {

/// The error fields entering the energy functionals: r = u - w, its time
/// derivative, the zero-mean antiderivative of r_t, and the carrying wave w.
struct ErrorState {
    Field r;
    Field r_t;
    Field rho_t;
    Field w;
    double epsilon = 0.0;
    double delta = 0.0;
    double s = 0.0;
    double time = 0.0;
};

/// Assemble an ErrorState from matching snapshots (same grid, same time);
/// w_t comes from the model right-hand side, rho_t from antiderivative(r_t)
/// (which requires mean(r_t) to vanish numerically).
ErrorState build_error_state(const Field& u, const Field& u_t, const Field& w,
                             const UnidirectionalModel& model, double eps, double delta, double s,
                             double time);

/// Sum of squares ||rho_t||^2 + d^2 ||r_t||^2 + ||r||^2 in H^s.
double quadratic_sum(const ErrorState& state);

/// The energy
///   E^2 = (1/2)(||rho_t||^2 + d^2 ||r_t||^2 + ||r||^2)
///         + e <L^s(w r), L^s r> + (e/2) <L^s r^2, L^s r>
/// with L^s = (1 - Dxx)^{s/2}. Throws NegativeEnergyError when E^2 < 0
/// (the positivity regime assumes small e and ||r||_{H^s} <= 1).
double energy(const ErrorState& state);

/// Nonlocal variant: E^2 plus (1/2) d^4 <L^s M_delta Dx r_t, L^s Dx r_t>.
double energy_nonlocal(const ErrorState& state, const Kernel& kernel);

/// Plain quadratic energy sqrt((1/2) quadratic_sum); no cross terms.
double energy_quadratic(const ErrorState& state);

} // namespace longwave
