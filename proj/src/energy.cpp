#include "longwave/energy.hpp"

#include <cmath>

#include "longwave/errors.hpp"
#include "longwave/spectral.hpp"

namespace longwave {

ErrorState build_error_state(const Field& u, const Field& u_t, const Field& w,
                             const UnidirectionalModel& model, double eps, double delta, double s,
                             double time) {
    if (!(u.grid == w.grid) || !(u_t.grid == w.grid))
        throw InvalidArgument("error state requires snapshots on one grid");
    ErrorState state;
    state.r = u - w;
    state.r_t = u_t - time_derivative(w, model, eps, delta);
    state.rho_t = antiderivative(state.r_t);
    state.w = w;
    state.epsilon = eps;
    state.delta = delta;
    state.s = s;
    state.time = time;
    return state;
}

double quadratic_sum(const ErrorState& state) {
    const double a = sobolev_norm(state.rho_t, state.s);
    const double b = sobolev_norm(state.r_t, state.s);
    const double c = sobolev_norm(state.r, state.s);
    return a * a + state.delta * state.delta * b * b + c * c;
}

namespace {

double energy_squared(const ErrorState& state) {
    const double cross = state.epsilon * sobolev_inner(multiply(state.w, state.r), state.r, state.s) +
                         0.5 * state.epsilon *
                             sobolev_inner(multiply(state.r, state.r), state.r, state.s);
    return 0.5 * quadratic_sum(state) + cross;
}

} // namespace

double energy(const ErrorState& state) {
    const double e2 = energy_squared(state);
    if (e2 < 0.0)
        throw NegativeEnergyError("energy squared = " + std::to_string(e2) +
                                  " at t = " + std::to_string(state.time));
    return std::sqrt(e2);
}

double energy_nonlocal(const ErrorState& state, const Kernel& kernel) {
    const Field drt = derivative(state.r_t, 1);
    const double d2 = state.delta * state.delta;
    const double extra =
        0.5 * d2 * d2 *
        sobolev_inner(apply_correction_operator(drt, kernel, state.delta), drt, state.s);
    const double e2 = energy_squared(state) + extra;
    if (e2 < 0.0)
        throw NegativeEnergyError("nonlocal energy squared = " + std::to_string(e2) +
                                  " at t = " + std::to_string(state.time));
    return std::sqrt(e2);
}

double energy_quadratic(const ErrorState& state) {
    return std::sqrt(0.5 * quadratic_sum(state));
}

} // namespace longwave
