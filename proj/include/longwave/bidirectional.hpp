#pragma once

#include <optional>
#include <string>
#include <vector>

#include "longwave/grid.hpp"
#include "longwave/kernel.hpp"
#include "longwave/unidirectional.hpp" // SolveOptions, SolveStatus

namespace longwave {

/// u_tt for the improved Boussinesq equation, solved for the acceleration:
/// symbol -k^2/(1 + d^2 k^2) applied to u + e * u^2 (product filtered).
Field ib_acceleration(const Field& u, double eps, double delta);

/// u_tt for the nonlocal wave equation: symbol -k^2 beta_hat(d k) applied to
/// u + e * u^2. Throws EllipticityViolation if beta_hat(d k) <= 0 at a mode.
Field nonlocal_acceleration(const Field& u, const Kernel& kernel, double eps, double delta);

/// Which second-order-in-time equation to integrate.
struct BidiTarget {
    enum class Kind { ib, nonlocal };
    Kind kind = Kind::ib;
    std::optional<Kernel> kernel; // required when kind == nonlocal

    static BidiTarget ib() { return {}; }
    static BidiTarget nonlocal(Kernel k) {
        return BidiTarget{Kind::nonlocal, std::move(k)};
    }
    std::string name() const;
};

/// Snapshots of (u, u_t) for one run of a bidirectional solver.
struct BidiTrajectory {
    GridSpec grid;
    std::string target_name;
    double epsilon = 0.0;
    double delta = 0.0;
    double dt = 0.0;
    std::vector<double> times;
    std::vector<Field> u_states;
    std::vector<Field> ut_states;
    SolveStatus status = SolveStatus::ok;
    double last_valid_time = 0.0;
};

/// Classical RK4 on the first-order system (u, v)' = (v, accel(u)), with the
/// same L-infinity blow-up monitor and snapshot stride as the unidirectional
/// solver.
BidiTrajectory solve_bidirectional(const Field& u0, const Field& u1, const BidiTarget& target,
                                   double eps, double delta, double t_end, double dt,
                                   const SolveOptions& options = {});

} // namespace longwave
