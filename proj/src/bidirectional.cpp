#include "longwave/bidirectional.hpp"

#include <cmath>

#include "longwave/errors.hpp"
#include "longwave/spectral.hpp"

namespace longwave {

std::string BidiTarget::name() const {
    if (kind == Kind::ib) return "ib";
    return "nonlocal:" + (kernel ? kernel->name : std::string("?"));
}

namespace {

void validate_parameters(double eps, double delta) {
    // evaluators allow the linear limit eps = 0 and delta beyond the
    // asymptotic regime; experiment configs enforce 0 < eps <= delta <= 1
    if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidArgument("eps must be in [0, 1]");
    if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
}

std::vector<double> accel_table(const GridSpec& grid, const BidiTarget& target, double delta) {
    std::vector<double> table(grid.n);
    if (target.kind == BidiTarget::Kind::ib) {
        for (int m = 0; m < grid.n; ++m) {
            const double k = grid.wavenumber(m);
            table[m] = -k * k / (1.0 + delta * delta * k * k);
        }
        return table;
    }
    if (!target.kernel) throw ConfigError("nonlocal target needs a kernel");
    for (int m = 0; m < grid.n; ++m) {
        const double k = grid.wavenumber(m);
        const double b = target.kernel->symbol_at(delta * k);
        if (!(b > 0.0))
            throw EllipticityViolation("beta_hat(delta k) = " + std::to_string(b) +
                                       " at k = " + std::to_string(k));
        table[m] = -k * k * b;
    }
    return table;
}

Field acceleration(const Field& u, double eps, const std::vector<double>& table) {
    if (eps == 0.0) return apply_symbol(u, table);
    return apply_symbol(u + eps * multiply(u, u), table);
}

} // namespace

Field ib_acceleration(const Field& u, double eps, double delta) {
    validate_parameters(eps, delta);
    return acceleration(u, eps, accel_table(u.grid, BidiTarget::ib(), delta));
}

Field nonlocal_acceleration(const Field& u, const Kernel& kernel, double eps, double delta) {
    validate_parameters(eps, delta);
    return acceleration(u, eps, accel_table(u.grid, BidiTarget::nonlocal(kernel), delta));
}

BidiTrajectory solve_bidirectional(const Field& u0, const Field& u1, const BidiTarget& target,
                                   double eps, double delta, double t_end, double dt,
                                   const SolveOptions& options) {
    validate_parameters(eps, delta);
    if (!(u0.grid == u1.grid)) throw InvalidArgument("u0 and u1 live on different grids");
    if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
    if (!(t_end > 0.0)) throw InvalidArgument("t_end must be positive");

    const GridSpec grid = u0.grid;
    const auto table = accel_table(grid, target, delta);
    const int nsteps = static_cast<int>(std::llround(t_end / dt));
    int stride = options.snapshot_stride;
    if (stride <= 0) stride = std::max(1, (nsteps + 1999) / 2000);

    BidiTrajectory traj;
    traj.grid = grid;
    traj.target_name = target.name();
    traj.epsilon = eps;
    traj.delta = delta;
    traj.dt = dt;
    traj.times.push_back(0.0);
    traj.u_states.push_back(u0);
    traj.ut_states.push_back(u1);

    Field u = u0, v = u1;
    for (int n = 0; n < nsteps; ++n) {
        const Field a1 = acceleration(u, eps, table);
        const Field u2 = u + (dt / 2.0) * v, v2 = v + (dt / 2.0) * a1;
        const Field a2 = acceleration(u2, eps, table);
        const Field u3 = u + (dt / 2.0) * v2, v3 = v + (dt / 2.0) * a2;
        const Field a3 = acceleration(u3, eps, table);
        const Field u4 = u + dt * v3, v4 = v + dt * a3;
        const Field a4 = acceleration(u4, eps, table);
        u = u + (dt / 6.0) * (v + 2.0 * v2 + 2.0 * v3 + v4);
        v = v + (dt / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);

        const double t = (n + 1) * dt;
        if (!all_finite(u) || linf_norm(u) > options.blow_up_threshold) {
            traj.status = SolveStatus::blown_up;
            return traj;
        }
        traj.last_valid_time = t;
        if ((n + 1) % stride == 0 || n + 1 == nsteps) {
            if (traj.times.back() != t) {
                traj.times.push_back(t);
                traj.u_states.push_back(u);
                traj.ut_states.push_back(v);
            }
        }
    }
    return traj;
}

} // namespace longwave
