#include "longwave/unidirectional.hpp"

#include <cmath>
#include <complex>

#include "longwave/errors.hpp"
#include "longwave/spectral.hpp"

namespace longwave {

UnidirectionalModel ch_model() {
    UnidirectionalModel m;
    m.name = "ch";
    m.advection1 = 1.0;
    m.dispersion_x = -0.75;
    m.dispersion_t = -1.25;
    m.mixed_www = 0.75;
    m.mixed_wxwxx = 1.5;
    return m;
}

UnidirectionalModel bbm_model() {
    UnidirectionalModel m;
    m.name = "bbm";
    m.advection1 = 1.0;
    m.dispersion_x = -0.75;
    m.dispersion_t = -1.25;
    return m;
}

UnidirectionalModel kdv_model() {
    UnidirectionalModel m;
    m.name = "kdv";
    m.advection1 = 1.0;
    m.dispersion_x = 0.5;
    return m;
}

UnidirectionalModel scaled_kdv_model() {
    UnidirectionalModel m;
    m.name = "kdv-scaled";
    m.advection1 = 1.5;
    m.dispersion_x = 1.0 / 6.0;
    return m;
}

UnidirectionalModel model_by_name(const std::string& name) {
    if (name == "ch") return ch_model();
    if (name == "bbm") return bbm_model();
    if (name == "kdv") return kdv_model();
    if (name == "kdv-scaled") return scaled_kdv_model();
    throw ConfigError("unknown model '" + name + "' (expected ch, bbm, kdv, kdv-scaled)");
}

namespace {

void validate_parameters(double eps, double delta) {
    // evaluators allow the linear limit eps = 0 and delta beyond the
    // asymptotic regime; experiment configs enforce 0 < eps <= delta <= 1
    if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidArgument("eps must be in [0, 1]");
    if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
}

// Symbol of the inverse left operator 1/(1 - bt d^2 k^2); throws when the
// denominator is not positive at some grid mode.
std::vector<double> inverse_left_table(const GridSpec& grid, const UnidirectionalModel& model,
                                       double delta) {
    std::vector<double> table(grid.n);
    for (int m = 0; m < grid.n; ++m) {
        const double k = grid.wavenumber(m);
        const double denom = 1.0 - model.dispersion_t * delta * delta * k * k;
        if (!(denom > 0.0))
            throw InvertibilityViolation("1 - bt d^2 k^2 = " + std::to_string(denom) +
                                         " at k = " + std::to_string(k));
        table[m] = 1.0 / denom;
    }
    return table;
}

} // namespace

Field model_rhs(const Field& w, const UnidirectionalModel& model, double eps, double delta) {
    validate_parameters(eps, delta);
    const auto inv_left = inverse_left_table(w.grid, model, delta);
    const double d2 = delta * delta;

    Field g = -1.0 * derivative(w, 1);
    g += -model.dispersion_x * d2 * derivative(w, 3);
    if (model.advection1 != 0.0 || model.advection2 != 0.0 || model.advection3 != 0.0) {
        const Field w2 = multiply(w, w);
        if (model.advection1 != 0.0) g += (-model.advection1 * eps / 2.0) * derivative(w2, 1);
        if (model.advection2 != 0.0 || model.advection3 != 0.0) {
            const Field w3 = multiply(w2, w);
            if (model.advection2 != 0.0)
                g += (-model.advection2 * eps * eps / 3.0) * derivative(w3, 1);
            if (model.advection3 != 0.0)
                g += (-model.advection3 * eps * eps * eps / 4.0) * derivative(multiply(w3, w), 1);
        }
    }
    if (model.mixed_www != 0.0 || model.mixed_wxwxx != 0.0) {
        const Field wx = derivative(w, 1);
        const Field wxx = derivative(w, 2);
        const Field wxxx = derivative(w, 3);
        if (model.mixed_www != 0.0) g += (eps * d2 * model.mixed_www) * multiply(w, wxxx);
        if (model.mixed_wxwxx != 0.0) g += (eps * d2 * model.mixed_wxwxx) * multiply(wx, wxx);
    }
    return apply_symbol(g, inv_left);
}

Field time_derivative(const Field& w, const UnidirectionalModel& model, double eps, double delta) {
    return model_rhs(w, model, eps, delta);
}

Field model_rhs_directional(const Field& w, const Field& v, const UnidirectionalModel& model,
                            double eps, double delta) {
    validate_parameters(eps, delta);
    const auto inv_left = inverse_left_table(w.grid, model, delta);
    const double d2 = delta * delta;

    Field g = -1.0 * derivative(v, 1);
    g += -model.dispersion_x * d2 * derivative(v, 3);
    if (model.advection1 != 0.0) g += (-model.advection1 * eps) * derivative(multiply(w, v), 1);
    if (model.advection2 != 0.0 || model.advection3 != 0.0) {
        const Field w2 = multiply(w, w);
        const Field w2p = 2.0 * multiply(w, v);
        if (model.advection2 != 0.0) {
            const Field w3p = dealias(multiply(w2p, w) + multiply(w2, v));
            g += (-model.advection2 * eps * eps / 3.0) * derivative(w3p, 1);
        }
        if (model.advection3 != 0.0) {
            const Field w3 = multiply(w2, w);
            const Field w3p = dealias(multiply(w2p, w) + multiply(w2, v));
            const Field w4p = dealias(multiply(w3p, w) + multiply(w3, v));
            g += (-model.advection3 * eps * eps * eps / 4.0) * derivative(w4p, 1);
        }
    }
    if (model.mixed_www != 0.0 || model.mixed_wxwxx != 0.0) {
        const Field wx = derivative(w, 1), wxx = derivative(w, 2), wxxx = derivative(w, 3);
        const Field vx = derivative(v, 1), vxx = derivative(v, 2), vxxx = derivative(v, 3);
        if (model.mixed_www != 0.0)
            g += (eps * d2 * model.mixed_www) * (multiply(v, wxxx) + multiply(w, vxxx));
        if (model.mixed_wxwxx != 0.0)
            g += (eps * d2 * model.mixed_wxwxx) * (multiply(vx, wxx) + multiply(wx, vxx));
    }
    return apply_symbol(g, inv_left);
}

Field second_time_derivative(const Field& w, const UnidirectionalModel& model, double eps,
                             double delta) {
    return model_rhs_directional(w, model_rhs(w, model, eps, delta), model, eps, delta);
}

Field apply_q(const Field& field, double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw InvalidArgument("delta must be in (0, 1]");
    const double d2 = delta * delta;
    return apply_symbol(field, [d2](double k) { return 1.0 / (1.0 + 1.25 * d2 * k * k); });
}

namespace {

// Nonlinear remainder N(w) (everything in model_rhs except the linear
// transport/dispersion part), premultiplied by the inverse left operator.
Field nonlinear_rhs(const Field& w, const UnidirectionalModel& model, double eps, double delta,
                    const std::vector<double>& inv_left) {
    const double d2 = delta * delta;
    Field g(w.grid);
    if (model.advection1 != 0.0 || model.advection2 != 0.0 || model.advection3 != 0.0) {
        const Field w2 = multiply(w, w);
        if (model.advection1 != 0.0) g += (-model.advection1 * eps / 2.0) * derivative(w2, 1);
        if (model.advection2 != 0.0 || model.advection3 != 0.0) {
            const Field w3 = multiply(w2, w);
            if (model.advection2 != 0.0)
                g += (-model.advection2 * eps * eps / 3.0) * derivative(w3, 1);
            if (model.advection3 != 0.0)
                g += (-model.advection3 * eps * eps * eps / 4.0) * derivative(multiply(w3, w), 1);
        }
    }
    if (model.mixed_www != 0.0 || model.mixed_wxwxx != 0.0) {
        const Field wx = derivative(w, 1);
        const Field wxx = derivative(w, 2);
        const Field wxxx = derivative(w, 3);
        if (model.mixed_www != 0.0) g += (eps * d2 * model.mixed_www) * multiply(w, wxxx);
        if (model.mixed_wxwxx != 0.0) g += (eps * d2 * model.mixed_wxwxx) * multiply(wx, wxx);
    }
    return apply_symbol(g, inv_left);
}

Field apply_complex_table(const Field& f, const std::vector<std::complex<double>>& table) {
    Spectrum spec = forward(f);
    for (int m = 0; m < f.grid.n; ++m) spec.coeff[m] *= table[m];
    return inverse(spec);
}

} // namespace

Trajectory solve_unidirectional(const Field& w0, const UnidirectionalModel& model, double eps,
                                double delta, double t_end, double dt,
                                const SolveOptions& options) {
    validate_parameters(eps, delta);
    if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
    if (!(t_end > 0.0)) throw InvalidArgument("t_end must be positive");
    const GridSpec grid = w0.grid;
    const auto inv_left = inverse_left_table(grid, model, delta);

    const int nsteps = static_cast<int>(std::llround(t_end / dt));
    int stride = options.snapshot_stride;
    if (stride <= 0) stride = std::max(1, (nsteps + 1999) / 2000);

    // exp(lambda dt) tables; lambda is purely imaginary so the linear flow
    // is an exact rotation per mode. Nyquist carries no signed direction.
    const double d2 = delta * delta;
    std::vector<std::complex<double>> e_half(grid.n), e_full(grid.n);
    for (int m = 0; m < grid.n; ++m) {
        const double k = grid.wavenumber(m);
        double lam_im = (m == grid.n / 2) ? 0.0
                                          : (model.dispersion_x * d2 * k * k * k - k) * inv_left[m];
        e_half[m] = std::exp(std::complex<double>(0.0, lam_im * dt / 2.0));
        e_full[m] = std::exp(std::complex<double>(0.0, lam_im * dt));
    }

    Trajectory traj;
    traj.grid = grid;
    traj.model_name = model.name;
    traj.epsilon = eps;
    traj.delta = delta;
    traj.dt = dt;
    traj.times.push_back(0.0);
    traj.states.push_back(w0);
    traj.last_valid_time = 0.0;

    Field w = w0;
    for (int n = 0; n < nsteps; ++n) {
        const Field n1 = nonlinear_rhs(w, model, eps, delta, inv_left);
        const Field wa = apply_complex_table(w + (dt / 2.0) * n1, e_half);
        const Field n2 = nonlinear_rhs(wa, model, eps, delta, inv_left);
        const Field w_half = apply_complex_table(w, e_half);
        const Field wb = w_half + (dt / 2.0) * n2;
        const Field n3 = nonlinear_rhs(wb, model, eps, delta, inv_left);
        const Field w_full = apply_complex_table(w, e_full);
        const Field wc = w_full + dt * apply_complex_table(n3, e_half);
        const Field n4 = nonlinear_rhs(wc, model, eps, delta, inv_left);
        w = w_full + (dt / 6.0) * (apply_complex_table(n1, e_full) +
                                   2.0 * apply_complex_table(n2 + n3, e_half) + n4);

        const double t = (n + 1) * dt;
        if (!all_finite(w) || linf_norm(w) > options.blow_up_threshold) {
            traj.status = SolveStatus::blown_up;
            return traj;
        }
        traj.last_valid_time = t;
        if ((n + 1) % stride == 0 || n + 1 == nsteps) {
            if (traj.times.back() != t) {
                traj.times.push_back(t);
                traj.states.push_back(w);
            }
        }
    }
    return traj;
}

} // namespace longwave
