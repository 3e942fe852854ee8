#include "longwave/residual.hpp"

#include <algorithm>
#include <cmath>

#include "longwave/errors.hpp"
#include "longwave/spectral.hpp"

namespace longwave {

Field residual_direct(const Field& w, const UnidirectionalModel& model, double eps, double delta) {
    const Field wtt = second_time_derivative(w, model, eps, delta);
    Field f = wtt - derivative(w, 2);
    f += (-delta * delta) * derivative(wtt, 2);
    f += -eps * derivative(multiply(w, w), 2);
    return f;
}

namespace {

Field drop_mean(Field f) {
    const double m = mean(f);
    for (double& v : f.samples) v -= m;
    return f;
}

} // namespace

// The CH potential in terms of w, w_t and w_tt. Written with
//   S   = w_x^2 / 2 + w w_xx                (so w_x^2 + 2 w w_xx = 2 S)
//   h   = 3 w_xxx + 5 w_xxt
// the closed form is
//   F = e^2 (w^3/3)_x
//     - (e^2 d^2 / 8) [ 3 w (2S)_x - 3 w (w^2)_xxx + 2 w_xx (w^2)_x + w_x (w^2)_xx ]
//     + (d^4 / 16)    [ Dx Dt - 3 Dx^2 ] h
//     + (e d^4 / 32)  [ 3 (Dx^2 Dt - 3 Dx^3)(2S)
//                       + 2 (-3 w Dx^2 + 2 w_xx + w_x Dx) h ]
//     + (e^2 d^4 / 32)[ -9 w Dx^3 + 6 w_xx Dx + 3 w_x Dx^2 ](2S).
// The first bracket's leading term carries the factor w; dropping it breaks
// the f = F_x identity at order e^2 d^2 (checked against residual_direct).
Field ch_potential(const Field& w, double eps, double delta) {
    const UnidirectionalModel model = ch_model();
    const Field wt = model_rhs(w, model, eps, delta);
    const Field wtt = second_time_derivative(w, model, eps, delta);
    const double d2 = delta * delta, d4 = d2 * d2;

    const Field wx = derivative(w, 1), wxx = derivative(w, 2), wxxx = derivative(w, 3);
    const Field wxt = derivative(wt, 1), wxxt = derivative(wt, 2);
    const Field w2 = multiply(w, w);
    const Field two_s = dealias(multiply(wx, wx) + 2.0 * multiply(w, wxx));
    const Field h = 3.0 * wxxx + 5.0 * wxxt;
    const Field h_t = 3.0 * derivative(wt, 3) + 5.0 * derivative(wtt, 2);
    const Field two_s_t =
        dealias(2.0 * multiply(wx, wxt) + 2.0 * multiply(wt, wxx) + 2.0 * multiply(w, wxxt));

    Field f = (eps * eps / 3.0) * derivative(multiply(w2, w), 1);
    f += (-eps * eps * d2 / 8.0) *
         (3.0 * multiply(w, derivative(two_s, 1)) - 3.0 * multiply(w, derivative(w2, 3)) +
          2.0 * multiply(wxx, derivative(w2, 1)) + multiply(wx, derivative(w2, 2)));
    f += (d4 / 16.0) * (derivative(h_t, 1) - 3.0 * derivative(h, 2));
    f += (eps * d4 / 32.0) *
         (3.0 * (derivative(two_s_t, 2) - 3.0 * derivative(two_s, 3)) +
          2.0 * (-3.0 * multiply(w, derivative(h, 2)) + 2.0 * multiply(wxx, h) +
                 multiply(wx, derivative(h, 1))));
    f += (eps * eps * d4 / 32.0) *
         (-9.0 * multiply(w, derivative(two_s, 3)) + 6.0 * multiply(wxx, derivative(two_s, 1)) +
          3.0 * multiply(wx, derivative(two_s, 2)));
    return drop_mean(std::move(f));
}

// F = e^2 (w^3/3)_x - (e d^2/4)(6 w w_xxt + 2 w_x w_xt + w_t w_xx - 9 w_x w_xx)
//       + (d^4/16) Dx^3 (5 w_tt - 12 w_xt - 9 w_xx)
Field bbm_potential(const Field& w, double eps, double delta) {
    const UnidirectionalModel model = bbm_model();
    const Field wt = model_rhs(w, model, eps, delta);
    const Field wtt = second_time_derivative(w, model, eps, delta);
    const double d2 = delta * delta, d4 = d2 * d2;

    const Field wx = derivative(w, 1), wxx = derivative(w, 2);
    const Field wxt = derivative(wt, 1), wxxt = derivative(wt, 2);

    Field f = (eps * eps / 3.0) * derivative(multiply(multiply(w, w), w), 1);
    f += (-eps * d2 / 4.0) * dealias(6.0 * multiply(w, wxxt) + 2.0 * multiply(wx, wxt) +
                                     multiply(wt, wxx) - 9.0 * multiply(wx, wxx));
    f += (d4 / 16.0) * derivative(5.0 * wtt - 12.0 * wxt - 9.0 * wxx, 3);
    return drop_mean(std::move(f));
}

// F = Dx { (e^2/3) w^3 + (e d^2/4)[ -3 w_x^2 + 4 (w w_x)_t ]
//          + (d^4/4)( -w_xxxx + 2 w_xxxt ) }
Field kdv_potential(const Field& w, double eps, double delta) {
    const UnidirectionalModel model = kdv_model();
    const Field wt = model_rhs(w, model, eps, delta);
    const double d2 = delta * delta, d4 = d2 * d2;

    const Field wx = derivative(w, 1);
    const Field wwx_t = dealias(multiply(wt, wx) + multiply(w, derivative(wt, 1)));

    Field inner = (eps * eps / 3.0) * multiply(multiply(w, w), w);
    inner += (eps * d2 / 4.0) * (-3.0 * multiply(wx, wx) + 4.0 * wwx_t);
    inner += (d4 / 4.0) * (-1.0 * derivative(w, 4) + 2.0 * derivative(wt, 3));
    return drop_mean(derivative(inner, 1));
}

Field potential_for(const Field& w, const UnidirectionalModel& model, double eps, double delta) {
    if (model.name == "ch") return ch_potential(w, eps, delta);
    if (model.name == "bbm") return bbm_potential(w, eps, delta);
    if (model.name == "kdv") return kdv_potential(w, eps, delta);
    throw InvalidArgument("no closed-form potential for model '" + model.name + "'");
}

Field residual_correction(const Field& w, const UnidirectionalModel& model, const Kernel& kernel,
                          double eps, double delta) {
    const Field wtt = second_time_derivative(w, model, eps, delta);
    const double d4 = delta * delta * delta * delta;
    return d4 * derivative(apply_correction_operator(wtt, kernel, delta), 3);
}

namespace {

struct LineFit {
    double slope = 0.0, intercept = 0.0, r_squared = 1.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

} // namespace

ScanResult residual_scan(const Field& w0, const UnidirectionalModel& model,
                         const std::optional<Kernel>& kernel, double s,
                         const std::vector<std::pair<double, double>>& path,
                         const std::vector<double>& times, double dt) {
    if (path.empty()) throw InvalidArgument("residual scan needs a nonempty parameter path");
    if (times.empty()) throw InvalidArgument("residual scan needs at least one sample time");
    for (const auto& [e, d] : path)
        if (!(0.0 < e && e <= d && d <= 1.0))
            throw InvalidArgument("parameter pair violates 0 < eps <= delta <= 1");
    std::vector<double> ts = times;
    std::sort(ts.begin(), ts.end());

    ScanResult result;
    for (const auto& [e, d] : path) {
        Field w = w0;
        double t_cur = 0.0;
        for (double t : ts) {
            if (t > t_cur) {
                Trajectory leg = solve_unidirectional(w, model, e, d, t - t_cur, dt);
                if (leg.status != SolveStatus::ok)
                    throw Error("unidirectional solve blew up during residual scan");
                w = leg.states.back();
                t_cur = t;
            }
            Field F = potential_for(w, model, e, d);
            if (kernel) F += residual_correction(w, model, *kernel, e, d);
            ResidualSample sample;
            sample.epsilon = e;
            sample.delta = d;
            sample.t = t;
            sample.s = s;
            sample.norm_F = sobolev_norm(F, s);
            sample.model = model.name;
            sample.kernel = kernel ? kernel->name : "";
            result.samples.push_back(sample);
        }
    }

    double max_norm = 0.0;
    for (const auto& sample : result.samples) max_norm = std::max(max_norm, sample.norm_F);
    result.degenerate = max_norm < 1e-12;
    if (result.degenerate || path.size() < 2) return result;

    for (double t : ts) {
        std::vector<double> le, ln;
        for (const auto& sample : result.samples) {
            if (sample.t == t && sample.norm_F > 1e-300) {
                le.push_back(std::log(sample.epsilon));
                ln.push_back(std::log(sample.norm_F));
            }
        }
        if (le.size() < 2) continue;
        bool distinct = false;
        for (double v : le) distinct = distinct || v != le.front();
        if (!distinct) continue;
        const LineFit lf = fit_line(le, ln);
        result.fits.push_back(ScanFit{t, lf.slope, lf.intercept, lf.r_squared});
    }
    return result;
}

} // namespace longwave
