#include "longwave/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "longwave/errors.hpp"
#include "longwave/spectral.hpp"

namespace longwave {

double Kernel::symbol_at(double eta) const {
    const double v = symbol(eta);
    if (!std::isfinite(v))
        throw InvalidArgument("kernel '" + name + "' symbol not finite at eta=" + std::to_string(eta));
    return v;
}

Kernel exponential_kernel() {
    Kernel k;
    k.name = "exponential";
    k.order = 2.0;
    k.symbol = [](double eta) { return 1.0 / (1.0 + eta * eta); };
    k.spatial = [](double x) { return 0.5 * std::exp(-std::abs(x)); };
    return k;
}

Kernel gaussian_kernel() {
    Kernel k;
    k.name = "gaussian";
    k.order = 2.0;
    k.symbol = [](double eta) { return std::exp(-eta * eta); };
    k.spatial = [](double x) {
        return std::exp(-0.25 * x * x) / std::sqrt(4.0 * std::numbers::pi);
    };
    return k;
}

Kernel power6_kernel() {
    Kernel k;
    k.name = "power6";
    k.order = 6.0;
    k.symbol = [](double eta) {
        const double q = 1.0 + eta * eta / 3.0;
        return 1.0 / (q * q * q);
    };
    // inverse transform of (1 + eta^2/3)^{-3}; decays like e^{-sqrt(3)|X|}
    k.spatial = [](double x) {
        const double s3 = std::sqrt(3.0);
        const double ax = std::abs(x);
        return s3 * (3.0 + 3.0 * s3 * ax + 3.0 * x * x) * std::exp(-s3 * ax) / 16.0;
    };
    return k;
}

Kernel interpolated_kernel(std::string name, double order,
                           std::vector<std::pair<double, double>> table) {
    if (table.size() < 2) throw ConfigError("kernel table needs at least two points");
    std::sort(table.begin(), table.end());
    if (table.front().first != 0.0)
        throw ConfigError("kernel table must start at eta = 0");
    for (size_t i = 1; i < table.size(); ++i)
        if (table[i].first <= table[i - 1].first)
            throw ConfigError("kernel table abscissae must be strictly increasing");
    Kernel k;
    k.name = std::move(name);
    k.order = order;
    k.symbol = [tab = std::move(table)](double eta) -> double {
        const double a = std::abs(eta);
        if (a > tab.back().first)
            throw InvalidArgument("kernel table does not cover |eta| = " + std::to_string(a));
        auto hi = std::lower_bound(tab.begin(), tab.end(), a,
                                   [](const auto& p, double v) { return p.first < v; });
        if (hi == tab.begin()) return hi->second;
        auto lo = hi - 1;
        const double w = (a - lo->first) / (hi->first - lo->first);
        return lo->second + w * (hi->second - lo->second);
    };
    return k;
}

std::vector<Kernel> builtin_kernels() {
    return {exponential_kernel(), gaussian_kernel(), power6_kernel()};
}

namespace {

std::pair<double, double> ellipticity_bounds(const Kernel& kernel, double eta_max, int n) {
    double c1 = std::numeric_limits<double>::infinity();
    double c2 = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double eta = eta_max * i / n;
        const double v = kernel.symbol_at(eta) * std::pow(1.0 + eta * eta, kernel.order / 2.0);
        c1 = std::min(c1, v);
        c2 = std::max(c2, v);
    }
    return {c1, c2};
}

} // namespace

EllipticityReport check_ellipticity(const Kernel& kernel, double eta_max, int n_samples) {
    if (!(eta_max > 0.0)) throw InvalidArgument("eta_max must be positive");
    EllipticityReport rep;
    auto [c1, c2] = ellipticity_bounds(kernel, eta_max, n_samples);
    rep.c1 = c1;
    rep.c2 = c2;
    if (!(c1 > 0.0) || !std::isfinite(c2)) {
        rep.pass = false;
        rep.note = c1 > 0.0 ? "upper bound unbounded" : "lower bound fails (beta_hat <= 0 or c1 = 0)";
        return rep;
    }
    // Stability under doubling the sampled range: a genuine order-r kernel
    // keeps both constants; a faster-decaying symbol sends c1 to 0.
    auto [d1, d2] = ellipticity_bounds(kernel, 2.0 * eta_max, 2 * n_samples);
    const bool lower_stable = d1 >= 0.5 * c1;
    const bool upper_stable = d2 <= 2.0 * c2;
    rep.pass = lower_stable && upper_stable;
    if (!lower_stable) rep.note = "lower bound fails under doubling eta_max";
    else if (!upper_stable) rep.note = "upper bound fails under doubling eta_max";
    return rep;
}

namespace {

// Fourth-order central stencils at 0; the caller does the step refinement.
double second_derivative(const std::function<double(double)>& f, double h) {
    return (-f(-2 * h) + 16 * f(-h) - 30 * f(0) + 16 * f(h) - f(2 * h)) / (12 * h * h);
}

double fourth_derivative(const std::function<double(double)>& f, double h) {
    return (-f(-3 * h) + 12 * f(-2 * h) - 39 * f(-h) + 56 * f(0) - 39 * f(h) + 12 * f(2 * h) -
            f(3 * h)) /
           (6 * h * h * h * h);
}

// Refine until two successive estimates agree; throws when they never do
// (symbol not smooth enough at 0).
double refined(const std::function<double(const std::function<double(double)>&, double)>& stencil,
               const std::function<double(double)>& f, double h0, double tol,
               const std::string& what) {
    double prev = stencil(f, h0);
    double best = prev, best_gap = std::numeric_limits<double>::infinity();
    double h = h0 / 2;
    for (int i = 0; i < 12; ++i, h /= 2) {
        const double cur = stencil(f, h);
        const double gap = std::abs(cur - prev);
        if (gap <= tol * std::max(1.0, std::abs(cur))) return cur;
        if (gap < best_gap) {
            best_gap = gap;
            best = cur;
        }
        prev = cur;
    }
    if (best_gap <= 100 * tol) return best;
    throw InvalidArgument(what + ": finite differences do not converge at eta = 0");
}

// Composite Simpson on [0, b], panels doubled until converged.
double simpson_to(const std::function<double(double)>& f, double b, double tol) {
    double prev = 0.0;
    for (int n = 256; n <= (1 << 20); n *= 2) {
        const double h = b / n;
        double s = f(0.0) + f(b);
        for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
        s *= h / 3.0;
        if (n > 256 && std::abs(s - prev) <= tol * (1.0 + std::abs(s))) return s;
        prev = s;
    }
    return prev;
}

} // namespace

MomentReport check_moments(const Kernel& kernel) {
    MomentReport rep;
    rep.m0 = kernel.symbol_at(0.0);
    const auto f = [&kernel](double eta) { return kernel.symbol_at(eta); };
    rep.m2 = -refined(second_derivative, f, 1e-4 * 16, 1e-6, "kernel '" + kernel.name + "' m2");
    rep.m0_ok = std::abs(rep.m0 - 1.0) <= rep.moment_tol;
    rep.m2_ok = std::abs(rep.m2 - 2.0) <= 1e-4;
    if (kernel.spatial) {
        // integrand X^4 |beta(X)|, even; truncate where it is below 1e-18
        const auto g = [&kernel](double x) { return std::pow(x, 4) * std::abs(kernel.spatial(x)); };
        double b = 16.0;
        while (g(b) > 1e-18 && b < 4096.0) b *= 2.0;
        rep.m4_abs = 2.0 * simpson_to(g, b, 1e-12);
        rep.m4_verified = true;
    } else {
        // no spatial form: the fourth symbol derivative gives the signed
        // moment, a proxy for the absolute one (exact for beta >= 0);
        // stays marked unverified
        rep.m4_abs = std::abs(refined(fourth_derivative, f, 0.2, 1e-6,
                                      "kernel '" + kernel.name + "' m4 proxy"));
        rep.m4_verified = false;
    }
    return rep;
}

double correction_symbol_at_zero(const Kernel& kernel) {
    const auto g = [&kernel](double eta) { return 1.0 / kernel.symbol_at(eta); };
    return refined(fourth_derivative, g, 0.2, 1e-6,
                   "kernel '" + kernel.name + "' correction symbol") /
           24.0;
}

double correction_symbol(const Kernel& kernel, double eta, double eta_cut) {
    if (std::abs(eta) <= eta_cut) return correction_symbol_at_zero(kernel);
    const double b = kernel.symbol_at(eta);
    if (!(b > 0.0))
        throw EllipticityViolation("kernel '" + kernel.name + "' has beta_hat = " +
                                   std::to_string(b) + " at eta = " + std::to_string(eta));
    const double e2 = eta * eta;
    return (1.0 / b - 1.0 - e2) / (e2 * e2);
}

Field convolve(const Field& field, const Kernel& kernel, double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw InvalidArgument("delta must be in (0, 1]");
    return apply_symbol(field, [&](double k) { return kernel.symbol_at(delta * k); });
}

Field apply_correction_operator(const Field& field, const Kernel& kernel, double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw InvalidArgument("delta must be in (0, 1]");
    const double m0 = correction_symbol_at_zero(kernel);
    return apply_symbol(field, [&](double k) {
        const double eta = delta * k;
        return std::abs(eta) <= 1e-2 ? m0 : correction_symbol(kernel, eta);
    });
}

} // namespace longwave
