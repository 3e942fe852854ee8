#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "longwave/grid.hpp"

namespace longwave {

/// Nonlocal convolution kernel, registered by its Fourier symbol beta_hat.
///
/// The symbol must be even and positive wherever the solvers sample it. An
/// optional spatial form beta(X) backs the quadrature checks; without it the
/// fourth absolute moment cannot be verified.
struct Kernel {
    std::string name;
    double order = 2.0; // declared decay rate r in the ellipticity condition
    std::function<double(double)> symbol;
    std::function<double(double)> spatial; // may be empty

    double symbol_at(double eta) const;    // evaluates and validates finiteness
};

/// beta_hat(eta) = (1+eta^2)^{-1}, r = 2; spatial form (1/2) e^{-|X|}.
/// Turns the nonlocal equation into the improved Boussinesq equation.
Kernel exponential_kernel();

/// beta(X) = (1/sqrt(4 pi)) e^{-X^2/4}, beta_hat(eta) = e^{-eta^2}.
/// Moments are normalized (m0 = 1, m2 = 2) but no finite r satisfies the
/// lower ellipticity bound, so this kernel is for symbol/moment tests only.
Kernel gaussian_kernel();

/// beta_hat(eta) = (1 + eta^2/3)^{-3}, r = 6. Moment-normalized so m0 = 1,
/// m2 = 2; the correction symbol m tends to 1/3 at eta = 0.
Kernel power6_kernel();

/// Kernel defined by linear interpolation of (eta, beta_hat) pairs, mirrored
/// evenly; the table must cover every |eta| the solvers will sample.
Kernel interpolated_kernel(std::string name, double order,
                           std::vector<std::pair<double, double>> table);

std::vector<Kernel> builtin_kernels();

struct EllipticityReport {
    double c1 = 0.0;      // min beta_hat(eta) (1+eta^2)^{r/2} over the sample
    double c2 = 0.0;      // max of the same
    bool pass = false;     // positive, finite, and stable under doubling eta_max
    std::string note;
};

/// Sample beta_hat(eta)(1+eta^2)^{r/2} densely on [0, eta_max] and again on
/// [0, 2 eta_max]; pass requires 0 < c1 <= c2 < inf and both bounds stable
/// under the doubling.
EllipticityReport check_ellipticity(const Kernel& kernel, double eta_max, int n_samples = 4096);

struct MomentReport {
    double m0 = 0.0;      // from beta_hat(0)
    double m2 = 0.0;      // from -beta_hat''(0), central differences
    double m4_abs = 0.0;  // quadrature of |X|^4 |beta| when a spatial form exists
    bool m0_ok = false;   // |m0 - 1| small
    bool m2_ok = false;   // |m2 - 2| small
    bool m4_verified = false;
    double moment_tol = 1e-6;
};

/// Verify the zeroth/second moments from symbol derivatives at 0 and, when a
/// spatial form is attached, the fourth absolute moment by quadrature.
/// Throws InvalidArgument if the finite differences do not converge.
MomentReport check_moments(const Kernel& kernel);

/// Correction symbol m with 1/beta_hat(eta) = 1 + eta^2 + eta^4 m(eta).
/// For |eta| <= eta_cut returns the continuous extension at 0, computed by
/// fourth-order central differences of 1/beta_hat with step halving.
double correction_symbol(const Kernel& kernel, double eta, double eta_cut = 1e-2);

/// Limit value m(0) (the small-|eta| branch of correction_symbol).
double correction_symbol_at_zero(const Kernel& kernel);

/// Convolution with the rescaled kernel: multiply coefficients by
/// beta_hat(delta k).
Field convolve(const Field& field, const Kernel& kernel, double delta);

/// Pseudodifferential correction operator: multiply coefficients by
/// m(delta k).
Field apply_correction_operator(const Field& field, const Kernel& kernel, double delta);

} // namespace longwave
