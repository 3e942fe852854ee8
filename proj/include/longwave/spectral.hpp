#pragma once

#include <functional>
#include <span>

#include "longwave/grid.hpp"

namespace longwave {

/// Forward transform, normalized so that coeff[k] are the coefficients of
/// u(x) = sum_k c_k exp(i k x).
Spectrum forward(const Field& field);

/// Inverse transform back to real samples (imaginary parts discarded).
Field inverse(const Spectrum& spec);

/// Hermitian-symmetry check c_{-k} = conj(c_k), relative tolerance.
bool is_hermitian(const Spectrum& spec, double rtol = 1e-12);

/// Spectral derivative of order j (0 <= j <= 8). Odd orders zero the
/// Nyquist mode so real fields stay real.
Field derivative(const Field& field, int order);

/// Multiply coefficients by a real even symbol sigma(k).
Field apply_symbol(const Field& field, const std::function<double(double)>& sigma);
Field apply_symbol(const Field& field, std::span<const double> table);

/// Build the per-mode table sigma(k_m) for a grid.
std::vector<double> symbol_table(const GridSpec& grid, const std::function<double(double)>& sigma);

/// Discrete Sobolev norm  ||u||_{H^s} = sqrt( L * sum_k (1+k^2)^s |c_k|^2 ),
/// s in [-4, 12].
double sobolev_norm(const Field& field, double s);

/// Matching inner product  L * sum_k (1+k^2)^s Re(c_k conj(d_k)).
double sobolev_inner(const Field& u, const Field& v, double s);

/// L^2 norm (== sobolev_norm with s = 0).
double l2_norm(const Field& field);

/// Dispersion-weighted norm  sqrt( ||f||_{H^s}^2 + delta^2 ||f_x||_{H^s}^2 ),
/// delta in (0, 1].
double xnorm(const Field& field, double s, double delta);

/// Two-thirds-rule filter: zero all modes with |k| > (2/3) k_max. Idempotent.
Spectrum dealias(Spectrum spec);
Field dealias(const Field& field);

/// Pointwise product followed by the two-thirds filter.
Field multiply(const Field& a, const Field& b);

/// Zero-mean spatial antiderivative: returns rho with rho_x = f - mean(f)
/// and mean(rho) = 0. Requires |mean(f)| <= tol; the default tolerance is
/// 1e-8 * ||f||_{L2} + 1e-14. Throws NonZeroMeanError otherwise.
Field antiderivative(const Field& field, double tol_mean = -1.0);

} // namespace longwave
