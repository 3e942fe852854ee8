#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace longwave {

/// Periodic grid on [0, L) with N equispaced nodes x_j = j L / N.
///
/// Wavenumbers are the set 2*pi*j/L for j in {-N/2+1, ..., N/2}, stored in
/// FFT order: index m maps to j = m for m <= N/2 and j = m - N otherwise,
/// so the Nyquist mode sits at +pi*N/L.
struct GridSpec {
    double length = 0.0;
    int n = 0;

    double spacing() const { return length / n; }
    double node(int j) const { return j * length / n; }
    double max_wavenumber() const;           // pi*N/L
    double wavenumber(int m) const;          // FFT-ordered
    std::vector<double> nodes() const;
    std::vector<double> wavenumbers() const; // FFT-ordered

    bool operator==(const GridSpec&) const = default;
};

/// Validating constructor: N even, N >= 8, L > 0.
GridSpec make_grid(double length, int n);

/// Real-valued grid function sampled at the nodes.
struct Field {
    GridSpec grid;
    std::vector<double> samples;

    Field() = default;
    Field(GridSpec g, std::vector<double> values);
    explicit Field(GridSpec g); // zero field
};

/// Sample a function on the grid nodes.
Field make_field(const GridSpec& grid, const std::function<double(double)>& f);

/// Fourier coefficients in the convention u(x) = sum_k c_k exp(i k x),
/// FFT-ordered to match GridSpec::wavenumber.
struct Spectrum {
    GridSpec grid;
    std::vector<std::complex<double>> coeff;
};

double mean(const Field& f);
double linf_norm(const Field& f);
bool all_finite(const Field& f);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double c, const Field& a);
Field& operator+=(Field& a, const Field& b);

} // namespace longwave
