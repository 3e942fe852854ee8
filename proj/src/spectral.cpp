#include "longwave/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "longwave/errors.hpp"

namespace longwave {

namespace {

// Plans are cached per size and reused for the process lifetime. Planning is
// serialized (the FFTW planner is not thread-safe); execution through
// fftw_execute_dft on caller-owned buffers is.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair plans_for(int n) {
    static std::mutex mtx;
    static std::map<int, PlanPair> cache;
    std::scoped_lock lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<std::complex<double>> a(n), b(n);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(n, pa, pb, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(n, pa, pb, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache[n] = p;
    return p;
}

void run_plan(fftw_plan plan, std::vector<std::complex<double>>& in,
              std::vector<std::complex<double>>& out) {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

} // namespace

Spectrum forward(const Field& field) {
    const int n = field.grid.n;
    if (static_cast<int>(field.samples.size()) != n)
        throw InvalidArgument("field sample count does not match grid");
    std::vector<std::complex<double>> in(n), out(n);
    for (int j = 0; j < n; ++j) in[j] = field.samples[j];
    run_plan(plans_for(n).fwd, in, out);
    const double scale = 1.0 / n;
    for (auto& c : out) c *= scale;
    return Spectrum{field.grid, std::move(out)};
}

Field inverse(const Spectrum& spec) {
    const int n = spec.grid.n;
    if (static_cast<int>(spec.coeff.size()) != n)
        throw InvalidArgument("spectrum size does not match grid");
    std::vector<std::complex<double>> in(spec.coeff), out(n);
    run_plan(plans_for(n).bwd, in, out);
    Field f(spec.grid);
    for (int j = 0; j < n; ++j) f.samples[j] = out[j].real();
    return f;
}

bool is_hermitian(const Spectrum& spec, double rtol) {
    const int n = spec.grid.n;
    double scale = 0.0;
    for (const auto& c : spec.coeff) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return true;
    for (int m = 1; m < n; ++m) {
        const auto d = spec.coeff[m] - std::conj(spec.coeff[n - m]);
        if (std::abs(d) > rtol * scale) return false;
    }
    return std::abs(spec.coeff[0].imag()) <= rtol * scale;
}

Field derivative(const Field& field, int order) {
    if (order < 0 || order > 8)
        throw InvalidArgument("derivative order must be in [0, 8]");
    if (order == 0) return field;
    Spectrum spec = forward(field);
    const int n = field.grid.n;
    for (int m = 0; m < n; ++m) {
        double kp = 1.0; // (i k)^order split into i^order (exact) and k^order
        for (int j = 0; j < order; ++j) kp *= field.grid.wavenumber(m);
        switch (order % 4) {
            case 0: spec.coeff[m] *= kp; break;
            case 1: spec.coeff[m] *= std::complex<double>(0.0, kp); break;
            case 2: spec.coeff[m] *= -kp; break;
            default: spec.coeff[m] *= std::complex<double>(0.0, -kp); break;
        }
    }
    if (order % 2 == 1) spec.coeff[n / 2] = 0.0; // Nyquist has no signed direction
    return inverse(spec);
}

std::vector<double> symbol_table(const GridSpec& grid, const std::function<double(double)>& sigma) {
    std::vector<double> table(grid.n);
    for (int m = 0; m < grid.n; ++m) {
        table[m] = sigma(grid.wavenumber(m));
        if (!std::isfinite(table[m]))
            throw InvalidArgument("symbol is not finite at wavenumber k=" +
                                  std::to_string(grid.wavenumber(m)));
    }
    return table;
}

Field apply_symbol(const Field& field, std::span<const double> table) {
    if (static_cast<int>(table.size()) != field.grid.n)
        throw InvalidArgument("symbol table size does not match grid");
    Spectrum spec = forward(field);
    for (int m = 0; m < field.grid.n; ++m) spec.coeff[m] *= table[m];
    return inverse(spec);
}

Field apply_symbol(const Field& field, const std::function<double(double)>& sigma) {
    return apply_symbol(field, symbol_table(field.grid, sigma));
}

double sobolev_norm(const Field& field, double s) {
    if (s < -4.0 || s > 12.0) throw InvalidArgument("Sobolev order s must be in [-4, 12]");
    const Spectrum spec = forward(field);
    double sum = 0.0;
    for (int m = 0; m < field.grid.n; ++m) {
        const double k = field.grid.wavenumber(m);
        sum += std::pow(1.0 + k * k, s) * std::norm(spec.coeff[m]);
    }
    return std::sqrt(field.grid.length * sum);
}

double sobolev_inner(const Field& u, const Field& v, double s) {
    if (!(u.grid == v.grid)) throw InvalidArgument("inner product on different grids");
    if (s < -4.0 || s > 12.0) throw InvalidArgument("Sobolev order s must be in [-4, 12]");
    const Spectrum cu = forward(u), cv = forward(v);
    double sum = 0.0;
    for (int m = 0; m < u.grid.n; ++m) {
        const double k = u.grid.wavenumber(m);
        sum += std::pow(1.0 + k * k, s) * (cu.coeff[m] * std::conj(cv.coeff[m])).real();
    }
    return u.grid.length * sum;
}

double l2_norm(const Field& field) { return sobolev_norm(field, 0.0); }

double xnorm(const Field& field, double s, double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw InvalidArgument("delta must be in (0, 1]");
    const double a = sobolev_norm(field, s);
    const double b = sobolev_norm(derivative(field, 1), s);
    return std::sqrt(a * a + delta * delta * b * b);
}

Spectrum dealias(Spectrum spec) {
    const double cut = (2.0 / 3.0) * spec.grid.max_wavenumber();
    for (int m = 0; m < spec.grid.n; ++m)
        if (std::abs(spec.grid.wavenumber(m)) > cut) spec.coeff[m] = 0.0;
    return spec;
}

Field dealias(const Field& field) { return inverse(dealias(forward(field))); }

Field multiply(const Field& a, const Field& b) {
    if (!(a.grid == b.grid)) throw InvalidArgument("product of fields on different grids");
    Field p(a.grid);
    for (int j = 0; j < a.grid.n; ++j) p.samples[j] = a.samples[j] * b.samples[j];
    return dealias(p);
}

Field antiderivative(const Field& field, double tol_mean) {
    if (tol_mean < 0.0) tol_mean = 1e-8 * l2_norm(field) + 1e-14;
    const double m0 = mean(field);
    if (std::abs(m0) > tol_mean)
        throw NonZeroMeanError("antiderivative of a field with mean " + std::to_string(m0));
    Spectrum spec = forward(field);
    const int n = field.grid.n;
    spec.coeff[0] = 0.0;
    for (int m = 1; m < n; ++m) {
        if (m == n / 2) {
            spec.coeff[m] = 0.0;
            continue;
        }
        const std::complex<double> ik(0.0, field.grid.wavenumber(m));
        spec.coeff[m] /= ik;
    }
    return inverse(spec);
}

} // namespace longwave
