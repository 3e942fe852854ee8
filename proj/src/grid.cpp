#include "longwave/grid.hpp"

#include <cmath>
#include <numbers>

#include "longwave/errors.hpp"

namespace longwave {

double GridSpec::max_wavenumber() const {
    return std::numbers::pi * n / length;
}

double GridSpec::wavenumber(int m) const {
    const int j = (m <= n / 2) ? m : m - n;
    return 2.0 * std::numbers::pi * j / length;
}

std::vector<double> GridSpec::nodes() const {
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) x[j] = node(j);
    return x;
}

std::vector<double> GridSpec::wavenumbers() const {
    std::vector<double> k(n);
    for (int m = 0; m < n; ++m) k[m] = wavenumber(m);
    return k;
}

GridSpec make_grid(double length, int n) {
    if (!(length > 0.0)) throw InvalidArgument("grid length must be positive");
    if (n % 2 != 0) throw InvalidArgument("N must be even");
    if (n < 8) throw InvalidArgument("N must be at least 8");
    return GridSpec{length, n};
}

Field::Field(GridSpec g, std::vector<double> values)
    : grid(g), samples(std::move(values)) {
    if (static_cast<int>(samples.size()) != grid.n)
        throw InvalidArgument("field sample count does not match grid");
}

Field::Field(GridSpec g) : grid(g), samples(g.n, 0.0) {}

Field make_field(const GridSpec& grid, const std::function<double(double)>& f) {
    Field out(grid);
    for (int j = 0; j < grid.n; ++j) out.samples[j] = f(grid.node(j));
    return out;
}

double mean(const Field& f) {
    double s = 0.0;
    for (double v : f.samples) s += v;
    return s / f.grid.n;
}

double linf_norm(const Field& f) {
    double m = 0.0;
    for (double v : f.samples) m = std::max(m, std::abs(v));
    return m;
}

bool all_finite(const Field& f) {
    for (double v : f.samples)
        if (!std::isfinite(v)) return false;
    return true;
}

namespace {
void require_same_grid(const Field& a, const Field& b) {
    if (!(a.grid == b.grid)) throw InvalidArgument("fields live on different grids");
}
} // namespace

Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out(a.grid);
    for (int j = 0; j < a.grid.n; ++j) out.samples[j] = a.samples[j] + b.samples[j];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b);
    Field out(a.grid);
    for (int j = 0; j < a.grid.n; ++j) out.samples[j] = a.samples[j] - b.samples[j];
    return out;
}

Field operator*(double c, const Field& a) {
    Field out(a.grid);
    for (int j = 0; j < a.grid.n; ++j) out.samples[j] = c * a.samples[j];
    return out;
}

Field& operator+=(Field& a, const Field& b) {
    require_same_grid(a, b);
    for (int j = 0; j < a.grid.n; ++j) a.samples[j] += b.samples[j];
    return a;
}

} // namespace longwave
