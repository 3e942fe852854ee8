#include <cmath>

#include "doctest.h"
#include "longwave/bidirectional.hpp"
#include "longwave/energy.hpp"
#include "longwave/errors.hpp"
#include "longwave/spectral.hpp"
#include "test_helpers.hpp"

using namespace longwave;
using lwtest::kPi;

namespace {

ErrorState zero_state(const GridSpec& g, double eps, double delta, double s) {
    ErrorState st;
    st.r = Field(g);
    st.r_t = Field(g);
    st.rho_t = Field(g);
    st.w = lwtest::sech2(g, 1.0, 1.0);
    st.epsilon = eps;
    st.delta = delta;
    st.s = s;
    return st;
}

} // namespace

TEST_CASE("zero error state has zero energy") {
    const GridSpec g = make_grid(64 * kPi, 256);
    const ErrorState st = zero_state(g, 0.1, 0.1, 1.0);
    CHECK(energy(st) == 0.0);
    CHECK(energy_quadratic(st) == 0.0);
    CHECK(energy_nonlocal(st, power6_kernel()) == 0.0);
}

TEST_CASE("eps -> 0 reduces the energy to its quadratic part") {
    const GridSpec g = make_grid(64 * kPi, 256);
    ErrorState st = zero_state(g, 0.0, 0.3, 1.0);
    st.r = lwtest::random_smooth_field(g, 3);
    st.r_t = lwtest::random_smooth_field(g, 4);
    st.rho_t = antiderivative(st.r_t);
    CHECK(energy(st) == doctest::Approx(energy_quadratic(st)).epsilon(1e-14));
}

TEST_CASE("plain quadratic energy of a normalized single mode") {
    const GridSpec g = make_grid(2 * kPi, 64);
    ErrorState st = zero_state(g, 0.1, 0.5, 1.0);
    Field r = make_field(g, [](double x) { return std::cos(x); });
    const double scale = 1.0 / sobolev_norm(r, 1.0);
    st.r = scale * r;
    CHECK(energy_quadratic(st) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("exponential kernel leaves the energy unchanged") {
    const GridSpec g = make_grid(64 * kPi, 256);
    ErrorState st = zero_state(g, 0.05, 0.2, 1.0);
    st.r = 0.01 * lwtest::random_smooth_field(g, 5);
    st.r_t = 0.01 * lwtest::random_smooth_field(g, 6);
    st.rho_t = antiderivative(st.r_t);
    CHECK(energy_nonlocal(st, exponential_kernel()) ==
          doctest::Approx(energy(st)).epsilon(1e-9));
}

TEST_CASE("negative energy raised outside the smallness regime") {
    const GridSpec g = make_grid(64 * kPi, 256);
    ErrorState st = zero_state(g, 1.0, 0.5, 1.0);
    st.r = -10.0 * st.w; // large negative-aligned error: cubic term dominates
    CHECK_THROWS_AS(energy(st), NegativeEnergyError);
}

TEST_CASE("coercivity of the nonlocal quadratic part per mode") {
    // (1+eta^2+eta^4 m(eta)) >= c2^{-1} (1+eta^2) with c2 from the
    // ellipticity estimate over the same modes
    const GridSpec g = make_grid(64 * kPi, 1024);
    const Kernel k6 = power6_kernel();
    for (double delta : {1.0, 0.4, 0.1}) {
        const auto rep = check_ellipticity(k6, delta * g.max_wavenumber() + 1.0);
        REQUIRE(rep.pass);
        const double m0 = correction_symbol_at_zero(k6);
        for (int m = 0; m < g.n; ++m) {
            const double eta = delta * g.wavenumber(m);
            const double msym = std::abs(eta) <= 1e-2 ? m0 : correction_symbol(k6, eta);
            const double lhs = 1.0 + eta * eta + std::pow(eta, 4) * msym;
            const double rhs = (1.0 + eta * eta) / rep.c2;
            CHECK(lhs >= rhs - 1e-12);
        }
    }
}

TEST_CASE("build_error_state and positivity along a real run") {
    const GridSpec g = make_grid(64 * kPi, 512);
    const Field w0 = lwtest::sech2(g, 1.0, 0.5);
    const double eps = 0.1, delta = 0.1, s = 1.0;

    // identical snapshots -> zero state
    const Field u1 = time_derivative(w0, ch_model(), eps, delta);
    const ErrorState zero = build_error_state(w0, u1, w0, ch_model(), eps, delta, s, 0.0);
    CHECK(sobolev_norm(zero.r, s) == 0.0);
    CHECK(sobolev_norm(zero.r_t, s) < 1e-14);
    CHECK(energy(zero) < 1e-12);

    SolveOptions options;
    options.snapshot_stride = 500;
    const Trajectory wt = solve_unidirectional(w0, ch_model(), eps, delta, 3.0, 1e-3, options);
    const BidiTrajectory ut =
        solve_bidirectional(w0, u1, BidiTarget::ib(), eps, delta, 3.0, 1e-3, options);
    REQUIRE(wt.status == SolveStatus::ok);
    REQUIRE(ut.status == SolveStatus::ok);
    for (size_t i = 1; i < wt.times.size(); ++i) {
        const ErrorState st = build_error_state(ut.u_states[i], ut.ut_states[i], wt.states[i],
                                                ch_model(), eps, delta, s, wt.times[i]);
        CHECK(std::abs(mean(st.r_t)) < 1e-9);
        const double e = energy(st);
        const double quad = quadratic_sum(st);
        CHECK(4.0 * e * e >= quad * (1 - 1e-12));            // positivity
        CHECK(sobolev_norm(st.r, s) <= 2.0 * e * (1 + 1e-12)); // error controlled by energy
        const double et = energy_quadratic(st);
        CHECK(et <= 2.0 * e);
        CHECK(e <= 2.0 * et);
    }
}
