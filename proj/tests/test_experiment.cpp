#include <cmath>

#include "doctest.h"
#include "longwave/errors.hpp"
#include "longwave/experiment.hpp"
#include "longwave/report.hpp"
#include "longwave/spectral.hpp"
#include "test_helpers.hpp"

using namespace longwave;
using lwtest::kPi;

namespace {

SweepConfig small_sweep() {
    SweepConfig cfg;
    cfg.grid = make_grid(64 * kPi, 256);
    cfg.model = ch_model();
    cfg.target = BidiTarget::ib();
    cfg.s = 1.0;
    cfg.T = 5.0;
    cfg.t_cap = 2.0;
    cfg.dt = 2e-3;
    cfg.sample_dt = 0.5;
    cfg.t_star = {1.0, 2.0};
    cfg.path = {{0.2, 0.2}, {0.1, 0.1}};
    cfg.w0 = {1.0, 0.5};
    return cfg;
}

} // namespace

TEST_CASE("pulse helper") {
    const GridSpec g = make_grid(64 * kPi, 256);
    const Field f = sech_squared_pulse(g, {2.0, 0.5});
    CHECK(linf_norm(f) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(f.samples[0] < 1e-20); // decayed at the boundary
}

TEST_CASE("sweep validation rejects bad paths and kernels") {
    SweepConfig cfg = small_sweep();
    cfg.path = {{0.3, 0.2}};
    CHECK_THROWS_AS(validate_sweep(cfg), ConfigError);

    cfg = small_sweep();
    cfg.path.clear();
    CHECK_THROWS_AS(validate_sweep(cfg), ConfigError);

    cfg = small_sweep();
    cfg.model = kdv_model();
    cfg.path = {{0.2, 0.2}}; // delta^2/eps = 0.2, outside band [1, 1]
    CHECK_THROWS_AS(validate_sweep(cfg), ConfigError);

    cfg.path = {{0.4, std::sqrt(0.4)}}; // in band but delta^2 > 1/3
    CHECK_THROWS_AS(validate_sweep(cfg), ConfigError);

    cfg = small_sweep();
    cfg.target = BidiTarget::nonlocal(gaussian_kernel()); // fails ellipticity
    CHECK_THROWS_AS(validate_sweep(cfg), ConfigError);
}

TEST_CASE("identical initial data gives zero error at t = 0") {
    SweepConfig cfg = small_sweep();
    cfg.path = {{0.1, 0.1}, {0.05, 0.05}};
    const auto records = run_approximation(cfg);
    REQUIRE(records.size() == 2);
    for (const auto& rec : records) {
        REQUIRE(rec.status == "ok");
        CHECK(rec.times.front() == 0.0);
        CHECK(rec.errors.front() <= 1e-10);
        CHECK(rec.energies.front().E <= 1e-10);
    }
}

TEST_CASE("exponential-kernel target reproduces the ib record") {
    SweepConfig cfg = small_sweep();
    cfg.path = {{0.1, 0.1}};
    const auto a = run_approximation(cfg);
    cfg.target = BidiTarget::nonlocal(exponential_kernel());
    const auto b = run_approximation(cfg);
    REQUIRE(a[0].status == "ok");
    REQUIRE(b[0].status == "ok");
    REQUIRE(a[0].times.size() == b[0].times.size());
    for (size_t i = 0; i < a[0].times.size(); ++i)
        CHECK(std::abs(a[0].errors[i] - b[0].errors[i]) < 1e-10);
}

TEST_CASE("monotone error envelope across the path") {
    SweepConfig cfg = small_sweep();
    cfg.path = {{0.2, 0.2}, {0.1, 0.1}, {0.05, 0.05}};
    const auto records = run_approximation(cfg);
    double prev_max = 1e300;
    for (const auto& rec : records) {
        REQUIRE(rec.status == "ok");
        double peak = 0.0;
        for (double e : rec.errors) peak = std::max(peak, e);
        CHECK(peak <= prev_max * (1 + 1e-9));
        prev_max = peak;
    }
}

TEST_CASE("fit_error_law on synthetic exact power laws") {
    auto synth = [](double C, double p_eps, double p_t) {
        std::vector<RunRecord> records;
        for (double eps : {0.2, 0.1, 0.05}) {
            RunRecord rec;
            rec.epsilon = eps;
            rec.delta = eps;
            for (double t : {1.0, 2.0, 5.0}) {
                rec.times.push_back(t);
                rec.errors.push_back(C * std::pow(eps, p_eps) * std::pow(t, p_t));
                rec.energies.emplace_back();
            }
            records.push_back(rec);
        }
        return records;
    };
    const auto fit = fit_error_law(synth(3.0, 2.0, 1.0), ErrorLaw::eps2, {1.0, 2.0, 5.0});
    for (const auto& sf : fit.slope_in_eps) {
        CHECK(sf.slope == doctest::Approx(2.0));
        CHECK(sf.r_squared == doctest::Approx(1.0));
    }
    for (const auto& sf : fit.slope_in_t) CHECK(sf.slope == doctest::Approx(1.0));
    CHECK(fit.C_bound == doctest::Approx(3.0));
    CHECK(fit.C_lsq == doctest::Approx(3.0));
    CHECK(fit.max_violation <= 1e-12);

    // sharper than the bound: slope 3 reported as-is
    const auto sharp = fit_error_law(synth(1.0, 3.0, 1.0), ErrorLaw::eps2, {1.0});
    CHECK(sharp.slope_in_eps[0].slope == doctest::Approx(3.0));

    std::vector<RunRecord> flat = synth(1e-15, 2.0, 1.0);
    CHECK_THROWS_AS(fit_error_law(flat, ErrorLaw::eps2, {1.0}), DegenerateFitError);
}

TEST_CASE("kdv normalization") {
    const GridSpec g = make_grid(64 * kPi, 256);
    const Field w0 = lwtest::sech2(g, 1.0, 0.5);
    const double eps = 0.1, delta = std::sqrt(0.1);
    const auto [q0, ebar] = kdv_normalization(w0, eps, delta);
    CHECK(ebar == doctest::Approx(0.3));
    CHECK(l2_norm(q0) ==
          doctest::Approx((2.0 / 9.0) * (eps / (delta * delta)) * l2_norm(w0)).epsilon(1e-14));

    // band edge delta^2 = 1/3 maps to ebar = 1
    const auto [q1, e1] = kdv_normalization(w0, 1.0 / 3.0, std::sqrt(1.0 / 3.0));
    CHECK(e1 == doctest::Approx(1.0));

    CHECK_THROWS_AS(kdv_normalization(w0, 0.2, 0.1), InvalidArgument);
}

TEST_CASE("kdv normalization round trip (two solver paths)") {
    const GridSpec g = make_grid(64 * kPi, 256);
    const Field w0 = lwtest::sech2(g, 1.0, 0.5);
    const double eps = 0.1, delta = std::sqrt(0.1);
    const Trajectory direct = solve_unidirectional(w0, kdv_model(), eps, delta, 2.0, 1e-3);
    REQUIRE(direct.status == SolveStatus::ok);

    const auto [q0, ebar] = kdv_normalization(w0, eps, delta);
    const Trajectory scaled =
        solve_unidirectional(q0, scaled_kdv_model(), ebar, std::sqrt(ebar), 2.0, 1e-3);
    REQUIRE(scaled.status == SolveStatus::ok);
    const Field back = (9.0 / 2.0) * (delta * delta / eps) * scaled.states.back();
    CHECK(lwtest::max_abs_diff(back, direct.states.back()) < 1e-9);
}

TEST_CASE("byte-identical records for identical configs") {
    SweepConfig cfg = small_sweep();
    cfg.path = {{0.1, 0.1}};
    cfg.t_cap = 1.0;
    const auto a = run_approximation(cfg);
    const auto b = run_approximation(cfg);
    CHECK(records_csv(a) == records_csv(b));
}

TEST_CASE("model gap between CH and BBM scales like eps * delta^2") {
    const GridSpec g = make_grid(64 * kPi, 256);
    const Field w0 = lwtest::sech2(g, 1.0, 0.5);
    std::vector<double> le, ln;
    for (double eps : {0.4, 0.2, 0.1}) {
        const Field a =
            solve_unidirectional(w0, ch_model(), eps, eps, 1.0, 1e-3).states.back();
        const Field b =
            solve_unidirectional(w0, bbm_model(), eps, eps, 1.0, 1e-3).states.back();
        le.push_back(std::log(eps));
        ln.push_back(std::log(sobolev_norm(a - b, 1.0)));
    }
    const double slope =
        (ln.back() - ln.front()) / (le.back() - le.front());
    CHECK(slope > 2.5); // eps delta^2 = eps^3 on this path
    CHECK(slope < 3.5);
}
