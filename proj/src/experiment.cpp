#include "longwave/experiment.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "longwave/energy.hpp"
#include "longwave/errors.hpp"
#include "longwave/spectral.hpp"

namespace longwave {

Field sech_squared_pulse(const GridSpec& grid, const PulseSpec& pulse) {
    const double center = grid.length / 2.0;
    return make_field(grid, [&](double x) {
        const double c = std::cosh(pulse.width * (x - center));
        return pulse.amplitude / (c * c);
    });
}

void validate_sweep(const SweepConfig& config) {
    if (config.path.empty()) throw ConfigError("parameter path is empty");
    if (!(config.dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(config.sample_dt > 0.0)) throw ConfigError("sample_dt must be positive");
    const int stride = static_cast<int>(std::llround(config.sample_dt / config.dt));
    if (stride < 1 || std::abs(stride * config.dt - config.sample_dt) > 1e-9)
        throw ConfigError("sample_dt must be a positive multiple of dt");
    if (!(config.c1 > 0.0 && config.c1 <= config.c2))
        throw ConfigError("KdV band requires 0 < c1 <= c2");
    const bool is_kdv = config.model.name == "kdv";
    for (const auto& [eps, delta] : config.path) {
        if (!(0.0 < eps && eps <= delta && delta <= 1.0))
            throw ConfigError("path point violates 0 < eps <= delta <= 1");
        if (is_kdv) {
            const double ratio = delta * delta / eps;
            if (!(config.c1 - 1e-12 <= ratio && ratio <= config.c2 + 1e-12))
                throw ConfigError("KdV path point outside band c1 <= delta^2/eps <= c2");
            if (delta * delta > 1.0 / 3.0 + 1e-12)
                throw ConfigError("KdV runs require delta^2 <= 1/3");
        }
    }
    if (config.target.kind == BidiTarget::Kind::nonlocal) {
        if (!config.target.kernel) throw ConfigError("nonlocal target needs a kernel");
        double eta_max = 0.0;
        for (const auto& [eps, delta] : config.path)
            eta_max = std::max(eta_max, delta * config.grid.max_wavenumber());
        const auto rep = check_ellipticity(*config.target.kernel, eta_max);
        if (!rep.pass)
            throw ConfigError("kernel '" + config.target.kernel->name +
                              "' fails ellipticity: " + rep.note);
    }
}

namespace {

RunRecord run_point(const SweepConfig& config, double eps, double delta) {
    RunRecord rec;
    rec.epsilon = eps;
    rec.delta = delta;
    try {
        const Field w0 = sech_squared_pulse(config.grid, config.w0);
        const double t_end = std::min(config.T / eps, config.t_cap);
        const int stride = std::max(1, static_cast<int>(std::llround(config.sample_dt / config.dt)));
        SolveOptions options;
        options.snapshot_stride = stride;
        options.blow_up_threshold = config.blow_up_threshold;

        const Trajectory wtraj =
            solve_unidirectional(w0, config.model, eps, delta, t_end, config.dt, options);
        if (wtraj.status != SolveStatus::ok) {
            rec.status = "blowup";
            return rec;
        }
        const Field u1 = time_derivative(w0, config.model, eps, delta);
        const BidiTrajectory utraj =
            solve_bidirectional(w0, u1, config.target, eps, delta, t_end, config.dt, options);
        if (utraj.status != SolveStatus::ok) {
            rec.status = "blowup";
            return rec;
        }
        if (wtraj.times.size() != utraj.times.size())
            throw Error("snapshot streams disagree");

        const double norm_w0 = sobolev_norm(w0, config.s);
        for (size_t i = 0; i < wtraj.times.size(); ++i) {
            const double t = wtraj.times[i];
            const Field& w = wtraj.states[i];
            if (sobolev_norm(w, config.s) > 2.0 * norm_w0) {
                rec.status = "norm-growth";
                return rec;
            }
            const ErrorState state = build_error_state(utraj.u_states[i], utraj.ut_states[i], w,
                                                       config.model, eps, delta, config.s, t);
            EnergySample es;
            es.t = t;
            es.norm_r = sobolev_norm(state.r, config.s);
            es.quad_sum = quadratic_sum(state);
            es.E_quadratic = energy_quadratic(state);
            try {
                es.E = energy(state);
            } catch (const NegativeEnergyError&) {
                rec.status = "energy-regime-exit";
                return rec;
            }
            es.positivity_ok = 4.0 * es.E * es.E >= es.quad_sum * (1.0 - 1e-12);
            rec.times.push_back(t);
            rec.errors.push_back(es.norm_r);
            rec.energies.push_back(es);
        }
    } catch (const std::exception& ex) {
        rec.status = std::string("failed: ") + ex.what();
    }
    return rec;
}

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

std::vector<RunRecord> run_approximation(const SweepConfig& config) {
    validate_sweep(config);
    const size_t n = config.path.size();
    std::vector<RunRecord> records(n);
    unsigned workers = config.workers > 0 ? static_cast<unsigned>(config.workers)
                                          : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, n));
    std::atomic<size_t> next{0};
    auto work = [&] {
        for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
            records[i] = run_point(config, config.path[i].first, config.path[i].second);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return records;
}

std::string law_name(ErrorLaw law) {
    return law == ErrorLaw::eps2_plus_delta4 ? "(eps^2+delta^4)*t" : "eps^2*t";
}

double law_value(ErrorLaw law, double eps, double delta) {
    if (law == ErrorLaw::eps2_plus_delta4) return eps * eps + std::pow(delta, 4);
    return eps * eps;
}

namespace {

bool has_time(const RunRecord& rec, double t) {
    for (double rt : rec.times)
        if (std::abs(rt - t) < 1e-9) return true;
    return false;
}

double error_at(const RunRecord& rec, double t) {
    for (size_t i = 0; i < rec.times.size(); ++i)
        if (std::abs(rec.times[i] - t) < 1e-9) return rec.errors[i];
    throw InvalidArgument("record has no sample at t = " + std::to_string(t));
}

} // namespace

FitResult fit_error_law(const std::vector<RunRecord>& records, ErrorLaw law,
                        const std::vector<double>& t_star) {
    std::vector<const RunRecord*> ok;
    for (const auto& rec : records)
        if (rec.status == "ok") ok.push_back(&rec);
    if (ok.size() < 2)
        throw InvalidArgument("fit needs at least two successful path points");

    // comparison times are capped by each run's horizon: keep those every
    // successful record sampled
    std::vector<double> times;
    for (double t : t_star) {
        bool everywhere = true;
        for (const auto* rec : ok) everywhere = everywhere && has_time(*rec, t);
        if (everywhere) times.push_back(t);
    }
    if (times.empty()) throw InvalidArgument("no common comparison time across records");

    double max_err = 0.0;
    for (const auto* rec : ok)
        for (double t : times) max_err = std::max(max_err, error_at(*rec, t));
    if (max_err < 1e-12) throw DegenerateFitError("errors at noise floor; no fit");

    FitResult fit;
    fit.law = law;
    bool distinct_eps = false;
    for (const auto* rec : ok) distinct_eps = distinct_eps || rec->epsilon != ok[0]->epsilon;
    if (distinct_eps) {
        for (double t : times) {
            std::vector<double> le, ln;
            for (const auto* rec : ok) {
                le.push_back(std::log(rec->epsilon));
                ln.push_back(std::log(error_at(*rec, t)));
            }
            const LineFit lf = fit_line(le, ln);
            fit.slope_in_eps.push_back({t, lf.slope, lf.r_squared});
        }
    }
    if (times.size() >= 2) {
        for (const auto* rec : ok) {
            std::vector<double> lt, ln;
            for (double t : times) {
                lt.push_back(std::log(t));
                ln.push_back(std::log(error_at(*rec, t)));
            }
            const LineFit lf = fit_line(lt, ln);
            fit.slope_in_t.push_back({rec->epsilon, lf.slope, lf.r_squared});
        }
    }

    double prev_peak = std::numeric_limits<double>::infinity();
    for (const auto& rec : records) {
        if (rec.status != "ok") continue;
        double peak = 0.0;
        for (double e : rec.errors) peak = std::max(peak, e);
        if (peak > prev_peak * (1.0 + 1e-9)) fit.envelope_monotone = false;
        prev_peak = peak;
    }

    double sum_log = 0.0;
    size_t count = 0;
    for (const auto* rec : ok) {
        const double lv = law_value(law, rec->epsilon, rec->delta);
        for (size_t i = 0; i < rec->times.size(); ++i) {
            if (rec->times[i] <= 0.0 || rec->errors[i] < 1e-14) continue;
            const double ratio = rec->errors[i] / (lv * rec->times[i]);
            fit.C_bound = std::max(fit.C_bound, ratio);
            sum_log += std::log(ratio);
            ++count;
        }
    }
    fit.C_lsq = count ? std::exp(sum_log / count) : 0.0;
    double viol = 0.0;
    for (const auto* rec : ok) {
        const double lv = law_value(law, rec->epsilon, rec->delta);
        for (size_t i = 0; i < rec->times.size(); ++i)
            if (rec->times[i] > 0.0)
                viol = std::max(viol, rec->errors[i] - fit.C_bound * lv * rec->times[i]);
    }
    fit.max_violation = viol;
    return fit;
}

std::pair<Field, double> kdv_normalization(const Field& w0, double eps, double delta, double c1,
                                           double c2) {
    if (!(eps > 0.0 && delta > 0.0)) throw InvalidArgument("eps, delta must be positive");
    const double d2 = delta * delta;
    const double ratio = d2 / eps;
    if (!(c1 - 1e-12 <= ratio && ratio <= c2 + 1e-12))
        throw InvalidArgument("band violation: delta^2/eps outside [c1, c2]");
    if (d2 > 1.0 / 3.0 + 1e-12)
        throw InvalidArgument("band violation: delta^2 must be <= 1/3");
    const double eps_bar = 3.0 * d2;
    return {(2.0 / 9.0) * (eps / d2) * w0, eps_bar};
}

} // namespace longwave
