#include "longwave/config.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "longwave/errors.hpp"

namespace longwave {

using nlohmann::json;

namespace {

void apply_override(json& j, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + spec + "' is not key=value");
    const std::string key = spec.substr(0, eq);
    const std::string value = spec.substr(eq + 1);
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value; // plain string
    }
    json* node = &j;
    size_t pos = 0;
    while (true) {
        const auto dot = key.find('.', pos);
        const std::string part = key.substr(pos, dot - pos);
        if (part.empty()) throw ConfigError("override key '" + key + "' has an empty segment");
        if (dot == std::string::npos) {
            (*node)[part] = parsed;
            return;
        }
        node = &(*node)[part];
        pos = dot + 1;
    }
}

AppConfig from_json(json j) {
    AppConfig cfg;
    try {
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            cfg.grid = make_grid(g.value("L", cfg.grid.length), g.value("N", cfg.grid.n));
        }
        cfg.model_name = j.value("model", cfg.model_name);
        cfg.target_name = j.value("target", cfg.target_name);
        cfg.kernel_name = j.value("kernel", cfg.kernel_name);
        cfg.s = j.value("s", cfg.s);
        cfg.T = j.value("T", cfg.T);
        cfg.t_cap = j.value("t_cap", cfg.t_cap);
        cfg.dt_given = j.contains("dt");
        cfg.dt = j.value("dt", cfg.dt);
        cfg.sample_dt = j.value("sample_dt", cfg.sample_dt);
        if (j.contains("t_star")) cfg.t_star = j.at("t_star").get<std::vector<double>>();
        if (j.contains("path")) {
            cfg.path.clear();
            for (const auto& p : j.at("path")) {
                if (!p.is_array() || p.size() != 2)
                    throw ConfigError("path entries must be [epsilon, delta] pairs");
                cfg.path.emplace_back(p[0].get<double>(), p[1].get<double>());
            }
        }
        if (j.contains("w0")) {
            cfg.w0.amplitude = j.at("w0").value("a", cfg.w0.amplitude);
            cfg.w0.width = j.at("w0").value("b", cfg.w0.width);
        }
        cfg.c1 = j.value("c1", cfg.c1);
        cfg.c2 = j.value("c2", cfg.c2);
        cfg.epsilon = j.value("epsilon", cfg.epsilon);
        cfg.delta = j.value("delta", cfg.delta);
        cfg.t_end = j.value("t_end", cfg.t_end);
        cfg.blow_up_threshold = j.value("blow_up_threshold", cfg.blow_up_threshold);
        cfg.workers = j.value("workers", cfg.workers);
        cfg.output_dir = j.value("output_dir", cfg.output_dir);

        cfg.kernels = builtin_kernels();
        if (j.contains("custom_kernels")) {
            for (const auto& ck : j.at("custom_kernels")) {
                std::vector<std::pair<double, double>> table;
                for (const auto& row : ck.at("table")) {
                    if (!row.is_array() || row.size() != 2)
                        throw ConfigError("kernel table rows must be [eta, beta_hat] pairs");
                    table.emplace_back(row[0].get<double>(), row[1].get<double>());
                }
                cfg.kernels.push_back(
                    interpolated_kernel(ck.at("name").get<std::string>(),
                                        ck.value("r", 2.0), std::move(table)));
            }
        }
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("config schema error: ") + ex.what());
    }
    if (!cfg.dt_given) {
        // default step: 1e-3, shrunk when the advective scale
        // eps * max|w0| * k_max demands it
        double eps_max = cfg.epsilon;
        for (const auto& [e, d] : cfg.path) eps_max = std::max(eps_max, e);
        const double scale = eps_max * cfg.w0.amplitude * cfg.grid.max_wavenumber();
        if (scale > 0.0) cfg.dt = std::min(1e-3, 0.5 / scale);
    }
    return cfg;
}

} // namespace

AppConfig parse_config(const std::string& json_text, const std::vector<std::string>& overrides) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& ex) {
        throw ConfigError(std::string("config parse error: ") + ex.what());
    }
    for (const auto& ov : overrides) apply_override(j, ov);
    return from_json(std::move(j));
}

AppConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not found: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text, overrides);
}

const Kernel& kernel_by_name(const AppConfig& config, const std::string& name) {
    for (const auto& k : config.kernels)
        if (k.name == name) return k;
    std::string names;
    for (const auto& k : config.kernels) names += (names.empty() ? "" : ", ") + k.name;
    throw ConfigError("unknown kernel '" + name + "' (registered: " + names + ")");
}

SweepConfig to_sweep_config(const AppConfig& config) {
    SweepConfig sweep;
    sweep.grid = config.grid;
    sweep.model = model_by_name(config.model_name);
    if (config.target_name == "ib") {
        sweep.target = BidiTarget::ib();
    } else if (config.target_name == "nonlocal") {
        if (config.kernel_name.empty())
            throw ConfigError("target 'nonlocal' requires a kernel name");
        sweep.target = BidiTarget::nonlocal(kernel_by_name(config, config.kernel_name));
    } else {
        throw ConfigError("unknown target '" + config.target_name + "' (expected ib, nonlocal)");
    }
    sweep.s = config.s;
    sweep.T = config.T;
    sweep.t_cap = config.t_cap;
    sweep.dt = config.dt;
    sweep.sample_dt = config.sample_dt;
    sweep.t_star = config.t_star;
    sweep.path = config.path;
    sweep.w0 = config.w0;
    sweep.c1 = config.c1;
    sweep.c2 = config.c2;
    sweep.blow_up_threshold = config.blow_up_threshold;
    sweep.workers = config.workers;
    sweep.output_dir = config.output_dir;
    return sweep;
}

} // namespace longwave
