#include "longwave/report.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "longwave/errors.hpp"
#include "longwave/io.hpp"

namespace longwave {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string svg_loglog(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<PlotSeries>& series) {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool any = false;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!(x > 0.0) || !(y > 0.0)) continue;
            if (!any) {
                xmin = xmax = x;
                ymin = ymax = y;
                any = true;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
                      "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " +
                      fmt(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
           title + "</text>\n";
    if (!any) {
        out += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"" + fmt(kHeight / 2) +
               "\" text-anchor=\"middle\" font-size=\"12\">no positive data</text>\n</svg>\n";
        return out;
    }
    // pad degenerate ranges so single points render mid-plot
    auto pad = [](double& lo, double& hi) {
        if (hi / lo < 10.0) {
            lo /= 3.16227766016838;
            hi *= 3.16227766016838;
        }
    };
    pad(xmin, xmax);
    pad(ymin, ymax);
    const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
    const double ly0 = std::log10(ymin), ly1 = std::log10(ymax);
    auto X = [&](double x) {
        return kLeft + (std::log10(x) - lx0) / (lx1 - lx0) * (kWidth - kLeft - kRight);
    };
    auto Y = [&](double y) {
        return kHeight - kBottom - (std::log10(y) - ly0) / (ly1 - ly0) * (kHeight - kTop - kBottom);
    };

    out += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" +
           fmt(kWidth - kLeft - kRight) + "\" height=\"" + fmt(kHeight - kTop - kBottom) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d) {
        const double px = X(std::pow(10.0, d));
        out += "<line x1=\"" + fmt(px) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" + fmt(px) + "\" y2=\"" +
               fmt(kHeight - kBottom) + "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + fmt(px) + "\" y=\"" + fmt(kHeight - kBottom + 16) +
               "\" text-anchor=\"middle\" font-size=\"11\">1e" + std::to_string(d) + "</text>\n";
    }
    for (int d = static_cast<int>(std::ceil(ly0)); d <= static_cast<int>(std::floor(ly1)); ++d) {
        const double py = Y(std::pow(10.0, d));
        out += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(py) + "\" x2=\"" +
               fmt(kWidth - kRight) + "\" y2=\"" + fmt(py) + "\" stroke=\"#dddddd\"/>\n";
        out += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(py + 4) +
               "\" text-anchor=\"end\" font-size=\"11\">1e" + std::to_string(d) + "</text>\n";
    }
    out += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"" + fmt(kHeight - 12) +
           "\" text-anchor=\"middle\" font-size=\"12\">" + x_label + "</text>\n";
    out += "<text x=\"16\" y=\"" + fmt(kHeight / 2) +
           "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
           fmt(kHeight / 2) + ")\">" + y_label + "</text>\n";

    int ci = 0;
    double legend_y = kTop + 14;
    for (const auto& s : series) {
        const char* color = kPalette[ci % 6];
        std::string pts;
        for (const auto& [x, y] : s.points) {
            if (!(x > 0.0) || !(y > 0.0)) continue;
            pts += fmt(X(x)) + "," + fmt(Y(y)) + " ";
            out += "<circle cx=\"" + fmt(X(x)) + "\" cy=\"" + fmt(Y(y)) + "\" r=\"3\" fill=\"" +
                   color + "\"/>\n";
        }
        if (!pts.empty()) {
            out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color + "\"" +
                   (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        }
        out += "<text x=\"" + fmt(kLeft + 10) + "\" y=\"" + fmt(legend_y) +
               "\" font-size=\"11\" fill=\"" + color + "\">" + s.label + "</text>\n";
        legend_y += 14;
        ++ci;
    }
    out += "</svg>\n";
    return out;
}

std::string records_csv(const std::vector<RunRecord>& records) {
    std::string out = "index,epsilon,delta,t,error_Hs,E_s,E_tilde,quad_sum,status\n";
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.times.empty()) {
            out += std::to_string(i) + "," + format_double(rec.epsilon) + "," +
                   format_double(rec.delta) + ",,,,,," + rec.status + "\n";
            continue;
        }
        for (size_t j = 0; j < rec.times.size(); ++j) {
            const auto& es = rec.energies[j];
            out += std::to_string(i) + "," + format_double(rec.epsilon) + "," +
                   format_double(rec.delta) + "," + format_double(rec.times[j]) + "," +
                   format_double(rec.errors[j]) + "," + format_double(es.E) + "," +
                   format_double(es.E_quadratic) + "," + format_double(es.quad_sum) + "," +
                   rec.status + "\n";
        }
    }
    return out;
}

std::vector<RunRecord> parse_records_csv(const std::string& text) {
    std::vector<RunRecord> records;
    size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (header) {
            if (line != "index,epsilon,delta,t,error_Hs,E_s,E_tilde,quad_sum,status")
                throw Error("unexpected records.csv header: " + line);
            header = false;
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> cells;
        size_t c = 0;
        while (true) {
            const size_t comma = line.find(',', c);
            cells.push_back(line.substr(c, comma - c));
            if (comma == std::string::npos) break;
            c = comma + 1;
        }
        if (cells.size() != 9) throw Error("bad records.csv row: " + line);
        const size_t index = std::stoul(cells[0]);
        while (records.size() <= index) records.emplace_back();
        RunRecord& rec = records[index];
        rec.epsilon = std::stod(cells[1]);
        rec.delta = std::stod(cells[2]);
        rec.status = cells[8];
        if (cells[3].empty()) continue; // failed point, no samples
        rec.times.push_back(std::stod(cells[3]));
        rec.errors.push_back(std::stod(cells[4]));
        EnergySample es;
        es.t = rec.times.back();
        es.norm_r = rec.errors.back();
        es.E = std::stod(cells[5]);
        es.E_quadratic = std::stod(cells[6]);
        es.quad_sum = std::stod(cells[7]);
        es.positivity_ok = 4.0 * es.E * es.E >= es.quad_sum * (1.0 - 1e-12);
        rec.energies.push_back(es);
    }
    return records;
}

std::string fits_json(const std::optional<FitResult>& fit, const std::string& note) {
    json j;
    if (!note.empty()) j["note"] = note;
    if (fit) {
        j["law"] = law_name(fit->law);
        j["C_bound"] = fit->C_bound;
        j["C_lsq"] = fit->C_lsq;
        j["max_violation"] = fit->max_violation;
        j["envelope_monotone"] = fit->envelope_monotone;
        json se = json::array();
        for (const auto& sf : fit->slope_in_eps)
            se.push_back({{"t", sf.at}, {"slope", sf.slope}, {"r_squared", sf.r_squared}});
        j["slope_in_eps"] = se;
        json st = json::array();
        for (const auto& sf : fit->slope_in_t)
            st.push_back({{"epsilon", sf.at}, {"slope", sf.slope}, {"r_squared", sf.r_squared}});
        j["slope_in_t"] = st;
    }
    return j.dump(2) + "\n";
}

std::string energy_csv(const RunRecord& record) {
    std::string out = "t,E_s,E_tilde,norm_r_Hs\n";
    for (size_t j = 0; j < record.times.size(); ++j) {
        const auto& es = record.energies[j];
        out += format_double(record.times[j]) + "," + format_double(es.E) + "," +
               format_double(es.E_quadratic) + "," + format_double(es.norm_r) + "\n";
    }
    return out;
}

std::string scan_csv(const ScanResult& scan) {
    std::string out = "epsilon,delta,t,s,norm_F\n";
    for (const auto& sample : scan.samples) {
        out += format_double(sample.epsilon) + "," + format_double(sample.delta) + "," +
               format_double(sample.t) + "," + format_double(sample.s) + "," +
               format_double(sample.norm_F) + "\n";
    }
    return out;
}

std::string scan_json(const ScanResult& scan, const std::vector<std::pair<double, double>>& path) {
    json j;
    json jp = json::array();
    for (const auto& [e, d] : path) jp.push_back({e, d});
    j["path"] = jp;
    j["degenerate"] = scan.degenerate;
    if (scan.degenerate) j["note"] = "degenerate";
    if (!scan.fits.empty()) {
        j["slope"] = scan.fits.front().slope;
        j["intercept"] = scan.fits.front().intercept;
        j["r_squared"] = scan.fits.front().r_squared;
    }
    json jf = json::array();
    for (const auto& f : scan.fits)
        jf.push_back({{"t", f.t},
                      {"slope", f.slope},
                      {"intercept", f.intercept},
                      {"r_squared", f.r_squared}});
    j["fits"] = jf;
    return j.dump(2) + "\n";
}

namespace {

double record_error_at(const RunRecord& rec, double t, bool& found) {
    for (size_t i = 0; i < rec.times.size(); ++i)
        if (std::abs(rec.times[i] - t) < 1e-9) {
            found = true;
            return rec.errors[i];
        }
    found = false;
    return 0.0;
}

} // namespace

void make_report(const SweepConfig& config, const std::vector<RunRecord>& records,
                 const std::optional<FitResult>& fit, ErrorLaw law, const fs::path& out_dir) {
    if (records.empty()) throw InvalidArgument("no records to report");
    fs::create_directories(out_dir / "plots");

    std::vector<std::pair<std::string, std::string>> written; // name -> content

    // echo the configuration that produced the records
    {
        json cj;
        cj["grid"] = {{"L", config.grid.length}, {"N", config.grid.n}};
        cj["model"] = config.model.name;
        cj["target"] = config.target.name();
        cj["s"] = config.s;
        cj["T"] = config.T;
        cj["t_cap"] = config.t_cap;
        cj["dt"] = config.dt;
        cj["sample_dt"] = config.sample_dt;
        cj["t_star"] = config.t_star;
        json jp = json::array();
        for (const auto& [e, d] : config.path) jp.push_back({e, d});
        cj["path"] = jp;
        cj["w0"] = {{"a", config.w0.amplitude}, {"b", config.w0.width}};
        cj["c1"] = config.c1;
        cj["c2"] = config.c2;
        cj["blow_up_threshold"] = config.blow_up_threshold;
        written.emplace_back("config.json", cj.dump(2) + "\n");
    }
    written.emplace_back("records.csv", records_csv(records));
    written.emplace_back("fits.json", fits_json(fit, fit ? "" : "fit unavailable"));

    // error vs eps at fixed t*, with the bound line C (law) t*
    {
        std::vector<PlotSeries> series;
        for (double t : config.t_star) {
            PlotSeries s;
            s.label = "t=" + fmt(t);
            for (const auto& rec : records) {
                if (rec.status != "ok") continue;
                bool found = false;
                const double e = record_error_at(rec, t, found);
                if (found) s.points.emplace_back(rec.epsilon, e);
            }
            std::sort(s.points.begin(), s.points.end());
            if (!s.points.empty()) series.push_back(std::move(s));
        }
        if (fit && !config.t_star.empty()) {
            const double t = config.t_star.front();
            PlotSeries bound;
            bound.label = "bound C*law*t, t=" + fmt(t);
            bound.dashed = true;
            for (const auto& rec : records)
                bound.points.emplace_back(rec.epsilon,
                                          fit->C_bound * law_value(law, rec.epsilon, rec.delta) * t);
            std::sort(bound.points.begin(), bound.points.end());
            series.push_back(std::move(bound));
        }
        written.emplace_back("plots/error_vs_eps.svg",
                             svg_loglog("error vs epsilon", "epsilon", "H^s error", series));
    }
    // error vs t at fixed eps
    {
        std::vector<PlotSeries> series;
        for (const auto& rec : records) {
            if (rec.status != "ok") continue;
            PlotSeries s;
            s.label = "eps=" + fmt(rec.epsilon);
            for (size_t i = 0; i < rec.times.size(); ++i)
                if (rec.times[i] > 0) s.points.emplace_back(rec.times[i], rec.errors[i]);
            series.push_back(std::move(s));
            if (fit) {
                PlotSeries bound;
                bound.label = "bound eps=" + fmt(rec.epsilon);
                bound.dashed = true;
                for (size_t i = 0; i < rec.times.size(); ++i)
                    if (rec.times[i] > 0)
                        bound.points.emplace_back(
                            rec.times[i],
                            fit->C_bound * law_value(law, rec.epsilon, rec.delta) * rec.times[i]);
                series.push_back(std::move(bound));
            }
        }
        written.emplace_back("plots/error_vs_t.svg",
                             svg_loglog("error vs time", "t", "H^s error", series));
    }

    json manifest = json::array();
    for (const auto& [name, content] : written) {
        write_text_file(out_dir / name, content);
        manifest.push_back(
            {{"path", name}, {"sha256", sha256_hex(content)}, {"bytes", content.size()}});
    }
    write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

} // namespace longwave
