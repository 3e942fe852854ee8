#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "longwave/experiment.hpp"
#include "longwave/residual.hpp"

namespace longwave {

/// One deterministic log-log series for the SVG plots.
struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
    bool dashed = false; // bound lines are dashed
};

/// Minimal static SVG: log-log axes with decade ticks, polyline + markers
/// per series. Always returns a valid document, even for single points.
std::string svg_loglog(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<PlotSeries>& series);

/// Render records.csv per sample row.
std::string records_csv(const std::vector<RunRecord>& records);

/// Parse a records.csv written by records_csv back into records
/// (used by the report command to re-render a bundle).
std::vector<RunRecord> parse_records_csv(const std::string& text);

/// Render the sweep fit summary JSON.
std::string fits_json(const std::optional<FitResult>& fit, const std::string& note);

/// Energy time series CSV ("t,E_s,E_tilde,norm_r_Hs") for one record.
std::string energy_csv(const RunRecord& record);

/// Residual scan outputs: CSV ("epsilon,delta,t,s,norm_F") and fit JSON
/// ({slope, intercept, r_squared, path}, first sample time at top level).
std::string scan_csv(const ScanResult& scan);
std::string scan_json(const ScanResult& scan, const std::vector<std::pair<double, double>>& path);

/// Write the full bundle: records.csv, fits.json, plots/*.svg and a
/// manifest.json listing every written file with its sha256 and size.
/// Throws InvalidArgument on an empty record list.
void make_report(const SweepConfig& config, const std::vector<RunRecord>& records,
                 const std::optional<FitResult>& fit, ErrorLaw law,
                 const std::filesystem::path& out_dir);

} // namespace longwave
