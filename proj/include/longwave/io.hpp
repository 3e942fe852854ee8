#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "longwave/bidirectional.hpp"
#include "longwave/grid.hpp"
#include "longwave/unidirectional.hpp"

namespace longwave {

/// Format a double losslessly and deterministically ("%.17g").
std::string format_double(double v);

/// Field snapshot CSV, header "x,value", one row per node in node order.
void write_field_csv(const std::filesystem::path& path, const Field& field);

/// Read back a field CSV written by write_field_csv.
Field read_field_csv(const std::filesystem::path& path, const GridSpec& grid);

/// Trajectory export: a directory holding manifest.json (grid, model,
/// parameters, dt, times, file list) and one field CSV per snapshot with
/// zero-padded index names (w_0000.csv, ...).
void export_trajectory(const std::filesystem::path& dir, const Trajectory& traj);

/// Same layout with u_NNNN.csv / ut_NNNN.csv pairs per snapshot.
void export_trajectory(const std::filesystem::path& dir, const BidiTrajectory& traj);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

/// SHA-256 of a byte string, lowercase hex.
std::string sha256_hex(const std::string& bytes);

} // namespace longwave
