#pragma once

// File formats: state snapshots (JSON), run time series and Husimi grids (CSV).

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "squeeze/diagnostics.hpp"
#include "squeeze/spin.hpp"

namespace squeeze::io {

inline constexpr std::string_view kRunCsvHeader = "chi_t,xi2,xi2_db,jx,jy,jz,theta_min";

/// {"N", "j", "basis": "Jz-descending", "amplitudes": [[re, im], ...]} with
/// 17 significant digits, so reading back is exact.
void write_state(std::ostream& out, const DickeState& state);
/// Throws IoError on malformed content or a norm outside tolerance.
DickeState read_state(std::istream& in);

void save_state(const std::filesystem::path& path, const DickeState& state);
DickeState load_state(const std::filesystem::path& path);

/// One row per sample. When chi (rad/s) is given, a t_seconds column follows.
void write_run_csv(std::ostream& out, const RunRecord& record, std::optional<double> chi_rad_per_s = {});

/// theta,phi,q rows, theta outer.
void write_husimi_csv(std::ostream& out, const HusimiGrid& grid);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// SHA-1 of "blob <size>\0<content>", as git hash-object computes it.
std::string git_blob_digest(std::string_view content);

}  // namespace squeeze::io
