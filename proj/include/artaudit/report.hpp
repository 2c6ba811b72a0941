#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

namespace artaudit {

using ordered_json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "artaudit 0.1.0";

enum class ReportFormat { json, csv };

/// Floats as 17 significant digits (always with a '.' or exponent), keys in
/// insertion order, two-space indentation, trailing newline. Identical
/// documents always serialize to identical bytes.
std::string dump_canonical(const ordered_json& doc);

/// The "rows" array as CSV: header from the first row's keys, then one line per row.
std::string dump_csv(const ordered_json& rows);

std::string format_float(double x);

/// Checks the published report shape: top-level keys exactly
/// version, config, experiment, rows, summary, duration_ms (in that order).
/// Throws ValidationError on any deviation.
void validate_report(const ordered_json& report);

/// Serializes and atomically replaces `path` (temp file + rename).
void write_report(const std::filesystem::path& path, const ordered_json& report, ReportFormat format);

/// Writes `contents` to `path` via a temp file in the same directory.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace artaudit
