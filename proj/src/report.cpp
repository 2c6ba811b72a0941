#include "artaudit/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "artaudit/errors.hpp"

namespace artaudit {

namespace {

void emit(std::string& out, const ordered_json& v, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(depth + 1) * 2, ' ');
    switch (v.type()) {
        case ordered_json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, val] : v.items()) {
                if (!first) out += ",\n";
                first = false;
                out += inner;
                out += ordered_json(key).dump();
                out += ": ";
                emit(out, val, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case ordered_json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& val : v) {
                if (!first) out += ",\n";
                first = false;
                out += inner;
                emit(out, val, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case ordered_json::value_t::number_float:
            out += format_float(v.get<double>());
            return;
        default:
            out += v.dump();
            return;
    }
}

std::string csv_cell(const ordered_json& v) {
    switch (v.type()) {
        case ordered_json::value_t::null: return "";
        case ordered_json::value_t::number_float: return format_float(v.get<double>());
        case ordered_json::value_t::string: {
            const auto& s = v.get_ref<const std::string&>();
            if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
            std::string q = "\"";
            for (char c : s) {
                if (c == '"') q += '"';
                q += c;
            }
            return q + "\"";
        }
        case ordered_json::value_t::array:
        case ordered_json::value_t::object: return csv_cell(ordered_json(v.dump()));
        default: return v.dump();
    }
}

}  // namespace

std::string format_float(double x) {
    if (!std::isfinite(x)) {
        // JSON has no representation for these; they never reach a report.
        throw ValidationError("non-finite value in report");
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    if (s.find_first_of(".e") == std::string::npos) s += ".0";
    return s;
}

std::string dump_canonical(const ordered_json& doc) {
    std::string out;
    emit(out, doc, 0);
    out += '\n';
    return out;
}

std::string dump_csv(const ordered_json& rows) {
    if (!rows.is_array()) {
        throw ValidationError("rows must be an array");
    }
    std::string out;
    if (rows.empty()) return out;
    std::vector<std::string> columns;
    for (const auto& [key, _] : rows.front().items()) columns.push_back(key);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        out += csv_cell(ordered_json(columns[i]));
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out += ',';
            out += row.contains(columns[i]) ? csv_cell(row.at(columns[i])) : std::string();
        }
        out += '\n';
    }
    return out;
}

void validate_report(const ordered_json& report) {
    static constexpr std::string_view keys[] = {"version", "config", "experiment", "rows", "summary", "duration_ms"};
    if (!report.is_object()) {
        throw ValidationError("report is not an object");
    }
    if (report.size() != std::size(keys)) {
        throw ValidationError("report must have exactly 6 top-level keys");
    }
    std::size_t i = 0;
    for (const auto& [key, _] : report.items()) {
        if (key != keys[i]) {
            throw ValidationError("report key " + std::to_string(i) + " is \"" + key + "\", expected \"" +
                                  std::string(keys[i]) + "\"");
        }
        ++i;
    }
    if (!report.at("version").is_string()) throw ValidationError("report version must be a string");
    if (!report.at("config").is_object()) throw ValidationError("report config must be an object");
    if (!report.at("experiment").is_string()) throw ValidationError("report experiment must be a string");
    if (!report.at("rows").is_array()) throw ValidationError("report rows must be an array");
    for (const auto& row : report.at("rows")) {
        if (!row.is_object()) throw ValidationError("report rows must be objects");
        for (const auto& [_, v] : row.items()) {
            if (v.is_object()) throw ValidationError("report row cells must not be objects");
        }
    }
    if (!report.at("summary").is_object()) throw ValidationError("report summary must be an object");
    if (!report.at("duration_ms").is_number_unsigned()) {
        throw ValidationError("report duration_ms must be a non-negative integer");
    }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ValidationError("cannot write " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw ValidationError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw ValidationError("cannot move report into place at " + path.string());
    }
}

void write_report(const std::filesystem::path& path, const ordered_json& report, ReportFormat format) {
    validate_report(report);
    write_file_atomic(path, format == ReportFormat::json ? dump_canonical(report) : dump_csv(report.at("rows")));
}

}  // namespace artaudit
