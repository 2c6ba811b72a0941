#include "artaudit/embedding_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "artaudit/errors.hpp"
#include "json.hpp"

namespace artaudit {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kKeys[] = {"id", "kind", "artist", "group", "trial", "dim", "vector"};

std::string at_line(std::string_view source, std::size_t line) {
    return std::string(source) + ":" + std::to_string(line) + ": ";
}

EmbeddingRecord record_from_json(const nlohmann::json& obj, const std::string& where) {
    if (!obj.is_object()) {
        throw ValidationError(where + "record is not an object");
    }
    if (obj.size() != std::size(kKeys)) {
        throw ValidationError(where + "record must have exactly the keys id, kind, artist, group, trial, dim, vector");
    }
    for (auto key : kKeys) {
        if (!obj.contains(key)) {
            throw ValidationError(where + "missing key \"" + std::string(key) + "\"");
        }
    }

    EmbeddingRecord rec;
    const auto& id = obj.at("id");
    if (!id.is_string() || id.get_ref<const std::string&>().empty()) {
        throw ValidationError(where + "\"id\" must be a non-empty string");
    }
    rec.id = id.get<std::string>();

    const auto& kind = obj.at("kind");
    auto parsed_kind = kind.is_string() ? parse_kind(kind.get_ref<const std::string&>()) : std::nullopt;
    if (!parsed_kind) {
        throw ValidationError(where + "\"kind\" must be \"image\" or \"text\"");
    }
    rec.kind = *parsed_kind;

    const auto& group = obj.at("group");
    auto parsed_group = group.is_string() ? parse_group(group.get_ref<const std::string&>()) : std::nullopt;
    if (!parsed_group) {
        throw ValidationError(where + "\"group\" must be one of imitation, real, label, control");
    }
    rec.group = *parsed_group;

    const auto& artist = obj.at("artist");
    if (artist.is_string()) {
        rec.artist = artist.get<std::string>();
    } else if (!artist.is_null()) {
        throw ValidationError(where + "\"artist\" must be a string or null");
    }

    const auto& trial = obj.at("trial");
    if (trial.is_number_unsigned()) {
        rec.trial = trial.get<std::uint64_t>();
    } else if (!trial.is_null()) {
        throw ValidationError(where + "\"trial\" must be a non-negative integer or null");
    }

    const auto& dim = obj.at("dim");
    if (!dim.is_number_unsigned() || dim.get<std::uint64_t>() == 0) {
        throw ValidationError(where + "\"dim\" must be a positive integer");
    }
    const auto& vec = obj.at("vector");
    if (!vec.is_array()) {
        throw ValidationError(where + "\"vector\" must be an array");
    }
    if (vec.size() != dim.get<std::uint64_t>()) {
        throw ValidationError(where + "\"vector\" has " + std::to_string(vec.size()) +
                              " components but dim is " + std::to_string(dim.get<std::uint64_t>()));
    }
    rec.vector.reserve(vec.size());
    for (const auto& x : vec) {
        if (!x.is_number()) {
            throw ValidationError(where + "\"vector\" components must be numbers");
        }
        rec.vector.push_back(x.get<double>());
    }
    return rec;
}

}  // namespace

std::string_view to_string(RecordKind kind) {
    return kind == RecordKind::image ? "image" : "text";
}

std::string_view to_string(RecordGroup group) {
    switch (group) {
        case RecordGroup::imitation: return "imitation";
        case RecordGroup::real: return "real";
        case RecordGroup::label: return "label";
        case RecordGroup::control: return "control";
    }
    return "imitation";
}

std::optional<RecordKind> parse_kind(std::string_view s) {
    if (s == "image") return RecordKind::image;
    if (s == "text") return RecordKind::text;
    return std::nullopt;
}

std::optional<RecordGroup> parse_group(std::string_view s) {
    if (s == "imitation") return RecordGroup::imitation;
    if (s == "real") return RecordGroup::real;
    if (s == "label") return RecordGroup::label;
    if (s == "control") return RecordGroup::control;
    return std::nullopt;
}

void validate_record(const EmbeddingRecord& record) {
    if (record.id.empty()) {
        throw ValidationError("record has an empty id");
    }
    if (record.vector.empty()) {
        throw ValidationError("record \"" + record.id + "\" has dimension 0");
    }
    for (double x : record.vector) {
        if (!std::isfinite(x)) {
            throw ValidationError("record \"" + record.id + "\" has a non-finite component");
        }
    }
    if (record.kind == RecordKind::text && record.group != RecordGroup::label) {
        throw ValidationError("record \"" + record.id + "\": text records must be in group label");
    }
    if ((record.group == RecordGroup::real || record.group == RecordGroup::imitation) &&
        record.kind != RecordKind::image) {
        throw ValidationError("record \"" + record.id + "\": real and imitation records must be images");
    }
    bool all_zero = true;
    for (double x : record.vector) {
        if (x != 0.0) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) {
        throw ValidationError("record \"" + record.id + "\" is the zero vector");
    }
}

EmbeddingArchive::EmbeddingArchive(std::vector<EmbeddingRecord> records) : records_(std::move(records)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& rec = records_[i];
        validate_record(rec);
        if (i == 0) {
            dim_ = rec.dim();
        } else if (rec.dim() != dim_) {
            throw ValidationError("record \"" + rec.id + "\" has dim " + std::to_string(rec.dim()) +
                                  ", archive dim is " + std::to_string(dim_));
        }
        if (!index_.emplace(rec.id, i).second) {
            throw ValidationError("duplicate id \"" + rec.id + "\"");
        }
    }
}

const EmbeddingRecord* EmbeddingArchive::find(std::string_view id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &records_[it->second];
}

EmbeddingArchive parse_archive(std::istream& in, std::string_view source) {
    std::vector<EmbeddingRecord> records;
    std::map<std::string, std::size_t, std::less<>> seen;
    std::size_t dim = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = at_line(source, line_no);
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            throw ValidationError(where + "blank line");
        }
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(where + "malformed record: " + e.what());
        } catch (const nlohmann::json::out_of_range&) {
            throw ValidationError(where + "non-finite or out-of-range number");
        }
        auto rec = record_from_json(obj, where);
        try {
            validate_record(rec);
        } catch (const AuditError& e) {
            throw AuditError(e.kind(), where + e.what());
        }
        if (records.empty()) {
            dim = rec.dim();
        } else if (rec.dim() != dim) {
            throw ValidationError(where + "dimension mismatch: dim " + std::to_string(rec.dim()) +
                                  " but earlier records have dim " + std::to_string(dim));
        }
        if (auto it = seen.find(rec.id); it != seen.end()) {
            throw ValidationError(where + "duplicate id \"" + rec.id + "\" (first on line " +
                                  std::to_string(it->second) + ")");
        }
        seen.emplace(rec.id, line_no);
        records.push_back(std::move(rec));
    }
    if (in.bad()) {
        throw ValidationError(std::string(source) + ": read error");
    }
    return EmbeddingArchive(std::move(records));
}

EmbeddingArchive load_archive(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open archive " + path.string());
    }
    return parse_archive(in, path.string());
}

std::string format_record(const EmbeddingRecord& record) {
    ordered_json obj;
    obj["id"] = record.id;
    obj["kind"] = to_string(record.kind);
    obj["artist"] = record.artist ? ordered_json(*record.artist) : ordered_json(nullptr);
    obj["group"] = to_string(record.group);
    obj["trial"] = record.trial ? ordered_json(*record.trial) : ordered_json(nullptr);
    obj["dim"] = record.dim();
    obj["vector"] = record.vector;
    return obj.dump();
}

void write_archive(std::ostream& out, const EmbeddingArchive& archive) {
    for (const auto& rec : archive.records()) {
        out << format_record(rec) << '\n';
    }
}

void write_archive(const std::filesystem::path& path, const EmbeddingArchive& archive) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ValidationError("cannot write archive " + path.string());
    }
    write_archive(out, archive);
    if (!out) {
        throw ValidationError("write failed for " + path.string());
    }
}

double l2_norm(std::span<const double> v) {
    // Scaled accumulation keeps tiny and huge components from under/overflowing.
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    double sum = 0.0;
    for (double x : v) {
        const double r = x / scale;
        sum += r * r;
    }
    return scale * std::sqrt(sum);
}

std::vector<double> l2_normalize(std::span<const double> v) {
    const double norm = l2_norm(v);
    if (!(norm >= kDegenerateNorm) || !std::isfinite(norm)) {
        throw DegenerateError("cannot normalize a vector with norm below 1e-12");
    }
    std::vector<double> out(v.begin(), v.end());
    for (double& x : out) x /= norm;
    return out;
}

GroupPartition partition_by_group(const EmbeddingArchive& archive) {
    GroupPartition parts;
    for (auto g : {RecordGroup::imitation, RecordGroup::real, RecordGroup::label, RecordGroup::control}) {
        parts[g];
    }
    for (const auto& rec : archive.records()) {
        parts[rec.group].push_back(&rec);
    }
    return parts;
}

}  // namespace artaudit
