#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace artaudit {

enum class RecordKind { image, text };
enum class RecordGroup { imitation, real, label, control };

std::string_view to_string(RecordKind kind);
std::string_view to_string(RecordGroup group);
std::optional<RecordKind> parse_kind(std::string_view s);
std::optional<RecordGroup> parse_group(std::string_view s);

/// One encoder output: an image or text embedding with its attribution.
///
/// Vectors are kept exactly as the encoder emitted them; consumers normalize.
struct EmbeddingRecord {
    std::string id;
    RecordKind kind = RecordKind::image;
    std::optional<std::string> artist;
    RecordGroup group = RecordGroup::imitation;
    std::optional<std::uint64_t> trial;
    std::vector<double> vector;

    std::size_t dim() const noexcept { return vector.size(); }
};

/// Ordered, id-unique collection of records sharing one dimension.
class EmbeddingArchive {
public:
    EmbeddingArchive() = default;

    /// Validates every record and the cross-record invariants.
    /// Throws ValidationError.
    explicit EmbeddingArchive(std::vector<EmbeddingRecord> records);

    const std::vector<EmbeddingRecord>& records() const noexcept { return records_; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }

    const EmbeddingRecord* find(std::string_view id) const;

private:
    std::vector<EmbeddingRecord> records_;
    std::size_t dim_ = 0;
    std::map<std::string, std::size_t, std::less<>> index_;
};

/// Checks the single-record invariants (finite, non-zero, kind/group agree).
void validate_record(const EmbeddingRecord& record);

EmbeddingArchive load_archive(const std::filesystem::path& path);

/// Parses archive text. `source` names the input in error messages.
EmbeddingArchive parse_archive(std::istream& in, std::string_view source = "<stream>");

/// Canonical line for one record (no trailing newline).
std::string format_record(const EmbeddingRecord& record);

void write_archive(std::ostream& out, const EmbeddingArchive& archive);
void write_archive(const std::filesystem::path& path, const EmbeddingArchive& archive);

/// Norms below this are treated as zero.
inline constexpr double kDegenerateNorm = 1e-12;

double l2_norm(std::span<const double> v);

/// Throws DegenerateError when the norm is below kDegenerateNorm.
std::vector<double> l2_normalize(std::span<const double> v);

using GroupPartition = std::map<RecordGroup, std::vector<const EmbeddingRecord*>>;

/// Every group key is present (possibly empty); file order kept within a bucket.
GroupPartition partition_by_group(const EmbeddingArchive& archive);

}  // namespace artaudit
