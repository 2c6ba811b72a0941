#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "artaudit/embedding_io.hpp"

namespace artaudit {

inline constexpr std::string_view kArtistPlaceholder = "{artist}";
inline constexpr std::string_view kDefaultTemplate = "Artwork from {artist}";
inline constexpr double kDefaultTemperature = 100.0;

/// The generic labels that absorb predictions with no artist-specific style.
std::vector<std::string> default_label_texts();

/// Substitutes `artist` for the single placeholder in `tmpl`.
/// Throws ValidationError unless the placeholder occurs exactly once.
std::string render_label(std::string_view tmpl, std::string_view artist);

struct LabelEntry {
    std::string text;
    std::optional<std::string> artist;  // null for default labels
    std::vector<double> embedding;
    std::vector<double> unit;           // embedding / |embedding|
};

class LabelSet {
public:
    LabelSet() = default;
    LabelSet(std::vector<LabelEntry> entries, std::string tmpl);

    const std::vector<LabelEntry>& entries() const noexcept { return entries_; }
    const std::string& label_template() const noexcept { return template_; }
    std::size_t size() const noexcept { return entries_.size(); }
    std::size_t dim() const noexcept { return entries_.empty() ? 0 : entries_.front().embedding.size(); }

    /// Index of the label attributed to `artist`, if any.
    std::optional<std::size_t> artist_index(std::string_view artist) const;

    /// Same texts and artists, with embeddings reassigned by `perm`:
    /// entry i receives the embedding of entry perm[i].
    LabelSet with_permuted_embeddings(std::span<const std::size_t> perm) const;

private:
    std::vector<LabelEntry> entries_;
    std::string template_;
    std::map<std::string, std::size_t, std::less<>> by_artist_;
};

/// Artist labels in the given order, then the defaults. Each label's
/// embedding is the archive record whose id equals the label text.
LabelSet build_label_set(std::span<const std::string> artists, std::span<const std::string> defaults,
                         std::string_view tmpl, const EmbeddingArchive& text_embeddings);

/// Cosine similarity of `image` against each label.
std::vector<double> similarity_scores(std::span<const double> image, const LabelSet& labels);

struct ClassificationResult {
    std::string image_id;
    std::vector<double> probabilities;
    std::size_t predicted_index = 0;
    std::string predicted_label;
    std::optional<std::string> true_artist;
    bool correct = false;
};

/// softmax(temperature * cosine) over the labels; argmax ties go to the lowest index.
ClassificationResult classify(const EmbeddingRecord& image, const LabelSet& labels,
                              double temperature = kDefaultTemperature);

struct TrialResult {
    std::uint64_t trial = 0;
    std::vector<ClassificationResult> results;
    double accuracy = 0.0;
};

TrialResult run_classification_trial(std::span<const EmbeddingRecord* const> imitations, const LabelSet& labels,
                                     double temperature, std::uint64_t trial);

struct PluralityVerdict {
    std::string artist;
    std::size_t predictions = 0;
    std::size_t correct_predictions = 0;
    bool identified = false;  // own label is the unique mode of its predictions
};

struct ClassificationReport {
    std::vector<std::uint64_t> trials;
    std::vector<double> trial_accuracies;
    double mean_accuracy = 0.0;
    std::vector<PluralityVerdict> plurality;  // artists in first-seen order
    std::size_t identified_count = 0;
    /// (true artist, predicted label) -> count
    std::map<std::pair<std::string, std::string>, std::size_t> confusion;
};

ClassificationReport aggregate_trials(std::span<const TrialResult> trials);

}  // namespace artaudit
