#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "artaudit/embedding_io.hpp"
#include "artaudit/rng.hpp"
#include "artaudit/zeroshot.hpp"

namespace artaudit {

/// k distinct names drawn without replacement from `name_pool`.
std::vector<std::string> random_name_labels(std::span<const std::string> name_pool, std::size_t k, SeededRng& rng);

/// Name pool file: one name per line, blank lines ignored.
std::vector<std::string> load_name_pool(const std::filesystem::path& path);

/// Accuracy of guessing uniformly among n labels.
double expected_chance_accuracy(std::size_t n_labels);

/// Uniform random permutation of {0, ..., n-1}.
std::vector<std::size_t> random_permutation(std::size_t n, SeededRng& rng);

/// Reassigns artist attributions of `real_records` by a uniform permutation.
/// Record i receives the artist of record perm[i]; ids and vectors are untouched.
struct ReassignedRecords {
    std::vector<EmbeddingRecord> records;
    std::vector<std::size_t> permutation;
};
ReassignedRecords random_assignment_control(std::span<const EmbeddingRecord> real_records, SeededRng& rng);

/// Label set whose embeddings have been shuffled across labels.
LabelSet shuffled_label_control(const LabelSet& labels, SeededRng& rng);

/// Gaussian-cluster stand-in for per-artist style clusters.
struct SyntheticSpec {
    std::size_t n_artists = 70;
    std::size_t per_artist = 10;
    std::size_t dim = 64;
    double separation = 50.0;
    std::uint64_t seed = 0;
    std::string label_template{kDefaultTemplate};
    std::vector<std::string> default_labels = default_label_texts();
};

struct SyntheticArchives {
    std::vector<std::string> artists;
    EmbeddingArchive imitations;
    EmbeddingArchive real;
    EmbeddingArchive labels;
};

/// Name of synthetic artist i ("Artist 000", ...).
std::string synthetic_artist_name(std::size_t i);

/// Per artist: a random unit center c. Label = c. One real record = c + e,
/// per_artist imitations = separation * c + e (trial index = imitation
/// index), where e is isotropic Gaussian noise with E|e|^2 = 1. Image vectors
/// are unit-normalized. Default labels get random unit embeddings.
SyntheticArchives synthetic_archive(const SyntheticSpec& spec);

}  // namespace artaudit
