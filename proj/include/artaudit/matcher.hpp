#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "artaudit/embedding_io.hpp"
#include "artaudit/stat_kernel.hpp"

namespace artaudit {

inline constexpr double kDefaultAlpha = 0.05;

/// 1 - cosine similarity, in [0, 2].
double cosine_distance(std::span<const double> a, std::span<const double> b);

/// min(1, m p). Throws ValidationError for p outside (0, 1] or m < 1.
double bonferroni(double p, std::size_t m);

struct MatchOptions {
    double alpha = kDefaultAlpha;
    Alternative alternative = Alternative::less;
    ContinuityCorrection continuity = ContinuityCorrection::half;
};

struct MatchTestResult {
    std::string artist;
    std::size_t n_real = 1;
    std::size_t n_same = 0;
    std::size_t n_other = 0;
    double u_statistic = 0.0;
    double z_score = 0.0;
    double p_raw = 1.0;
    double p_corrected = 1.0;
    bool significant = false;
    double alpha = kDefaultAlpha;
};

/// Ranks distances from `real_work` to same-artist imitations (x) against
/// distances to other-artist imitations (y), then applies Bonferroni with
/// family size `family_size`.
MatchTestResult match_test(const EmbeddingRecord& real_work, std::span<const EmbeddingRecord* const> same_imitations,
                           std::span<const EmbeddingRecord* const> other_imitations, const MatchOptions& options,
                           std::size_t family_size);

struct MatchReport {
    std::vector<MatchTestResult> results;  // artists in real-archive order
    std::size_t significant_count = 0;
    std::size_t family_size = 0;
    double alpha = kDefaultAlpha;
    Alternative alternative = Alternative::less;
    ContinuityCorrection continuity = ContinuityCorrection::half;
    std::vector<std::string> skipped_artists;  // imitations but no real work
    std::vector<std::string> warnings;
};

/// Runs one test per artist with real work. Several real records for one
/// artist are each tested against the same pools; the worst p is kept.
MatchReport run_match_experiment(const EmbeddingArchive& real_archive, const EmbeddingArchive& imitation_archive,
                                 const MatchOptions& options = {});

}  // namespace artaudit
