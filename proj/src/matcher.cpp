#include "artaudit/matcher.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "artaudit/errors.hpp"

namespace artaudit {

namespace {

double unit_dot(std::span<const double> ua, std::span<const double> ub) {
    double dot = 0.0;
    for (std::size_t k = 0; k < ua.size(); ++k) dot += ua[k] * ub[k];
    return dot;
}

double unit_distance(std::span<const double> ua, std::span<const double> ub) {
    return std::clamp(1.0 - unit_dot(ua, ub), 0.0, 2.0);
}

void require_image(const EmbeddingRecord& rec) {
    if (rec.kind != RecordKind::image) {
        throw ValidationError("record \"" + rec.id + "\" is not an image embedding");
    }
}

struct Pool {
    std::vector<const EmbeddingRecord*> records;
    std::vector<std::vector<double>> units;
};

}  // namespace

double cosine_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError("cosine distance between vectors of dim " + std::to_string(a.size()) + " and " +
                              std::to_string(b.size()));
    }
    return unit_distance(l2_normalize(a), l2_normalize(b));
}

double bonferroni(double p, std::size_t m) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw ValidationError("p-value must lie in (0, 1]");
    }
    if (m < 1) {
        throw ValidationError("family size must be at least 1");
    }
    return std::min(1.0, static_cast<double>(m) * p);
}

MatchTestResult match_test(const EmbeddingRecord& real_work, std::span<const EmbeddingRecord* const> same_imitations,
                           std::span<const EmbeddingRecord* const> other_imitations, const MatchOptions& options,
                           std::size_t family_size) {
    if (same_imitations.empty() || other_imitations.empty()) {
        throw ValidationError("match test for \"" + real_work.id + "\" needs non-empty same and other groups");
    }
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
        throw ValidationError("alpha must lie in (0, 1)");
    }
    require_image(real_work);
    std::set<std::string_view> same_ids;
    for (const auto* rec : same_imitations) {
        require_image(*rec);
        same_ids.insert(rec->id);
    }
    for (const auto* rec : other_imitations) {
        require_image(*rec);
        if (same_ids.contains(rec->id)) {
            throw ValidationError("imitation \"" + rec->id + "\" is in both the same and other groups");
        }
    }

    const auto real_unit = l2_normalize(real_work.vector);
    auto distances = [&](std::span<const EmbeddingRecord* const> group) {
        std::vector<double> d;
        d.reserve(group.size());
        for (const auto* rec : group) {
            if (rec->dim() != real_work.dim()) {
                throw ValidationError("imitation \"" + rec->id + "\" has a different dim than \"" + real_work.id +
                                      "\"");
            }
            d.push_back(unit_distance(real_unit, l2_normalize(rec->vector)));
        }
        return d;
    };
    const auto d_same = distances(same_imitations);
    const auto d_other = distances(other_imitations);
    const auto outcome = ranksum_p(d_same, d_other, options.alternative, options.continuity);

    MatchTestResult out;
    out.artist = real_work.artist.value_or("");
    out.n_same = d_same.size();
    out.n_other = d_other.size();
    out.u_statistic = outcome.u_statistic;
    out.z_score = outcome.z_score;
    out.p_raw = outcome.p_value;
    out.p_corrected = bonferroni(outcome.p_value, family_size);
    out.alpha = options.alpha;
    out.significant = out.p_corrected < options.alpha;
    return out;
}

MatchReport run_match_experiment(const EmbeddingArchive& real_archive, const EmbeddingArchive& imitation_archive,
                                 const MatchOptions& options) {
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
        throw ValidationError("alpha must lie in (0, 1)");
    }
    if (!real_archive.empty() && !imitation_archive.empty() && real_archive.dim() != imitation_archive.dim()) {
        throw ValidationError("real archive dim " + std::to_string(real_archive.dim()) +
                              " differs from imitation archive dim " + std::to_string(imitation_archive.dim()));
    }

    std::vector<std::string> artist_order;
    std::map<std::string, std::vector<const EmbeddingRecord*>, std::less<>> reals;
    for (const auto& rec : real_archive.records()) {
        if (rec.group != RecordGroup::real) continue;
        if (!rec.artist) {
            throw ValidationError("real record \"" + rec.id + "\" has no artist attribution");
        }
        auto [it, fresh] = reals.try_emplace(*rec.artist);
        if (fresh) artist_order.push_back(*rec.artist);
        it->second.push_back(&rec);
    }
    if (artist_order.empty()) {
        throw ValidationError("real archive contains no attributed real records");
    }

    std::vector<const EmbeddingRecord*> imitations;
    std::vector<std::string> imitation_artist_order;
    std::map<std::string, std::size_t, std::less<>> imitation_counts;
    for (const auto& rec : imitation_archive.records()) {
        if (rec.group != RecordGroup::imitation) continue;
        if (!rec.artist) {
            throw ValidationError("imitation \"" + rec.id + "\" has no artist attribution");
        }
        imitations.push_back(&rec);
        if (imitation_counts[*rec.artist]++ == 0) imitation_artist_order.push_back(*rec.artist);
    }
    for (const auto& artist : artist_order) {
        if (!imitation_counts.contains(artist)) {
            throw ValidationError("artist \"" + artist + "\" has real work but no imitations");
        }
    }

    MatchReport report;
    report.alpha = options.alpha;
    report.alternative = options.alternative;
    report.continuity = options.continuity;
    report.family_size = artist_order.size();
    for (const auto& artist : imitation_artist_order) {
        if (!reals.contains(artist)) {
            report.skipped_artists.push_back(artist);
            report.warnings.push_back("artist \"" + artist + "\" has imitations but no real work; skipped");
        }
    }

    for (const auto& artist : artist_order) {
        std::vector<const EmbeddingRecord*> same;
        std::vector<const EmbeddingRecord*> other;
        for (const auto* rec : imitations) {
            (*rec->artist == artist ? same : other).push_back(rec);
        }
        if (other.empty()) {
            throw ValidationError("artist \"" + artist + "\" has no other-artist imitations to compare against");
        }
        std::optional<MatchTestResult> worst;
        const auto& works = reals.at(artist);
        for (const auto* real_work : works) {
            auto r = match_test(*real_work, same, other, options, report.family_size);
            if (!worst || r.p_raw > worst->p_raw) worst = std::move(r);
        }
        worst->n_real = works.size();
        if (worst->significant) ++report.significant_count;
        report.results.push_back(std::move(*worst));
    }
    return report;
}

}  // namespace artaudit
