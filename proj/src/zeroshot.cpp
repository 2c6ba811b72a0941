#include "artaudit/zeroshot.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "artaudit/errors.hpp"

namespace artaudit {

std::vector<std::string> default_label_texts() {
    return {"Artwork", "Digital Artwork", "Artwork from the public domain"};
}

std::string render_label(std::string_view tmpl, std::string_view artist) {
    const auto pos = tmpl.find(kArtistPlaceholder);
    if (pos == std::string_view::npos ||
        tmpl.find(kArtistPlaceholder, pos + kArtistPlaceholder.size()) != std::string_view::npos) {
        throw ValidationError("label template must contain \"{artist}\" exactly once: \"" + std::string(tmpl) +
                              "\"");
    }
    std::string out(tmpl.substr(0, pos));
    out += artist;
    out += tmpl.substr(pos + kArtistPlaceholder.size());
    return out;
}

LabelSet::LabelSet(std::vector<LabelEntry> entries, std::string tmpl)
    : entries_(std::move(entries)), template_(std::move(tmpl)) {
    std::set<std::string, std::less<>> texts;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        auto& e = entries_[i];
        if (!texts.insert(e.text).second) {
            throw ValidationError("duplicate label text \"" + e.text + "\"");
        }
        if (e.embedding.size() != entries_.front().embedding.size()) {
            throw ValidationError("label \"" + e.text + "\" has a different embedding dimension");
        }
        if (e.artist) {
            if (render_label(template_, *e.artist) != e.text) {
                throw ValidationError("label \"" + e.text + "\" does not match the template for artist \"" +
                                      *e.artist + "\"");
            }
            by_artist_.emplace(*e.artist, i);
        }
        e.unit = l2_normalize(e.embedding);
    }
}

std::optional<std::size_t> LabelSet::artist_index(std::string_view artist) const {
    auto it = by_artist_.find(artist);
    if (it == by_artist_.end()) return std::nullopt;
    return it->second;
}

LabelSet LabelSet::with_permuted_embeddings(std::span<const std::size_t> perm) const {
    if (perm.size() != entries_.size()) {
        throw ValidationError("label permutation has the wrong length");
    }
    std::vector<LabelEntry> out = entries_;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].embedding = entries_.at(perm[i]).embedding;
    }
    return LabelSet(std::move(out), template_);
}

LabelSet build_label_set(std::span<const std::string> artists, std::span<const std::string> defaults,
                         std::string_view tmpl, const EmbeddingArchive& text_embeddings) {
    if (artists.empty()) {
        throw ValidationError("artist list is empty");
    }
    std::set<std::string_view> seen;
    for (const auto& a : artists) {
        if (!seen.insert(a).second) {
            throw ValidationError("duplicate artist \"" + a + "\"");
        }
    }

    std::vector<LabelEntry> entries;
    entries.reserve(artists.size() + defaults.size());
    auto lookup = [&](const std::string& text) -> const std::vector<double>& {
        const auto* rec = text_embeddings.find(text);
        if (rec == nullptr) {
            throw ValidationError("no text embedding for label \"" + text + "\"");
        }
        return rec->vector;
    };
    for (const auto& a : artists) {
        auto text = render_label(tmpl, a);
        const auto& emb = lookup(text);
        entries.push_back({std::move(text), a, emb, {}});
    }
    for (const auto& d : defaults) {
        entries.push_back({d, std::nullopt, lookup(d), {}});
    }
    return LabelSet(std::move(entries), std::string(tmpl));
}

std::vector<double> similarity_scores(std::span<const double> image, const LabelSet& labels) {
    if (image.size() != labels.dim()) {
        throw ValidationError("image dim " + std::to_string(image.size()) + " does not match label dim " +
                              std::to_string(labels.dim()));
    }
    const auto unit = l2_normalize(image);
    std::vector<double> scores;
    scores.reserve(labels.size());
    for (const auto& e : labels.entries()) {
        double dot = 0.0;
        for (std::size_t k = 0; k < unit.size(); ++k) dot += unit[k] * e.unit[k];
        scores.push_back(std::clamp(dot, -1.0, 1.0));
    }
    return scores;
}

ClassificationResult classify(const EmbeddingRecord& image, const LabelSet& labels, double temperature) {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw ValidationError("temperature must be a positive finite number");
    }
    if (labels.size() == 0) {
        throw ValidationError("label set is empty");
    }
    const auto scores = similarity_scores(image.vector, labels);

    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
        if (scores[i] > scores[best]) best = i;
    }
    const double top = temperature * scores[best];
    std::vector<double> probs(scores.size());
    double total = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        probs[i] = std::exp(temperature * scores[i] - top);
        total += probs[i];
    }
    for (double& p : probs) p /= total;

    ClassificationResult out;
    out.image_id = image.id;
    out.probabilities = std::move(probs);
    out.predicted_index = best;
    out.predicted_label = labels.entries()[best].text;
    out.true_artist = image.artist;
    const auto& predicted_artist = labels.entries()[best].artist;
    out.correct = image.artist.has_value() && predicted_artist.has_value() && *predicted_artist == *image.artist;
    return out;
}

TrialResult run_classification_trial(std::span<const EmbeddingRecord* const> imitations, const LabelSet& labels,
                                     double temperature, std::uint64_t trial) {
    TrialResult out;
    out.trial = trial;
    out.results.reserve(imitations.size());
    std::size_t correct = 0;
    for (const auto* rec : imitations) {
        if (!rec->artist) {
            throw ValidationError("imitation \"" + rec->id + "\" has no artist attribution");
        }
        if (!labels.artist_index(*rec->artist)) {
            throw ValidationError("imitation \"" + rec->id + "\" is attributed to unknown artist \"" +
                                  *rec->artist + "\"");
        }
        out.results.push_back(classify(*rec, labels, temperature));
        if (out.results.back().correct) ++correct;
    }
    out.accuracy = out.results.empty()
                       ? 0.0
                       : static_cast<double>(correct) / static_cast<double>(out.results.size());
    return out;
}

ClassificationReport aggregate_trials(std::span<const TrialResult> trials) {
    if (trials.empty()) {
        throw ValidationError("no trials to aggregate");
    }

    auto artist_set = [](const TrialResult& t) {
        std::set<std::string> s;
        for (const auto& r : t.results) s.insert(r.true_artist.value_or(""));
        return s;
    };
    const auto reference = artist_set(trials.front());
    for (const auto& t : trials) {
        if (artist_set(t) != reference) {
            throw ValidationError("trial " + std::to_string(t.trial) + " covers a different artist set than trial " +
                                  std::to_string(trials.front().trial));
        }
    }

    ClassificationReport report;
    std::vector<std::string> order;
    std::map<std::string, std::map<std::string, std::size_t>> predicted_by_artist;
    std::map<std::string, std::string> own_label;
    double sum = 0.0;
    for (const auto& t : trials) {
        report.trials.push_back(t.trial);
        report.trial_accuracies.push_back(t.accuracy);
        sum += t.accuracy;
        for (const auto& r : t.results) {
            const std::string artist = r.true_artist.value_or("");
            auto [it, fresh] = predicted_by_artist.try_emplace(artist);
            if (fresh) order.push_back(artist);
            ++it->second[r.predicted_label];
            ++report.confusion[{artist, r.predicted_label}];
            if (r.correct) own_label[artist] = r.predicted_label;
        }
    }
    report.mean_accuracy = sum / static_cast<double>(trials.size());

    for (const auto& artist : order) {
        const auto& counts = predicted_by_artist.at(artist);
        PluralityVerdict v;
        v.artist = artist;
        std::size_t mode_count = 0;
        std::size_t modes = 0;
        for (const auto& [label, n] : counts) {
            v.predictions += n;
            if (n > mode_count) {
                mode_count = n;
                modes = 1;
            } else if (n == mode_count) {
                ++modes;
            }
        }
        if (auto own = own_label.find(artist); own != own_label.end()) {
            v.correct_predictions = counts.at(own->second);
            v.identified = modes == 1 && v.correct_predictions == mode_count;
        }
        if (v.identified) ++report.identified_count;
        report.plurality.push_back(std::move(v));
    }
    return report;
}

}  // namespace artaudit
