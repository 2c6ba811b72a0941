#include "artaudit/baseline.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "artaudit/errors.hpp"

namespace artaudit {

namespace {

std::vector<double> gaussian_vector(std::size_t dim, double sd, SeededRng& rng) {
    std::vector<double> v(dim);
    for (double& x : v) x = sd * rng.next_gaussian();
    return v;
}

std::vector<double> random_unit(std::size_t dim, SeededRng& rng) {
    while (true) {
        auto v = gaussian_vector(dim, 1.0, rng);
        if (l2_norm(v) >= 1e-6) return l2_normalize(v);
    }
}

}  // namespace

std::vector<std::string> random_name_labels(std::span<const std::string> name_pool, std::size_t k, SeededRng& rng) {
    if (k == 0) {
        throw ValidationError("number of random names must be positive");
    }
    if (name_pool.size() < k) {
        throw ValidationError("name pool has " + std::to_string(name_pool.size()) + " names, need " +
                              std::to_string(k));
    }
    std::vector<std::string> pool(name_pool.begin(), name_pool.end());
    // Partial Fisher-Yates: the first k slots are a uniform sample without replacement.
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + static_cast<std::size_t>(rng.next_below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
}

std::vector<std::string> load_name_pool(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open name pool " + path.string());
    }
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        names.push_back(line.substr(start));
    }
    return names;
}

double expected_chance_accuracy(std::size_t n_labels) {
    if (n_labels == 0) {
        throw ValidationError("number of labels must be positive");
    }
    return 1.0 / static_cast<double>(n_labels);
}

std::vector<std::size_t> random_permutation(std::size_t n, SeededRng& rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(std::span<std::size_t>(perm));
    return perm;
}

ReassignedRecords random_assignment_control(std::span<const EmbeddingRecord> real_records, SeededRng& rng) {
    if (real_records.size() < 2) {
        throw ValidationError("random assignment needs at least 2 real records");
    }
    ReassignedRecords out;
    out.permutation = random_permutation(real_records.size(), rng);
    out.records.assign(real_records.begin(), real_records.end());
    for (std::size_t i = 0; i < out.records.size(); ++i) {
        out.records[i].artist = real_records[out.permutation[i]].artist;
    }
    return out;
}

LabelSet shuffled_label_control(const LabelSet& labels, SeededRng& rng) {
    const auto perm = random_permutation(labels.size(), rng);
    return labels.with_permuted_embeddings(perm);
}

std::string synthetic_artist_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "Artist %03zu", i);
    return buf;
}

SyntheticArchives synthetic_archive(const SyntheticSpec& spec) {
    if (spec.n_artists == 0 || spec.per_artist == 0 || spec.dim == 0) {
        throw ValidationError("synthetic fixture counts must be positive");
    }
    if (!(spec.separation >= 0.0) || !std::isfinite(spec.separation)) {
        throw ValidationError("synthetic separation must be a non-negative finite number");
    }

    SeededRng rng(spec.seed);
    const double noise_sd = 1.0 / std::sqrt(static_cast<double>(spec.dim));
    auto noisy = [&](const std::vector<double>& base, double scale) {
        // Retry on the (measure-zero) chance of an exactly degenerate draw.
        while (true) {
            auto v = gaussian_vector(spec.dim, noise_sd, rng);
            for (std::size_t k = 0; k < v.size(); ++k) v[k] += scale * base[k];
            if (l2_norm(v) >= 1e-6) return l2_normalize(v);
        }
    };

    SyntheticArchives out;
    std::vector<EmbeddingRecord> imitations;
    std::vector<EmbeddingRecord> reals;
    std::vector<EmbeddingRecord> labels;
    for (std::size_t a = 0; a < spec.n_artists; ++a) {
        const auto name = synthetic_artist_name(a);
        out.artists.push_back(name);
        const auto center = random_unit(spec.dim, rng);

        labels.push_back({render_label(spec.label_template, name), RecordKind::text, name, RecordGroup::label,
                          std::nullopt, center});

        char id[64];
        std::snprintf(id, sizeof id, "real-%03zu", a);
        reals.push_back({id, RecordKind::image, name, RecordGroup::real, std::nullopt, noisy(center, 1.0)});

        for (std::size_t t = 0; t < spec.per_artist; ++t) {
            std::snprintf(id, sizeof id, "imitation-%03zu-%03zu", a, t);
            imitations.push_back({id, RecordKind::image, name, RecordGroup::imitation, std::uint64_t{t},
                                  noisy(center, spec.separation)});
        }
    }
    for (const auto& d : spec.default_labels) {
        labels.push_back({d, RecordKind::text, std::nullopt, RecordGroup::label, std::nullopt,
                          random_unit(spec.dim, rng)});
    }
    out.imitations = EmbeddingArchive(std::move(imitations));
    out.real = EmbeddingArchive(std::move(reals));
    out.labels = EmbeddingArchive(std::move(labels));
    return out;
}

}  // namespace artaudit
