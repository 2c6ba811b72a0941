#include "artaudit/audit_cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "artaudit/baseline.hpp"
#include "artaudit/embedding_io.hpp"
#include "artaudit/errors.hpp"
#include "artaudit/matcher.hpp"

namespace artaudit {

namespace {

using Clock = std::chrono::steady_clock;

ordered_json nullable(const std::string& s) {
    return s.empty() ? ordered_json(nullptr) : ordered_json(s);
}

ordered_json nullable(const std::optional<std::string>& s) {
    return s ? ordered_json(*s) : ordered_json(nullptr);
}

ordered_json config_echo(std::string_view command, const AuditInputs& inputs, const AuditConfig& config,
                         std::size_t trials, const SynthOptions* synth = nullptr) {
    ordered_json c;
    c["command"] = command;
    c["temperature"] = config.temperature;
    c["trials"] = trials;
    c["alpha"] = config.alpha;
    c["alternative"] = to_string(config.alternative);
    c["continuity"] = to_string(config.continuity);
    c["seed"] = config.seed;
    c["default_labels"] = config.default_labels;
    c["template"] = config.label_template;
    c["timing"] = config.timing;
    ordered_json in;
    in["imitations"] = nullable(inputs.imitations);
    in["labels"] = nullable(inputs.labels);
    in["real"] = nullable(inputs.real);
    in["names"] = nullable(inputs.names);
    in["n_labels"] = inputs.n_labels ? ordered_json(*inputs.n_labels) : ordered_json(nullptr);
    in["count"] = inputs.count;
    c["inputs"] = std::move(in);
    if (synth != nullptr) {
        ordered_json s;
        s["n_artists"] = synth->n_artists;
        s["dim"] = synth->dim;
        s["separation"] = synth->separation;
        s["out_dir"] = synth->out_dir;
        c["synth"] = std::move(s);
    }
    return c;
}

ordered_json make_report(ordered_json config, std::string_view experiment, ordered_json rows, ordered_json summary,
                         const AuditConfig& cfg, Clock::time_point started) {
    ordered_json r;
    r["version"] = kToolVersion;
    r["config"] = std::move(config);
    r["experiment"] = experiment;
    r["rows"] = rows.is_null() ? ordered_json::array() : std::move(rows);
    r["summary"] = std::move(summary);
    std::uint64_t ms = 0;
    if (cfg.timing) {
        ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started).count());
    }
    r["duration_ms"] = ms;
    validate_report(r);
    return r;
}

const std::string& require_path(const std::string& path, const char* flag) {
    if (path.empty()) {
        throw UsageError(std::string("missing required flag ") + flag);
    }
    return path;
}

std::vector<const EmbeddingRecord*> records_in_group(const EmbeddingArchive& archive, RecordGroup group) {
    std::vector<const EmbeddingRecord*> out;
    for (const auto& rec : archive.records()) {
        if (rec.group == group) out.push_back(&rec);
    }
    return out;
}

std::vector<std::string> label_archive_artists(const EmbeddingArchive& labels) {
    std::vector<std::string> artists;
    for (const auto& rec : labels.records()) {
        if (rec.kind == RecordKind::text && rec.artist) artists.push_back(*rec.artist);
    }
    return artists;
}

struct ClassificationRun {
    LabelSet labels;
    std::vector<TrialResult> trials;
    ClassificationReport report;
};

ClassificationRun run_classification(const EmbeddingArchive& imitation_archive, const EmbeddingArchive& label_archive,
                                     std::span<const std::string> artists, const AuditConfig& config) {
    ClassificationRun run;
    run.labels = build_label_set(artists, config.default_labels, config.label_template, label_archive);
    const auto imitations = records_in_group(imitation_archive, RecordGroup::imitation);
    if (imitations.empty()) {
        throw ValidationError("imitation archive has no imitation records");
    }
    if (imitation_archive.dim() != run.labels.dim()) {
        throw ValidationError("imitation dim " + std::to_string(imitation_archive.dim()) +
                              " does not match label dim " + std::to_string(run.labels.dim()));
    }
    std::map<std::uint64_t, std::vector<const EmbeddingRecord*>> by_trial;
    for (const auto* rec : imitations) by_trial[rec->trial.value_or(0)].push_back(rec);
    if (config.trials_explicit && by_trial.size() != config.trials) {
        throw ValidationError("expected " + std::to_string(config.trials) + " trials, archive has " +
                              std::to_string(by_trial.size()));
    }
    for (const auto& [trial, recs] : by_trial) {
        run.trials.push_back(run_classification_trial(recs, run.labels, config.temperature, trial));
    }
    run.report = aggregate_trials(run.trials);
    return run;
}

ordered_json classification_rows(const ClassificationRun& run) {
    ordered_json rows = ordered_json::array();
    for (const auto& t : run.trials) {
        for (const auto& r : t.results) {
            ordered_json row;
            row["trial"] = t.trial;
            row["image_id"] = r.image_id;
            row["true_artist"] = nullable(r.true_artist);
            row["predicted_label"] = r.predicted_label;
            row["predicted_artist"] = nullable(run.labels.entries()[r.predicted_index].artist);
            row["correct"] = r.correct;
            row["confidence_predicted"] = r.probabilities[r.predicted_index];
            const auto own = r.true_artist ? run.labels.artist_index(*r.true_artist) : std::nullopt;
            row["confidence_true"] = own ? ordered_json(r.probabilities[*own]) : ordered_json(nullptr);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

ordered_json classification_summary(const ClassificationRun& run) {
    const auto& rep = run.report;
    ordered_json s;
    s["n_labels"] = run.labels.size();
    s["n_artist_labels"] = run.labels.size() - static_cast<std::size_t>(std::count_if(
                                                  run.labels.entries().begin(), run.labels.entries().end(),
                                                  [](const LabelEntry& e) { return !e.artist; }));
    s["n_trials"] = rep.trials.size();
    std::size_t predictions = 0;
    double confidence_sum = 0.0;
    for (const auto& t : run.trials) {
        for (const auto& r : t.results) {
            ++predictions;
            if (auto own = run.labels.artist_index(r.true_artist.value_or(""))) {
                confidence_sum += r.probabilities[*own];
            }
        }
    }
    s["n_predictions"] = predictions;
    ordered_json per_trial = ordered_json::array();
    for (std::size_t i = 0; i < rep.trials.size(); ++i) {
        per_trial.push_back({{"trial", rep.trials[i]}, {"accuracy", rep.trial_accuracies[i]}});
    }
    s["trial_accuracies"] = std::move(per_trial);
    s["mean_accuracy"] = rep.mean_accuracy;
    s["chance_accuracy"] = expected_chance_accuracy(run.labels.size());
    // Depends on the temperature; only the argmax-based metrics are scale free.
    s["mean_confidence_true"] = predictions ? confidence_sum / static_cast<double>(predictions) : 0.0;
    s["identified_count"] = rep.identified_count;
    ordered_json plurality = ordered_json::array();
    for (const auto& v : rep.plurality) {
        plurality.push_back({{"artist", v.artist},
                             {"predictions", v.predictions},
                             {"correct_predictions", v.correct_predictions},
                             {"identified", v.identified}});
    }
    s["plurality"] = std::move(plurality);
    ordered_json confusion = ordered_json::array();
    for (const auto& [key, n] : rep.confusion) {
        confusion.push_back({{"artist", key.first}, {"predicted_label", key.second}, {"count", n}});
    }
    s["confusion"] = std::move(confusion);
    return s;
}

ordered_json match_rows(const MatchReport& report) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.results) {
        ordered_json row;
        row["artist"] = r.artist;
        row["n_real"] = r.n_real;
        row["n_same"] = r.n_same;
        row["n_other"] = r.n_other;
        row["u_statistic"] = r.u_statistic;
        row["z_score"] = r.z_score;
        row["p_raw"] = r.p_raw;
        row["p_corrected"] = r.p_corrected;
        row["significant"] = r.significant;
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json match_summary(const MatchReport& report) {
    ordered_json s;
    s["n_tested"] = report.results.size();
    s["family_size"] = report.family_size;
    s["alpha"] = report.alpha;
    s["alternative"] = to_string(report.alternative);
    s["continuity"] = to_string(report.continuity);
    s["significant_count"] = report.significant_count;
    s["significant_fraction"] =
        static_cast<double>(report.significant_count) / static_cast<double>(report.results.size());
    s["skipped_artists"] = report.skipped_artists;
    s["warnings"] = report.warnings;
    return s;
}

MatchOptions match_options(const AuditConfig& config) {
    return {config.alpha, config.alternative, config.continuity};
}

}  // namespace

void AuditConfig::validate() const {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw UsageError("--temperature must be a positive number");
    }
    if (trials == 0) {
        throw UsageError("--trials must be positive");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw UsageError("--alpha must lie in (0, 1)");
    }
    render_label(label_template, "x");
}

std::optional<BaselineKind> parse_baseline_kind(std::string_view s) {
    if (s == "random_guess") return BaselineKind::random_guess;
    if (s == "random_name") return BaselineKind::random_name;
    if (s == "random_assignment") return BaselineKind::random_assignment;
    return std::nullopt;
}

std::string_view to_string(BaselineKind kind) {
    switch (kind) {
        case BaselineKind::random_guess: return "random_guess";
        case BaselineKind::random_name: return "random_name";
        case BaselineKind::random_assignment: return "random_assignment";
    }
    return "random_guess";
}

ordered_json cmd_classify(const AuditInputs& inputs, const AuditConfig& config) {
    const auto started = Clock::now();
    config.validate();
    const auto imitations = load_archive(require_path(inputs.imitations, "--imitations"));
    const auto labels = load_archive(require_path(inputs.labels, "--labels"));
    const auto artists = label_archive_artists(labels);
    const auto run = run_classification(imitations, labels, artists, config);
    return make_report(config_echo("classify", inputs, config, run.trials.size()), "classify",
                       classification_rows(run), classification_summary(run), config, started);
}

ordered_json cmd_match(const AuditInputs& inputs, const AuditConfig& config) {
    const auto started = Clock::now();
    config.validate();
    const auto real = load_archive(require_path(inputs.real, "--real"));
    const auto imitations = load_archive(require_path(inputs.imitations, "--imitations"));
    const auto report = run_match_experiment(real, imitations, match_options(config));
    return make_report(config_echo("match", inputs, config, config.trials), "match", match_rows(report),
                       match_summary(report), config, started);
}

ordered_json cmd_baseline(BaselineKind kind, const AuditInputs& inputs, const AuditConfig& config) {
    const auto started = Clock::now();
    config.validate();
    const std::string experiment = "baseline." + std::string(to_string(kind));
    const auto echo = [&](std::size_t trials) {
        auto c = config_echo("baseline", inputs, config, trials);
        c["baseline"] = to_string(kind);
        return c;
    };

    switch (kind) {
        case BaselineKind::random_guess: {
            if (!inputs.n_labels) {
                throw UsageError("random_guess needs --n-labels");
            }
            const double p = expected_chance_accuracy(*inputs.n_labels);
            ordered_json rows = ordered_json::array();
            rows.push_back({{"n_labels", *inputs.n_labels}, {"expected_accuracy", p}});
            ordered_json s;
            s["n_labels"] = *inputs.n_labels;
            s["expected_accuracy"] = p;
            s["expected_accuracy_percent"] = 100.0 * p;
            return make_report(echo(config.trials), experiment, std::move(rows), std::move(s), config, started);
        }
        case BaselineKind::random_name: {
            const auto pool = load_name_pool(require_path(inputs.names, "--names"));
            SeededRng rng(config.seed);
            const auto names = random_name_labels(pool, inputs.count, rng);
            ordered_json s;
            s["pool_size"] = pool.size();
            s["count"] = names.size();
            s["seed"] = config.seed;
            ordered_json rows = ordered_json::array();
            std::size_t trials_run = config.trials;
            if (inputs.imitations.empty() && inputs.labels.empty()) {
                for (const auto& n : names) {
                    rows.push_back({{"name", n}, {"label", render_label(config.label_template, n)}});
                }
                s["evaluated"] = false;
            } else {
                const auto imitations = load_archive(require_path(inputs.imitations, "--imitations"));
                const auto labels = load_archive(require_path(inputs.labels, "--labels"));
                const auto run = run_classification(imitations, labels, names, config);
                trials_run = run.trials.size();
                for (const auto& v : run.report.plurality) {
                    rows.push_back({{"name", v.artist},
                                    {"label", render_label(config.label_template, v.artist)},
                                    {"predictions", v.predictions},
                                    {"correct_predictions", v.correct_predictions},
                                    {"identified", v.identified}});
                }
                s["evaluated"] = true;
                s["n_labels"] = run.labels.size();
                s["mean_accuracy"] = run.report.mean_accuracy;
                s["names_identified"] = run.report.identified_count;
                s["names_identified_fraction"] = static_cast<double>(run.report.identified_count) /
                                                 static_cast<double>(run.report.plurality.size());
                s["chance_accuracy"] = expected_chance_accuracy(run.labels.size());
            }
            return make_report(echo(trials_run), experiment, std::move(rows), std::move(s), config, started);
        }
        case BaselineKind::random_assignment: {
            const auto real = load_archive(require_path(inputs.real, "--real"));
            const auto imitations = load_archive(require_path(inputs.imitations, "--imitations"));
            std::vector<EmbeddingRecord> real_records;
            for (const auto* rec : records_in_group(real, RecordGroup::real)) real_records.push_back(*rec);
            SeededRng rng(config.seed);
            auto shuffled = random_assignment_control(real_records, rng);
            ordered_json assignment = ordered_json::array();
            for (std::size_t i = 0; i < shuffled.records.size(); ++i) {
                assignment.push_back({{"real_id", real_records[i].id},
                                      {"original_artist", nullable(real_records[i].artist)},
                                      {"assigned_artist", nullable(shuffled.records[i].artist)}});
            }
            const EmbeddingArchive reassigned(std::move(shuffled.records));
            const auto report = run_match_experiment(reassigned, imitations, match_options(config));
            auto s = match_summary(report);
            s["seed"] = config.seed;
            s["assignment"] = std::move(assignment);
            return make_report(echo(config.trials), experiment, match_rows(report), std::move(s), config, started);
        }
    }
    throw UsageError("unknown baseline kind");
}

ordered_json cmd_synth(const SynthOptions& synth, const AuditConfig& config) {
    const auto started = Clock::now();
    config.validate();
    SyntheticSpec spec;
    spec.n_artists = synth.n_artists;
    spec.per_artist = config.trials;
    spec.dim = synth.dim;
    spec.separation = synth.separation;
    spec.seed = config.seed;
    spec.label_template = config.label_template;
    spec.default_labels = config.default_labels;
    const auto fx = synthetic_archive(spec);

    const std::filesystem::path dir(synth.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ValidationError("cannot create output directory " + dir.string());
    }
    auto serialize = [](const EmbeddingArchive& a) {
        std::ostringstream os;
        write_archive(os, a);
        return os.str();
    };
    write_file_atomic(dir / "imitations.jsonl", serialize(fx.imitations));
    write_file_atomic(dir / "real.jsonl", serialize(fx.real));
    write_file_atomic(dir / "labels.jsonl", serialize(fx.labels));

    ordered_json rows = ordered_json::array();
    for (std::size_t a = 0; a < fx.artists.size(); ++a) {
        rows.push_back({{"artist", fx.artists[a]},
                        {"label", render_label(spec.label_template, fx.artists[a])},
                        {"real_id", fx.real.records()[a].id},
                        {"imitations", spec.per_artist}});
    }
    ordered_json s;
    s["n_artists"] = spec.n_artists;
    s["per_artist"] = spec.per_artist;
    s["dim"] = spec.dim;
    s["separation"] = spec.separation;
    s["files"] = {"imitations.jsonl", "real.jsonl", "labels.jsonl"};
    return make_report(config_echo("synth", {}, config, config.trials, &synth), "synth", std::move(rows),
                       std::move(s), config, started);
}

namespace {

struct CliState {
    std::string config_path;
    AuditInputs inputs;
    AuditConfig config;
    SynthOptions synth;
    std::string alternative = "less";
    std::string continuity = "half";
    std::string format = "json";
    std::string out;
    std::string kind;
    std::size_t n_labels = 0;
};

template <typename T>
T echo_get(const ordered_json& obj, const char* key, T fallback) {
    if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw UsageError(std::string("config echo has an invalid \"") + key + "\"");
    }
}

/// Loads a config echo (a report or a bare config object) into `st`.
void apply_echo(const std::string& path, CliState& st) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open config " + path);
    }
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("config " + path + " is not valid JSON: " + e.what());
    }
    const ordered_json c = doc.contains("config") ? doc.at("config") : doc;
    if (!c.is_object()) {
        throw UsageError("config " + path + " is not an object");
    }
    auto& cfg = st.config;
    cfg.temperature = echo_get(c, "temperature", cfg.temperature);
    if (c.contains("trials")) {
        cfg.trials = echo_get<std::size_t>(c, "trials", cfg.trials);
        cfg.trials_explicit = true;
    }
    cfg.alpha = echo_get(c, "alpha", cfg.alpha);
    st.alternative = echo_get(c, "alternative", st.alternative);
    st.continuity = echo_get(c, "continuity", st.continuity);
    cfg.seed = echo_get<std::uint64_t>(c, "seed", cfg.seed);
    cfg.default_labels = echo_get(c, "default_labels", cfg.default_labels);
    cfg.label_template = echo_get(c, "template", cfg.label_template);
    cfg.timing = echo_get(c, "timing", cfg.timing);
    if (c.contains("inputs") && c.at("inputs").is_object()) {
        const auto& in_obj = c.at("inputs");
        st.inputs.imitations = echo_get(in_obj, "imitations", st.inputs.imitations);
        st.inputs.labels = echo_get(in_obj, "labels", st.inputs.labels);
        st.inputs.real = echo_get(in_obj, "real", st.inputs.real);
        st.inputs.names = echo_get(in_obj, "names", st.inputs.names);
        if (in_obj.contains("n_labels") && !in_obj.at("n_labels").is_null()) {
            st.inputs.n_labels = echo_get<std::size_t>(in_obj, "n_labels", 0);
        }
        st.inputs.count = echo_get(in_obj, "count", st.inputs.count);
    }
    if (c.contains("synth") && c.at("synth").is_object()) {
        const auto& s = c.at("synth");
        st.synth.n_artists = echo_get(s, "n_artists", st.synth.n_artists);
        st.synth.dim = echo_get(s, "dim", st.synth.dim);
        st.synth.separation = echo_get(s, "separation", st.synth.separation);
        st.synth.out_dir = echo_get(s, "out_dir", st.synth.out_dir);
    }
    st.kind = echo_get(c, "baseline", st.kind);
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Audit a generative model's capacity to imitate individual artists from embedding archives",
                 "artaudit"};
    app.require_subcommand(1);

    // Flag values land in `flags`; after parsing they are layered over the
    // defaults, then over any --config echo, then explicitly given flags win.
    CliState flags;
    std::vector<std::string> default_labels;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", flags.config_path, "Re-use the config echo of an earlier report");
        sub->add_option("--out", flags.out, "Report output path")->required();
        sub->add_option("--format", flags.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--temperature", flags.config.temperature, "Logit scale applied to cosine similarities");
        sub->add_option("--trials", flags.config.trials, "Trial count (classify: required count; synth: per artist)");
        sub->add_option("--alpha", flags.config.alpha, "Family-wise significance level");
        sub->add_option("--alternative", flags.alternative, "less | greater | two_sided");
        sub->add_option("--continuity", flags.continuity, "Rank-sum continuity correction: half | none");
        sub->add_option("--seed", flags.config.seed, "Seed for baselines and fixtures");
        sub->add_option("--template", flags.config.label_template, "Artist label template containing {artist}");
        sub->add_option("--default-label", default_labels, "Default label text (repeatable)");
        sub->add_flag("--timing", flags.config.timing, "Record wall-clock duration in the report");
        sub->add_option("--imitations", flags.inputs.imitations, "Imitation archive");
        sub->add_option("--labels", flags.inputs.labels, "Label text-embedding archive");
        sub->add_option("--real", flags.inputs.real, "Real-artwork archive");
        sub->add_option("--names", flags.inputs.names, "Name pool, one name per line");
        sub->add_option("--n-labels", flags.n_labels, "Label count for the random-guess baseline");
        sub->add_option("--count", flags.inputs.count, "Number of random names to draw");
    };

    auto* classify = app.add_subcommand("classify", "Zero-shot classify imitations back to artist labels");
    add_common(classify);
    auto* match = app.add_subcommand("match", "Rank-sum match real work to same- vs other-artist imitations");
    add_common(match);
    auto* baseline = app.add_subcommand("baseline", "random_guess | random_name | random_assignment");
    add_common(baseline);
    baseline->add_option("kind", flags.kind, "Baseline kind")->required();
    auto* synth = app.add_subcommand("synth", "Generate a Gaussian-cluster fixture");
    add_common(synth);
    synth->add_option("--n-artists", flags.synth.n_artists, "Number of synthetic artists");
    synth->add_option("--dim", flags.synth.dim, "Embedding dimension");
    synth->add_option("--separation", flags.synth.separation, "Imitation cluster separation");
    synth->add_option("--out-dir", flags.synth.out_dir, "Directory for the generated archives");

    std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(argv_tail.begin(), argv_tail.end());
    try {
        app.parse(argv_tail);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return static_cast<int>(ErrorKind::usage);
    }

    CLI::App* sub = app.get_subcommands().front();
    const auto given = [&](const char* name) { return sub->count(name) > 0; };

    try {
        CliState st;
        if (!flags.config_path.empty()) {
            apply_echo(flags.config_path, st);
        }
        if (given("--temperature")) st.config.temperature = flags.config.temperature;
        if (given("--trials")) {
            st.config.trials = flags.config.trials;
            st.config.trials_explicit = true;
        }
        if (given("--alpha")) st.config.alpha = flags.config.alpha;
        if (given("--alternative")) st.alternative = flags.alternative;
        if (given("--continuity")) st.continuity = flags.continuity;
        if (given("--seed")) st.config.seed = flags.config.seed;
        if (given("--template")) st.config.label_template = flags.config.label_template;
        if (given("--default-label")) st.config.default_labels = default_labels;
        if (given("--timing")) st.config.timing = flags.config.timing;
        if (given("--imitations")) st.inputs.imitations = flags.inputs.imitations;
        if (given("--labels")) st.inputs.labels = flags.inputs.labels;
        if (given("--real")) st.inputs.real = flags.inputs.real;
        if (given("--names")) st.inputs.names = flags.inputs.names;
        if (given("--n-labels")) st.inputs.n_labels = flags.n_labels;
        if (given("--count")) st.inputs.count = flags.inputs.count;
        if (given("--format")) st.format = flags.format;
        if (sub == synth) {
            if (given("--n-artists")) st.synth.n_artists = flags.synth.n_artists;
            if (given("--dim")) st.synth.dim = flags.synth.dim;
            if (given("--separation")) st.synth.separation = flags.synth.separation;
            if (given("--out-dir")) st.synth.out_dir = flags.synth.out_dir;
        }
        if (sub == baseline) st.kind = flags.kind;

        const auto alt = parse_alternative(st.alternative);
        if (!alt) throw UsageError("--alternative must be less, greater or two_sided");
        st.config.alternative = *alt;
        const auto cc = parse_continuity(st.continuity);
        if (!cc) throw UsageError("--continuity must be half or none");
        st.config.continuity = *cc;
        const auto format = st.format == "csv" ? ReportFormat::csv : ReportFormat::json;

        ordered_json report;
        if (sub == classify) {
            report = cmd_classify(st.inputs, st.config);
        } else if (sub == match) {
            report = cmd_match(st.inputs, st.config);
        } else if (sub == baseline) {
            const auto kind = parse_baseline_kind(st.kind);
            if (!kind) throw UsageError("unknown baseline kind \"" + st.kind + "\"");
            report = cmd_baseline(*kind, st.inputs, st.config);
        } else {
            report = cmd_synth(st.synth, st.config);
        }
        write_report(flags.out, report, format);
        return 0;
    } catch (const AuditError& e) {
        err << "artaudit: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "artaudit: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::validation);
    }
}

}  // namespace artaudit
