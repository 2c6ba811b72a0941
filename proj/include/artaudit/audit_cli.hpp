#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "artaudit/report.hpp"
#include "artaudit/stat_kernel.hpp"
#include "artaudit/zeroshot.hpp"

namespace artaudit {

struct AuditConfig {
    double temperature = kDefaultTemperature;
    std::size_t trials = 10;
    bool trials_explicit = false;  // classify checks the archive's trial count only when set
    double alpha = 0.05;
    Alternative alternative = Alternative::less;
    ContinuityCorrection continuity = ContinuityCorrection::half;
    std::uint64_t seed = 0;
    std::vector<std::string> default_labels = default_label_texts();
    std::string label_template{kDefaultTemplate};
    bool timing = false;  // when false, duration_ms is 0 so reports stay byte-stable

    void validate() const;
};

struct AuditInputs {
    std::string imitations;
    std::string labels;
    std::string real;
    std::string names;
    std::optional<std::size_t> n_labels;
    std::size_t count = 70;  // random_name sample size
};

struct SynthOptions {
    std::size_t n_artists = 70;
    std::size_t dim = 64;
    double separation = 50.0;
    std::string out_dir = ".";
};

enum class BaselineKind { random_guess, random_name, random_assignment };
std::optional<BaselineKind> parse_baseline_kind(std::string_view s);
std::string_view to_string(BaselineKind kind);

ordered_json cmd_classify(const AuditInputs& inputs, const AuditConfig& config);
ordered_json cmd_match(const AuditInputs& inputs, const AuditConfig& config);
ordered_json cmd_baseline(BaselineKind kind, const AuditInputs& inputs, const AuditConfig& config);

/// Writes imitations.jsonl, real.jsonl and labels.jsonl into out_dir and
/// returns a report describing the fixture. Per-artist imitation count is
/// config.trials.
ordered_json cmd_synth(const SynthOptions& synth, const AuditConfig& config);

/// Full command line (args[0] is the program name). Returns the exit code:
/// 0 success, 2 usage error, 3 validation error, 4 numeric degeneracy.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace artaudit
