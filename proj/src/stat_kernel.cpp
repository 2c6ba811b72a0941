#include "artaudit/stat_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "artaudit/errors.hpp"

namespace artaudit {

namespace {

void require_finite(std::span<const double> values, const char* what) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw ValidationError(std::string(what) + " contains a non-finite value");
        }
    }
}

void require_nonempty(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) {
        throw ValidationError("rank-sum test needs two non-empty samples");
    }
}

std::vector<double> pooled(std::span<const double> x, std::span<const double> y) {
    std::vector<double> all(x.begin(), x.end());
    all.insert(all.end(), y.begin(), y.end());
    return all;
}

double clamp_p(double p) {
    return std::clamp(p, kPValueFloor, 1.0);
}

}  // namespace

std::string_view to_string(Alternative alt) {
    switch (alt) {
        case Alternative::less: return "less";
        case Alternative::greater: return "greater";
        case Alternative::two_sided: return "two_sided";
    }
    return "less";
}

std::optional<Alternative> parse_alternative(std::string_view s) {
    if (s == "less") return Alternative::less;
    if (s == "greater") return Alternative::greater;
    if (s == "two_sided") return Alternative::two_sided;
    return std::nullopt;
}

std::string_view to_string(ContinuityCorrection cc) {
    return cc == ContinuityCorrection::half ? "half" : "none";
}

std::optional<ContinuityCorrection> parse_continuity(std::string_view s) {
    if (s == "half") return ContinuityCorrection::half;
    if (s == "none") return ContinuityCorrection::none;
    return std::nullopt;
}

std::vector<double> rank_with_ties(std::span<const double> values) {
    if (values.empty()) {
        throw ValidationError("cannot rank an empty sequence");
    }
    require_finite(values, "rank input");

    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        // Positions i+1 .. j; their mean is a half-integer at worst, so exact in double.
        const double avg = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
        i = j;
    }
    return ranks;
}

double mann_whitney_u(std::span<const double> x, std::span<const double> y) {
    require_nonempty(x, y);
    const auto ranks = rank_with_ties(pooled(x, y));
    double rank_sum_x = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) rank_sum_x += ranks[i];
    const double n1 = static_cast<double>(x.size());
    return rank_sum_x - n1 * (n1 + 1.0) / 2.0;
}

RankSumOutcome ranksum_p(std::span<const double> x, std::span<const double> y, Alternative alternative,
                         ContinuityCorrection continuity) {
    require_nonempty(x, y);
    const std::size_t n1 = x.size();
    const std::size_t n2 = y.size();
    const std::size_t n = n1 + n2;
    if (n < 3) {
        throw ValidationError("rank-sum test needs at least 3 observations in total");
    }

    auto all = pooled(x, y);
    const auto ranks = rank_with_ties(all);
    double rank_sum_x = 0.0;
    for (std::size_t i = 0; i < n1; ++i) rank_sum_x += ranks[i];
    const double dn1 = static_cast<double>(n1);
    const double dn2 = static_cast<double>(n2);
    const double dn = static_cast<double>(n);
    const double u = rank_sum_x - dn1 * (dn1 + 1.0) / 2.0;

    std::sort(all.begin(), all.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && all[j] == all[i]) ++j;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    const double variance = dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    if (!(variance > 0.0)) {
        throw DegenerateError("rank-sum variance is zero: all observations are equal");
    }
    const double sigma = std::sqrt(variance);
    const double mean = dn1 * dn2 / 2.0;
    const double shift = continuity == ContinuityCorrection::half ? 0.5 : 0.0;

    // Each tail moves U toward the mean by `shift`, as the exact tail would include the atom at U.
    const double z_less = (u - mean + shift) / sigma;
    const double z_greater = (u - mean - shift) / sigma;
    const double p_less = normal_cdf(z_less);
    const double p_greater = normal_sf(z_greater);

    RankSumOutcome out;
    out.u_statistic = u;
    out.alternative = alternative;
    out.continuity = continuity;
    out.n1 = n1;
    out.n2 = n2;
    out.tie_correction_applied = tie_term > 0.0;
    switch (alternative) {
        case Alternative::less:
            out.z_score = z_less;
            out.p_value = clamp_p(p_less);
            break;
        case Alternative::greater:
            out.z_score = z_greater;
            out.p_value = clamp_p(p_greater);
            break;
        case Alternative::two_sided: {
            const double d = std::max(std::abs(u - mean) - shift, 0.0);
            out.z_score = (u < mean ? -d : d) / sigma;
            out.p_value = clamp_p(2.0 * std::min(p_less, p_greater));
            break;
        }
    }
    return out;
}

double exact_permutation_p(std::span<const double> x, std::span<const double> y, Alternative alternative) {
    require_nonempty(x, y);
    const std::size_t n1 = x.size();
    const std::size_t n = n1 + y.size();
    if (n > kExactEnumerationLimit) {
        throw ValidationError("exact permutation p is limited to " + std::to_string(kExactEnumerationLimit) +
                              " observations, got " + std::to_string(n));
    }
    const auto ranks = rank_with_ties(pooled(x, y));
    const double offset = static_cast<double>(n1) * (static_cast<double>(n1) + 1.0) / 2.0;
    double observed = 0.0;
    for (std::size_t i = 0; i < n1; ++i) observed += ranks[i];
    observed -= offset;

    // Walk every n1-subset of positions in lexicographic order.
    std::vector<std::size_t> pick(n1);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    std::size_t total = 0;
    std::size_t at_or_below = 0;
    std::size_t at_or_above = 0;
    constexpr double eps = 1e-9;
    while (true) {
        double u = -offset;
        for (std::size_t idx : pick) u += ranks[idx];
        ++total;
        if (u <= observed + eps) ++at_or_below;
        if (u >= observed - eps) ++at_or_above;

        std::size_t k = n1;
        while (k > 0 && pick[k - 1] == n - n1 + (k - 1)) --k;
        if (k == 0) break;
        ++pick[k - 1];
        for (std::size_t m = k; m < n1; ++m) pick[m] = pick[m - 1] + 1;
    }

    const double p_less = static_cast<double>(at_or_below) / static_cast<double>(total);
    const double p_greater = static_cast<double>(at_or_above) / static_cast<double>(total);
    switch (alternative) {
        case Alternative::less: return p_less;
        case Alternative::greater: return p_greater;
        case Alternative::two_sided: return std::min(1.0, 2.0 * std::min(p_less, p_greater));
    }
    return p_less;
}

double normal_sf(double z) {
    if (!std::isfinite(z)) {
        throw ValidationError("normal_sf needs a finite argument");
    }
    return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

double normal_cdf(double z) {
    return normal_sf(-z);
}

}  // namespace artaudit
