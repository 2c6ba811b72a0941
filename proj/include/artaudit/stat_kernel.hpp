#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace artaudit {

/// Direction of a rank-sum test. `less` means the first sample is
/// stochastically smaller (for distances: more similar).
enum class Alternative { less, greater, two_sided };

/// Half-unit shift of U toward its mean before the normal approximation.
enum class ContinuityCorrection { none, half };

std::string_view to_string(Alternative alt);
std::optional<Alternative> parse_alternative(std::string_view s);
std::string_view to_string(ContinuityCorrection cc);
std::optional<ContinuityCorrection> parse_continuity(std::string_view s);

struct RankSumOutcome {
    double u_statistic = 0.0;
    double z_score = 0.0;
    double p_value = 1.0;
    Alternative alternative = Alternative::less;
    ContinuityCorrection continuity = ContinuityCorrection::half;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    bool tie_correction_applied = false;
};

/// Smallest p-value ever reported.
inline constexpr double kPValueFloor = 1e-300;

/// 1-based ranks; tied values share the mean of the positions they occupy.
std::vector<double> rank_with_ties(std::span<const double> values);

/// U = #{(i,j): x_i > y_j} + 0.5 #{(i,j): x_i = y_j}.
double mann_whitney_u(std::span<const double> x, std::span<const double> y);

/// Normal approximation to the rank-sum test with tie-corrected variance:
///
///   sigma^2 = n1 n2 / 12 * ((n + 1) - sum(t^3 - t) / (n (n - 1)))
///
/// With ContinuityCorrection::half, U is moved 0.5 toward n1 n2 / 2 before
/// standardizing. Throws DegenerateError when sigma = 0 (all values equal).
RankSumOutcome ranksum_p(std::span<const double> x, std::span<const double> y,
                         Alternative alternative = Alternative::less,
                         ContinuityCorrection continuity = ContinuityCorrection::half);

/// Largest combined sample size exact_permutation_p will enumerate.
inline constexpr std::size_t kExactEnumerationLimit = 20;

/// Exact p-value over all C(n1 + n2, n1) relabelings of the pooled sample.
/// Ties in U count fully toward the tail. Two-sided is 2 * min(tails), capped at 1.
double exact_permutation_p(std::span<const double> x, std::span<const double> y,
                           Alternative alternative = Alternative::less);

/// Upper tail of the standard normal, P(Z > z).
double normal_sf(double z);

/// Lower tail of the standard normal, P(Z <= z).
double normal_cdf(double z);

}  // namespace artaudit
