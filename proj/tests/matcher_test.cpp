#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "artaudit/baseline.hpp"
#include "artaudit/errors.hpp"
#include "artaudit/matcher.hpp"
#include "test_support.hpp"

using namespace artaudit;
using namespace artaudit::testing;

namespace {

/// 2-D unit vector at `angle`; its cosine distance from {1, 0} grows with the angle on [0, pi].
std::vector<double> at_angle(double angle) {
    return {std::cos(angle), std::sin(angle)};
}

struct Groups {
    std::vector<EmbeddingRecord> same;
    std::vector<EmbeddingRecord> other;
    std::vector<const EmbeddingRecord*> same_ptrs;
    std::vector<const EmbeddingRecord*> other_ptrs;
};

/// Imitations placed so the pooled distance ranks of `same` are exactly `same_ranks` (1-based, of 700).
Groups ranked_groups(const std::set<int>& same_ranks) {
    Groups g;
    for (int rank = 1; rank <= 700; ++rank) {
        auto rec = image_record("im" + std::to_string(rank), same_ranks.contains(rank) ? "A" : "B",
                                at_angle(rank * 0.002));
        (same_ranks.contains(rank) ? g.same : g.other).push_back(std::move(rec));
    }
    for (const auto& r : g.same) g.same_ptrs.push_back(&r);
    for (const auto& r : g.other) g.other_ptrs.push_back(&r);
    return g;
}

}  // namespace

TEST(CosineDistance, Examples) {
    const std::vector<double> a{1, 2, 3};
    EXPECT_NEAR(cosine_distance(a, a), 0.0, 1e-15);
    EXPECT_NEAR(cosine_distance(std::vector<double>{1, 0}, std::vector<double>{0, 5}), 1.0, 1e-15);
    EXPECT_NEAR(cosine_distance(a, std::vector<double>{-1, -2, -3}), 2.0, 1e-15);
    EXPECT_THROW(cosine_distance(a, std::vector<double>{1, 2}), ValidationError);
    EXPECT_THROW(cosine_distance(a, std::vector<double>{0, 0, 0}), DegenerateError);
}

TEST(CosineDistanceProperty, SymmetricAndScaleInvariant) {
    std::mt19937_64 gen(61);
    std::uniform_real_distribution<double> log_scale(-5.0, 5.0);
    for (int round = 0; round < 10000; ++round) {
        const std::size_t dim = 2 + round % 30;
        const auto a = random_vector(gen, dim);
        const auto b = random_vector(gen, dim);
        const double d = cosine_distance(a, b);
        ASSERT_GE(d, 0.0);
        ASSERT_LE(d, 2.0);
        ASSERT_EQ(d, cosine_distance(b, a));
        auto sa = a;
        auto sb = b;
        const double ca = std::pow(10.0, log_scale(gen));
        const double cb = std::pow(10.0, log_scale(gen));
        for (auto& x : sa) x *= ca;
        for (auto& x : sb) x *= cb;
        ASSERT_NEAR(cosine_distance(sa, sb), d, 1e-9);
        ASSERT_NEAR(static_cast<double>(1.0L - naive_cosine(a, b)), d, 1e-12);
    }
}

TEST(Bonferroni, Examples) {
    EXPECT_NEAR(bonferroni(0.0005, 70), 0.035, 1e-15);
    EXPECT_EQ(bonferroni(0.5, 70), 1.0);
    EXPECT_EQ(bonferroni(0.01, 1), 0.01);
    EXPECT_THROW(bonferroni(0.0, 3), ValidationError);
    EXPECT_THROW(bonferroni(1.5, 3), ValidationError);
    EXPECT_THROW(bonferroni(NAN, 3), ValidationError);
    EXPECT_THROW(bonferroni(0.5, 0), ValidationError);
}

TEST(BonferroniProperty, MonotoneInPAndM) {
    std::mt19937_64 gen(67);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> fam(1, 500);
    for (int round = 0; round < 10000; ++round) {
        double p1 = std::max(unit(gen), 1e-300);
        double p2 = std::max(unit(gen), 1e-300);
        if (p1 > p2) std::swap(p1, p2);
        std::size_t m1 = fam(gen), m2 = fam(gen);
        if (m1 > m2) std::swap(m1, m2);
        ASSERT_LE(bonferroni(p1, m1), bonferroni(p2, m1));
        ASSERT_LE(bonferroni(p1, m1), bonferroni(p1, m2));
        ASSERT_EQ(bonferroni(p1, 1), p1);
        ASSERT_LE(bonferroni(p2, m2), 1.0);
    }
}

TEST(MatchTest, CompletelySeparatedIsSignificant) {
    std::set<int> first_ten;
    for (int r = 1; r <= 10; ++r) first_ten.insert(r);
    const auto g = ranked_groups(first_ten);
    const auto real = image_record("real", "A", {1, 0}, RecordGroup::real);
    const auto r = match_test(real, g.same_ptrs, g.other_ptrs, {}, 70);
    EXPECT_EQ(r.artist, "A");
    EXPECT_EQ(r.n_same, 10u);
    EXPECT_EQ(r.n_other, 690u);
    EXPECT_EQ(r.u_statistic, 0.0);
    EXPECT_NEAR(r.z_score, -5.434, 1e-3);
    EXPECT_LT(r.p_raw, 1e-7);
    EXPECT_LT(r.p_corrected, 1e-5);
    EXPECT_NEAR(r.p_corrected, 70.0 * r.p_raw, 1e-18);
    EXPECT_TRUE(r.significant);
}

TEST(MatchTest, SymmetricCenterIsNotSignificant) {
    // Pairs (r, 701 - r) put the same-artist rank sum at 5 * 701, so U = n1 n2 / 2.
    std::set<int> ranks;
    for (int r : {1, 100, 200, 300, 340}) {
        ranks.insert(r);
        ranks.insert(701 - r);
    }
    const auto g = ranked_groups(ranks);
    const auto real = image_record("real", "A", {1, 0}, RecordGroup::real);

    MatchOptions exact_center;
    exact_center.continuity = ContinuityCorrection::none;
    const auto r = match_test(real, g.same_ptrs, g.other_ptrs, exact_center, 70);
    EXPECT_EQ(r.u_statistic, 3450.0);
    EXPECT_NEAR(r.p_raw, 0.5, 1e-12);
    EXPECT_EQ(r.p_corrected, 1.0);
    EXPECT_FALSE(r.significant);

    const auto corrected = match_test(real, g.same_ptrs, g.other_ptrs, {}, 70);
    EXPECT_NEAR(corrected.p_raw, 0.5, 1e-3);
    EXPECT_EQ(corrected.p_corrected, 1.0);
    EXPECT_FALSE(corrected.significant);
}

TEST(MatchTest, Errors) {
    const auto real = image_record("real", "A", {1, 0}, RecordGroup::real);
    const auto a = image_record("a", "A", {1, 0.1});
    const auto b = image_record("b", "B", {0, 1});
    const EmbeddingRecord* same[] = {&a};
    const EmbeddingRecord* other[] = {&b, &a};
    const std::vector<const EmbeddingRecord*> none;
    EXPECT_THROW(match_test(real, none, other, {}, 1), ValidationError);
    EXPECT_THROW(match_test(real, same, none, {}, 1), ValidationError);
    EXPECT_THROW(match_test(real, same, other, {}, 1), ValidationError);  // "a" in both groups


    const auto text = text_record("t", "A", {1, 0.1});
    const EmbeddingRecord* same_text[] = {&text};
    const EmbeddingRecord* other_b[] = {&b};
    EXPECT_THROW(match_test(real, same_text, other_b, {}, 1), ValidationError);
}

TEST(MatchTest, AllEqualDistancesAreDegenerate) {
    const auto real = image_record("real", "A", {1, 0}, RecordGroup::real);
    const auto a = image_record("a", "A", {0, 1});
    const auto b = image_record("b", "B", {0, -1});
    const auto c = image_record("c", "B", {0, 2});
    const EmbeddingRecord* same[] = {&a};
    const EmbeddingRecord* other[] = {&b, &c};
    EXPECT_THROW(match_test(real, same, other, {}, 1), DegenerateError);
}

TEST(RunMatchExperiment, SeparableFixtureIsAllSignificant) {
    SyntheticSpec spec;
    const auto fx = synthetic_archive(spec);
    const auto report = run_match_experiment(fx.real, fx.imitations);
    EXPECT_EQ(report.family_size, 70u);
    EXPECT_EQ(report.results.size(), 70u);
    EXPECT_EQ(report.significant_count, 70u);
    EXPECT_EQ(report.results.front().artist, "Artist 000");
    for (const auto& r : report.results) {
        EXPECT_EQ(r.n_same, 10u);
        EXPECT_EQ(r.n_other, 690u);
        EXPECT_EQ(r.u_statistic, 0.0);
    }
}

TEST(RunMatchExperiment, NullFixtureControlsFamilyWiseError) {
    int replicates_with_any = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SyntheticSpec spec;
        spec.separation = 0.0;
        spec.seed = seed;
        const auto fx = synthetic_archive(spec);
        const auto report = run_match_experiment(fx.real, fx.imitations);
        EXPECT_LE(report.significant_count, report.results.size());
        for (const auto& r : report.results) {
            if (r.significant) EXPECT_LT(r.p_raw, report.alpha / report.family_size + 1e-15);
        }
        if (report.significant_count > 0) ++replicates_with_any;
    }
    EXPECT_LE(replicates_with_any, 2);
}

TEST(RunMatchExperiment, ArtistWithoutImitationsIsAnError) {
    const EmbeddingArchive real({image_record("r1", "A", {1, 0}, RecordGroup::real),
                                 image_record("r2", "Lonely", {0, 1}, RecordGroup::real)});
    const EmbeddingArchive imitations({image_record("i1", "A", {1, 0.1}), image_record("i2", "B", {0, 1})});
    try {
        run_match_experiment(real, imitations);
        FAIL() << "expected an error";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("Lonely"), std::string::npos);
    }
}

TEST(RunMatchExperiment, ArtistWithoutRealWorkIsSkippedAndExcludedFromFamily) {
    const EmbeddingArchive real({image_record("r1", "A", {1, 0}, RecordGroup::real),
                                 image_record("r2", "B", {0, 1}, RecordGroup::real)});
    const EmbeddingArchive imitations({image_record("i1", "A", {1, 0.1}), image_record("i2", "A", {1, 0.2}),
                                       image_record("i3", "B", {0.1, 1}), image_record("i4", "C", {1, 1}),
                                       image_record("i5", "C", {-1, 1})});
    const auto report = run_match_experiment(real, imitations);
    EXPECT_EQ(report.family_size, 2u);
    ASSERT_EQ(report.skipped_artists.size(), 1u);
    EXPECT_EQ(report.skipped_artists[0], "C");
    ASSERT_EQ(report.warnings.size(), 1u);
    ASSERT_EQ(report.results.size(), 2u);
    EXPECT_EQ(report.results[0].n_other, 3u);  // C's imitations still count as "other"
}

TEST(RunMatchExperiment, MultipleRealWorksKeepWorstP) {
    std::vector<EmbeddingRecord> ims;
    for (int i = 0; i < 5; ++i) ims.push_back(image_record("a" + std::to_string(i), "A", at_angle(0.01 * (i + 1))));
    for (int i = 0; i < 20; ++i) ims.push_back(image_record("b" + std::to_string(i), "B", at_angle(1.0 + 0.05 * i)));
    const EmbeddingArchive imitations(ims);

    const EmbeddingArchive good({image_record("r1", "A", {1, 0}, RecordGroup::real),
                                 image_record("rb", "B", at_angle(1.5), RecordGroup::real)});
    const EmbeddingArchive mixed({image_record("r1", "A", {1, 0}, RecordGroup::real),
                                  image_record("r2", "A", at_angle(1.0), RecordGroup::real),
                                  image_record("rb", "B", at_angle(1.5), RecordGroup::real)});
    const auto g = run_match_experiment(good, imitations);
    const auto m = run_match_experiment(mixed, imitations);
    EXPECT_EQ(m.results[0].n_real, 2u);
    EXPECT_GT(m.results[0].p_raw, g.results[0].p_raw);

    const EmbeddingArchive second_only({image_record("r2", "A", at_angle(1.0), RecordGroup::real),
                                        image_record("rb", "B", at_angle(1.5), RecordGroup::real)});
    EXPECT_EQ(m.results[0].p_raw, run_match_experiment(second_only, imitations).results[0].p_raw);
}

TEST(RunMatchExperiment, ValidatesInputs) {
    const EmbeddingArchive imitations({image_record("i1", "A", {1, 0}), image_record("i2", "B", {0, 1})});
    EXPECT_THROW(run_match_experiment(EmbeddingArchive{}, imitations), ValidationError);
    const EmbeddingArchive wrong_dim({image_record("r", "A", {1, 0, 0}, RecordGroup::real)});
    EXPECT_THROW(run_match_experiment(wrong_dim, imitations), ValidationError);
    const EmbeddingArchive real({image_record("r", "A", {1, 0}, RecordGroup::real)});
    MatchOptions bad;
    bad.alpha = 1.0;
    EXPECT_THROW(run_match_experiment(real, imitations, bad), ValidationError);
}
