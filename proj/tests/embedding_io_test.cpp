#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "artaudit/embedding_io.hpp"
#include "artaudit/errors.hpp"
#include "test_support.hpp"

using namespace artaudit;
using namespace artaudit::testing;

namespace {

constexpr const char* kTwoRecords =
    R"({"id":"a1","kind":"image","artist":"Jane Doe","group":"imitation","trial":0,"dim":4,"vector":[0.5,1.0,-2.0,3.25]})"
    "\n"
    R"({"id":"t1","kind":"text","artist":null,"group":"label","trial":null,"dim":4,"vector":[1.0,0.0,0.0,0.0]})"
    "\n";

EmbeddingArchive parse(const std::string& text) {
    std::istringstream in(text);
    return parse_archive(in, "test");
}

std::string error_of(const std::string& text) {
    try {
        parse(text);
    } catch (const AuditError& e) {
        return e.what();
    }
    return "";
}

std::string line(const std::string& id, int dim, const std::string& vec, const std::string& kind = "image",
                 const std::string& group = "imitation") {
    return R"({"id":")" + id + R"(","kind":")" + kind + R"(","artist":"A","group":")" + group +
           R"(","trial":null,"dim":)" + std::to_string(dim) + R"(,"vector":[)" + vec + "]}\n";
}

}  // namespace

TEST(LoadArchive, TwoWellFormedRecords) {
    const auto a = parse(kTwoRecords);
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a.dim(), 4u);
    EXPECT_EQ(a.records()[0].id, "a1");
    EXPECT_EQ(a.records()[0].artist.value(), "Jane Doe");
    EXPECT_EQ(a.records()[0].trial.value(), 0u);
    EXPECT_EQ(a.records()[1].kind, RecordKind::text);
    EXPECT_FALSE(a.records()[1].artist.has_value());
    EXPECT_DOUBLE_EQ(a.records()[0].vector[3], 3.25);
    EXPECT_NE(a.find("t1"), nullptr);
    EXPECT_EQ(a.find("zz"), nullptr);
}

TEST(LoadArchive, DimensionMismatchNamesLine) {
    const auto msg = error_of(line("a", 4, "1,2,3,4") + line("b", 3, "1,2,3"));
    EXPECT_NE(msg.find("test:2:"), std::string::npos) << msg;
    EXPECT_NE(msg.find("dimension mismatch"), std::string::npos) << msg;
}

TEST(LoadArchive, DuplicateId) {
    const auto msg = error_of(line("a1", 2, "1,2") + line("a1", 2, "3,4"));
    EXPECT_NE(msg.find("duplicate id \"a1\""), std::string::npos) << msg;
}

TEST(LoadArchive, RejectsInvalidRecords) {
    EXPECT_NE(error_of(line("z", 2, "0,0")).find("zero vector"), std::string::npos);
    EXPECT_NE(error_of(line("a", 2, "1e999,1")).find("non-finite"), std::string::npos);
    EXPECT_NE(error_of(line("a", 2, "1,2") + "\n" + line("b", 2, "1,2")).find("test:2: blank line"),
              std::string::npos);
    EXPECT_NE(error_of("{not json}\n").find("test:1: malformed"), std::string::npos);
    EXPECT_NE(error_of(line("a", 3, "1,2")).find("components but dim"), std::string::npos);
    EXPECT_NE(error_of(line("a", 2, "1,2", "text", "imitation")).find("group label"), std::string::npos);
    EXPECT_NE(error_of(line("a", 2, "1,2", "image", "bogus")).find("\"group\""), std::string::npos);
    EXPECT_NE(error_of(R"({"id":"a","kind":"image","group":"real","trial":null,"dim":1,"vector":[1]})" "\n")
                  .find("exactly the keys"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"id":"a","kind":"image","artist":null,"group":"real","trial":-1,"dim":1,"vector":[1]})"
                       "\n")
                  .find("\"trial\""),
              std::string::npos);
    EXPECT_NE(error_of(R"({"id":"a","kind":"image","artist":null,"group":"real","trial":null,"dim":0,"vector":[]})"
                       "\n")
                  .find("\"dim\""),
              std::string::npos);
}

TEST(LoadArchive, UnreadableFile) {
    EXPECT_THROW(load_archive("/nonexistent/archive.jsonl"), ValidationError);
}

TEST(LoadArchive, EmptyInputIsEmptyArchive) {
    const auto a = parse("");
    EXPECT_TRUE(a.empty());
    EXPECT_EQ(a.dim(), 0u);
}

TEST(WriteArchive, CanonicalFormIsAFixedPoint) {
    // A canonically formatted file reads and writes back byte-identically.
    std::ostringstream os;
    write_archive(os, parse(kTwoRecords));
    EXPECT_EQ(os.str(), kTwoRecords);
}

TEST(WriteArchive, NonCanonicalInputCanonicalizes) {
    const std::string messy =
        R"({ "vector": [1, 2e0, 0.30000000000000004], "dim": 3, "trial": 7, "group": "real", "artist": "B", "kind": "image", "id": "x" })"
        "\n";
    std::ostringstream first;
    write_archive(first, parse(messy));
    EXPECT_EQ(first.str(),
              R"({"id":"x","kind":"image","artist":"B","group":"real","trial":7,"dim":3,"vector":[1.0,2.0,0.30000000000000004]})"
              "\n");
    std::ostringstream second;
    write_archive(second, parse(first.str()));
    EXPECT_EQ(first.str(), second.str());
}

TEST(WriteArchive, RandomArchivesRoundTripExactly) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> exponent(-300.0, 300.0);
    for (int round = 0; round < 50; ++round) {
        std::vector<EmbeddingRecord> recs;
        for (int i = 0; i < 5; ++i) {
            auto v = random_vector(gen, 8);
            v[0] *= std::pow(10.0, exponent(gen));
            recs.push_back(image_record("r" + std::to_string(i), i % 2 ? std::optional<std::string>("Ä \"q\"") : std::nullopt, v,
                                        RecordGroup::real, i % 3 ? std::optional<std::uint64_t>(i) : std::nullopt));
        }
        const EmbeddingArchive original(recs);
        std::ostringstream os;
        write_archive(os, original);
        const auto back = parse(os.str());
        ASSERT_EQ(back.size(), original.size());
        for (std::size_t i = 0; i < back.size(); ++i) {
            EXPECT_EQ(back.records()[i].vector, original.records()[i].vector);
            EXPECT_EQ(back.records()[i].artist, original.records()[i].artist);
            EXPECT_EQ(back.records()[i].trial, original.records()[i].trial);
        }
        std::ostringstream again;
        write_archive(again, back);
        EXPECT_EQ(os.str(), again.str());
    }
}

TEST(WriteArchive, FileRoundTrip) {
    TempDir dir("io");
    const auto a = parse(kTwoRecords);
    write_archive(dir / "a.jsonl", a);
    EXPECT_EQ(read_text(dir / "a.jsonl"), kTwoRecords);
    EXPECT_EQ(load_archive(dir / "a.jsonl").size(), 2u);
}

TEST(L2Normalize, Examples) {
    const std::vector<double> v{3.0, 4.0};
    const auto u = l2_normalize(v);
    EXPECT_NEAR(u[0], 0.6, 1e-15);
    EXPECT_NEAR(u[1], 0.8, 1e-15);

    const std::vector<double> e{1.0, 0.0, 0.0};
    EXPECT_EQ(l2_normalize(e), e);

    const std::vector<double> zero{0.0, 0.0};
    EXPECT_THROW(l2_normalize(zero), DegenerateError);
    const std::vector<double> tiny{1e-13, 0.0};
    EXPECT_THROW(l2_normalize(tiny), DegenerateError);
}

TEST(L2Normalize, UnitNormIdempotentAndScaleInvariant) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> scale(1e-3, 1e3);
    for (int i = 0; i < 1000; ++i) {
        const auto v = random_vector(gen, 1 + i % 40);
        const auto u = l2_normalize(v);
        EXPECT_NEAR(l2_norm(u), 1.0, 1e-9);
        const auto uu = l2_normalize(u);
        auto scaled = v;
        const double c = scale(gen);
        for (auto& x : scaled) x *= c;
        const auto us = l2_normalize(scaled);
        for (std::size_t k = 0; k < u.size(); ++k) {
            ASSERT_NEAR(uu[k], u[k], 1e-9);
            ASSERT_NEAR(us[k], u[k], 1e-9);
        }
    }
}

TEST(PartitionByGroup, Examples) {
    const EmbeddingArchive mixed({text_record("l", std::nullopt, {1, 0}),
                                  image_record("i1", "A", {1, 1}), image_record("i2", "A", {0, 1})});
    auto parts = partition_by_group(mixed);
    EXPECT_EQ(parts[RecordGroup::label].size(), 1u);
    ASSERT_EQ(parts[RecordGroup::imitation].size(), 2u);
    EXPECT_EQ(parts[RecordGroup::imitation][0]->id, "i1");
    EXPECT_EQ(parts[RecordGroup::imitation][1]->id, "i2");
    EXPECT_TRUE(parts[RecordGroup::real].empty());

    const auto empty = partition_by_group(EmbeddingArchive{});
    EXPECT_EQ(empty.size(), 4u);
    for (const auto& [g, recs] : empty) EXPECT_TRUE(recs.empty());

    const EmbeddingArchive reals({image_record("r1", "A", {1, 0}, RecordGroup::real),
                                  image_record("r2", "B", {0, 1}, RecordGroup::real)});
    auto rp = partition_by_group(reals);
    EXPECT_EQ(rp[RecordGroup::real].size(), 2u);
    EXPECT_TRUE(rp[RecordGroup::imitation].empty());
    EXPECT_TRUE(rp[RecordGroup::label].empty());
    EXPECT_TRUE(rp[RecordGroup::control].empty());
}

TEST(EmbeddingArchive, ConstructorEnforcesInvariants) {
    EXPECT_THROW(EmbeddingArchive({image_record("a", "A", {1, 0}), image_record("a", "A", {0, 1})}),
                 ValidationError);
    EXPECT_THROW(EmbeddingArchive({image_record("a", "A", {1, 0}), image_record("b", "A", {0, 1, 0})}),
                 ValidationError);
    EXPECT_THROW(EmbeddingArchive({image_record("a", "A", {NAN, 0})}), ValidationError);
}
