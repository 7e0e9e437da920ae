#include <random>

#include <gtest/gtest.h>

#include <pmetric/morphisms.hpp>
#include <pmetric/reflection.hpp>
#include <pmetric/topology.hpp>

#include "oracles.hpp"

using namespace pmetric;

namespace {

Space two_pairs() { return oracle::ints({{0, 0, 1, 1}, {0, 0, 1, 1}, {1, 1, 0, 0}, {1, 1, 0, 0}}); }

} // namespace

TEST(MetricReflection, MetricSpaceIsItsOwnReflection)
{
    Space const m = oracle::ints({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
    Reflection const r = metric_reflection(m);
    EXPECT_EQ(r.quotient, m);
    EXPECT_TRUE(r.projection.is_bijective());
}

TEST(MetricReflection, IndiscreteSpaceCollapsesToAPoint)
{
    Space const z = oracle::ints({{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
    Reflection const r = metric_reflection(z);
    EXPECT_EQ(r.quotient.size(), 1u);
    EXPECT_EQ(r.quotient.label(0), "a");
    EXPECT_EQ(r.projection.images(), (std::vector<std::size_t>{0, 0, 0, 0}));
}

TEST(MetricReflection, TwoClassesAtDistanceOne)
{
    Space const s = two_pairs();
    Reflection const r = metric_reflection(s);
    ASSERT_EQ(r.quotient.size(), 2u);
    EXPECT_EQ(r.quotient.labels(), (std::vector<std::string>{"a", "c"}));
    EXPECT_EQ(r.quotient(0, 1), Dist(1));
    EXPECT_EQ(r.projection.images(), (std::vector<std::size_t>{0, 0, 1, 1}));
    EXPECT_EQ(r.section.images(), (std::vector<std::size_t>{0, 2}));
    // All four cross pairs read the same quotient distance.
    for (std::size_t x : {0u, 1u})
        for (std::size_t y : {2u, 3u})
            EXPECT_EQ(r.quotient(r.projection(x), r.projection(y)), s(x, y));
}

TEST(MetricReflection, EmptySpaceIsRejected)
{
    EXPECT_THROW(metric_reflection(Space()), InputError);
}

TEST(CheckWellDefined, ValidSpacesPass)
{
    for (std::size_t n = 1; n <= 4; ++n)
        for (const Space& s : oracle::all_spaces(n))
            ASSERT_TRUE(check_well_defined(s).ok());
    EXPECT_TRUE(check_well_defined(oracle::ints({{0, 1}, {1, 0}})).ok());
}

TEST(CheckWellDefined, ExhaustiveOnRandomSixPointSpaces)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed)
        ASSERT_TRUE(check_well_defined(oracle::random_small(seed, 6, static_cast<int>(seed % 4))).ok());
}

TEST(CheckWellDefined, CorruptedMatrixHasWitness)
{
    // symmetric, zero diagonal, d(a,b)=0, d(a,c)=1, d(b,c)=2 (triangle fails)
    RawMatrix const m = oracle::raw_ints({{0, 0, 1}, {0, 0, 2}, {1, 2, 0}});
    Report const r = check_well_defined(m);
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(r.has("well-defined", {0, 1, 2}));
    EXPECT_FALSE(validate_pseudometric(m).ok());
}

TEST(ProjectionAsPseudoisometry, Examples)
{
    Space const single = oracle::ints({{0}});
    PointMap const p1 = projection_as_pseudoisometry(single);
    EXPECT_EQ(p1.images(), std::vector<std::size_t>{0});
    EXPECT_TRUE(is_pseudoisometry(p1).ok());

    Space const zeros = oracle::ints({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
    PointMap const p2 = projection_as_pseudoisometry(zeros);
    EXPECT_EQ(p2.images(), (std::vector<std::size_t>{0, 0, 0}));
    EXPECT_TRUE(is_pseudoisometry(p2).ok());

    PointMap const p3 = projection_as_pseudoisometry(two_pairs());
    EXPECT_EQ(p3.images(), (std::vector<std::size_t>{0, 0, 1, 1}));
    EXPECT_TRUE(is_distance_preserving(p3));
    EXPECT_TRUE(is_pseudoisometry(p3).ok());
}

TEST(MetricReflection, Properties)
{
    // every pair for n <= 6; larger spaces sampled
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        std::size_t const n = 1 + seed % 12;
        Space const s = oracle::random_small(seed, n, static_cast<int>(seed % 4), 4);
        Reflection const r = metric_reflection(s);
        ASSERT_TRUE(is_metric(r.quotient));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                ASSERT_EQ(r.quotient(r.projection(x), r.projection(y)), s(x, y));
        for (std::size_t a = 0; a < r.quotient.size(); ++a)
            ASSERT_EQ(r.projection(r.section(a)), a);
        for (std::size_t x = 0; x < n; ++x)
            ASSERT_TRUE(s(r.section(r.projection(x)), x).is_zero());
        Reflection const rr = metric_reflection(r.quotient);
        EXPECT_EQ(rr.quotient, r.quotient);
        EXPECT_EQ(rr.projection, PointMap::identity(r.quotient));
    }
}

TEST(MetricReflection, SequencesCommuteWithProjection)
{
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Space const s = oracle::random_small(seed, 1 + seed % 7, static_cast<int>(seed % 4), 3);
        Reflection const r = metric_reflection(s);
        std::size_t const n = s.size();
        EPSequence seq;
        for (std::size_t k = rng() % 3; k > 0; --k)
            seq.prefix.push_back(rng() % n);
        for (std::size_t k = 1 + rng() % 3; k > 0; --k)
            seq.cycle.push_back(rng() % n);
        EPSequence image;
        for (std::size_t x : seq.prefix)
            image.prefix.push_back(r.projection(x));
        for (std::size_t x : seq.cycle)
            image.cycle.push_back(r.projection(x));
        ASSERT_EQ(is_cauchy(s, seq), is_cauchy(r.quotient, image));
        std::vector<std::size_t> projected;
        for (std::size_t x : limit_points(s, seq).members())
            projected.push_back(r.projection(x));
        ASSERT_EQ(Subset(r.quotient.size(), projected), limit_points(r.quotient, image));
        EXPECT_TRUE(is_complete_subset(s, Subset::all(n)));
        EXPECT_TRUE(is_complete_subset(r.quotient, Subset::all(r.quotient.size())));
    }
}
