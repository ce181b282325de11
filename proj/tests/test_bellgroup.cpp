#include <random>

#include <gtest/gtest.h>

#include "hypermoment/bellgroup.hpp"
#include "support/oracles.hpp"

using namespace hypermoment;

namespace {

AdditiveFamily rank1_family(std::vector<Scalar> slopes)
{
    std::map<MultiIndex, Scalar> m;
    for (std::size_t k = 0; k < slopes.size(); ++k)
        m.emplace(MultiIndex{static_cast<MultiIndex::value_type>(k + 1)}, slopes[k]);
    return AdditiveFamily(1, slopes.size(), std::move(m));
}

} // namespace

TEST(AdditiveFamily, RequiresEverySlope)
{
    std::map<MultiIndex, Scalar> slopes{{{1, 0}, Scalar(1)}, {{0, 1}, Scalar(2)}};
    try {
        AdditiveFamily(2, 2, slopes);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IncompleteSeed);
        EXPECT_EQ(e.details().size(), 3u);
    }
    slopes[{0, 0}] = Scalar(1);
    EXPECT_THROW(AdditiveFamily(2, 1, slopes), Error);
}

TEST(AdditiveFamily, IsAdditive)
{
    std::mt19937_64 rng(71);
    const auto a = oracle::random_family(rng, 2, 3);
    for (const auto& [alpha, s] : a.slopes())
        for (std::uint64_t x = 0; x <= 5; ++x)
            for (std::uint64_t y = 0; y <= 5; ++y)
                EXPECT_EQ(a.value(alpha, x + y), a.value(alpha, x) + a.value(alpha, y));
    const GroupExponential m{Scalar::ratio(2, 3)};
    EXPECT_EQ(m(5), m(2) * m(3));
}

TEST(GroupMoment, Examples)
{
    std::mt19937_64 rng(73);
    const auto a = oracle::random_family(rng, 2, 3);
    const GroupExponential m{Scalar::ratio(-3, 2)};
    for (std::uint64_t x = 0; x <= 4; ++x) {
        EXPECT_EQ(group_moment({0, 0}, x, a, m), m(x));
        EXPECT_EQ(group_moment({1, 0}, x, a, m), a.value({1, 0}, x) * m(x));
        EXPECT_EQ(group_moment({0, 1}, x, a, m), a.value({0, 1}, x) * m(x));
    }
    const auto single = rank1_family({Scalar::ratio(5, 3), Scalar(0)});
    for (std::uint64_t x = 0; x <= 4; ++x) {
        const Scalar sx = Scalar::ratio(5, 3) * Scalar(static_cast<unsigned long>(x));
        EXPECT_EQ(group_moment({2}, x, single, GroupExponential{}), sx * sx);
    }
    EXPECT_THROW(group_moment({4}, 1, single, GroupExponential{}), Error);
    EXPECT_THROW(group_moment({1, 0}, 1, single, GroupExponential{}), Error);
}

TEST(Aczel, Examples)
{
    const auto a = rank1_family({Scalar::ratio(2, 3), Scalar(-5), Scalar::ratio(1, 7)});
    for (std::uint64_t x = 0; x <= 5; ++x) {
        EXPECT_EQ(aczel_rank1(0, x, a), Scalar(1));
        EXPECT_EQ(aczel_rank1(1, x, a), a.value({1}, x));
        EXPECT_EQ(aczel_rank1(2, x, a), a.value({1}, x) * a.value({1}, x) + a.value({2}, x));
        // Partitions of 3: 1+1+1, 1+2, 3.
        const Scalar a1 = a.value({1}, x), a2 = a.value({2}, x), a3 = a.value({3}, x);
        EXPECT_EQ(aczel_rank1(3, x, a), a1 * a1 * a1 + Scalar(3) * a1 * a2 + a3);
    }
    EXPECT_THROW(aczel_rank1(4, 1, a), Error);
}

TEST(Aczel, AllOnesGivesBellNumbers)
{
    // With a_k(1) = 1 for every k the partition sum counts set partitions.
    std::vector<Scalar> ones(10, Scalar(1));
    const auto a = rank1_family(ones);
    const long bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
    for (std::uint64_t n = 0; n <= 10; ++n)
        EXPECT_EQ(aczel_rank1(n, 1, a), Scalar(bell[n])) << n;
}

TEST(Aczel, MatchesBellGeneratingFunction)
{
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 5; ++trial) {
        const auto a = oracle::random_family(rng, 1, 8);
        for (std::uint64_t n = 0; n <= 8; ++n)
            for (std::uint64_t x = 0; x <= 10; ++x)
                EXPECT_EQ(aczel_rank1(n, x, a),
                          group_moment(MultiIndex{static_cast<MultiIndex::value_type>(n)}, x, a, GroupExponential{}));
    }
}

TEST(VerifyGroupBinomial, AdditiveFamiliesPass)
{
    std::mt19937_64 rng(83);
    for (const Scalar& q : {Scalar(1), Scalar::ratio(2, 3)}) {
        for (std::size_t r = 1; r <= 2; ++r) {
            const auto a = oracle::random_family(rng, r, 3);
            const auto report = verify_group_binomial(a, GroupExponential{q}, 3, 4);
            EXPECT_TRUE(report.passed());
            EXPECT_EQ(report.checked, 25u * mi_enumerate(r, 3).size());
        }
    }
}

TEST(VerifyGroupBinomial, NonAdditiveFamilyFails)
{
    std::mt19937_64 rng(89);
    const oracle::QuadraticFamily broken{oracle::random_family(rng, 2, 2)};
    const auto report = verify_group_binomial(broken, GroupExponential{}, 2, 3);
    EXPECT_FALSE(report.passed());
}

TEST(PartialBell, EdgeCases)
{
    std::mt19937_64 rng(97);
    const Jet f = oracle::random_jet(rng, 2, 3);
    for (const auto& alpha : mi_enumerate(2, 3)) {
        EXPECT_EQ(partial_bell(f, alpha, 0), alpha.is_zero() ? Scalar(1) : Scalar(0));
        EXPECT_EQ(partial_bell(f, alpha, alpha.degree() + 1), Scalar(0));
    }
}

TEST(FaaDiBruno, Examples)
{
    std::mt19937_64 rng(101);
    const auto h = Hypergroup::catalog("chebyshev1");
    const Jet f = oracle::random_jet(rng, 2, 3);
    for (const auto& alpha : mi_enumerate(2, 3)) {
        if (alpha.is_zero())
            continue;
        const auto p0 = faa_di_bruno_check(h, 0, f, alpha);
        EXPECT_EQ(p0.decomposed, Scalar(0));
        EXPECT_EQ(p0.direct, Scalar(0));
        const auto p1 = faa_di_bruno_check(h, 1, f, alpha);
        EXPECT_EQ(p1.decomposed, partial_at_zero(f, alpha));
        EXPECT_EQ(p1.direct, partial_at_zero(f, alpha));
    }

    const Scalar c = Scalar::ratio(-4, 3);
    Jet linear(1, 2);
    linear.set({0}, Scalar::ratio(2, 5));
    linear.set({1}, c);
    const auto p = faa_di_bruno_check(h, 2, linear, {2});
    EXPECT_EQ(p.decomposed, Scalar(4) * c * c);
    EXPECT_EQ(p.direct, Scalar(4) * c * c);
}

TEST(FaaDiBruno, PairsAgree)
{
    std::mt19937_64 rng(103);
    for (const char* name : {"chebyshev1", "chebyshev2", "legendre"}) {
        const auto h = Hypergroup::catalog(name);
        for (int trial = 0; trial < 3; ++trial) {
            const Jet f = oracle::random_jet(rng, 1 + trial % 2, 3);
            for (std::uint64_t n = 0; n <= 8; ++n)
                for (const auto& alpha : mi_enumerate(f.rank(), 3)) {
                    const auto p = faa_di_bruno_check(h, n, f, alpha);
                    EXPECT_EQ(p.decomposed, p.direct);
                }
        }
    }
}
