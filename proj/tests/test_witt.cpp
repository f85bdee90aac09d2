#include "support.hpp"

#include <gtest/gtest.h>

using namespace hurwitz;
using namespace hurwitz::testing;

namespace {

ReductionType rt(const FieldPtr& f, std::vector<std::string> entries)
{
    std::vector<RatFunc> fs;
    for (const auto& e : entries) fs.push_back(parse_expression(f, e));
    return reduction_type_from_functions(f, fs);
}

// Degree in 1/x of a polynomial in 1/x, -1 for zero.
int udeg(const Poly& g) { return g.is_zero() ? -1 : g.deg(); }

}  // namespace

TEST(Witt, Reducedness)
{
    EXPECT_TRUE(is_reduced(rt(F(2), {"1/x^3", "1/x^5"})));
    EXPECT_FALSE(is_reduced(rt(F(2), {"1/x^4"})));
    EXPECT_TRUE(is_reduced(rt(F(3), {"1/x^7", "2/x^26+1/x^5"})));
    EXPECT_TRUE(is_reduced(rt(F(2), {"1/x^3", "0"})));
}

TEST(Witt, ReducednessInvariantUnderScaling)
{
    Random rng(31);
    for (const auto& f : {F(2), F(3), F4(), F9()}) {
        for (int i = 0; i < 100; ++i) {
            ReductionType r{f, {rng.poly(f, 8), rng.poly(f, 8)}};
            const bool before = is_reduced(r);
            for (auto& e : r.entries) e = e.scaled(rng.nonzero(f));
            EXPECT_EQ(is_reduced(r), before);
        }
    }
}

TEST(Witt, BreaksAndConductors)
{
    const auto f3 = F(3);
    const auto a = rt(f3, {"1/x^7", "1/x^19+1/x"});
    EXPECT_EQ(breaks(a), (std::vector<int>{7, 21}));
    const ConductorData ca = conductors(a);
    EXPECT_EQ(ca.conductors, (std::vector<int>{8, 22}));
    EXPECT_TRUE(ca.minimal[1]);

    const auto b = rt(f3, {"1/x^7", "2/x^26+1/x^5"});
    EXPECT_EQ(breaks(b), (std::vector<int>{7, 26}));
    const ConductorData cb = conductors(b);
    EXPECT_EQ(cb.conductors, (std::vector<int>{8, 27}));
    EXPECT_FALSE(cb.minimal[1]);
    EXPECT_EQ(cb.excess[1], 5);

    const auto c = rt(F(2), {"1/x^3", "1/x^5"});
    EXPECT_EQ(breaks(c), (std::vector<int>{3, 6}));
    const ConductorData cc = conductors(c);
    EXPECT_EQ(cc.conductors, (std::vector<int>{4, 7}));
    EXPECT_TRUE(cc.minimal[1]);
}

TEST(Witt, BreaksFollowTheMaxFormula)
{
    Random rng(32);
    for (const auto& f : {F(2), F(3), F(5)}) {
        const int p = f->p();
        int checked = 0;
        for (int i = 0; i < 400; ++i) {
            std::vector<Poly> entries;
            for (int k = 0; k < 3; ++k) {
                std::vector<Elem> c(rng.uniform(1, 12), f->zero());
                for (std::size_t j = 1; j < c.size(); ++j)
                    if (j % p != 0) c[j] = rng.elem(f);
                entries.push_back(Poly(f, c));
            }
            const ReductionType r{f, entries};
            std::vector<int> expected;
            for (std::size_t k = 0; k < entries.size(); ++k) {
                int m = -1;
                long long pw = 1;
                for (std::size_t l = k + 1; l-- > 0;) {
                    if (udeg(entries[l]) > 0) m = std::max<long long>(m, pw * udeg(entries[l]));
                    pw *= p;
                }
                expected.push_back(m);
            }
            if (std::find(expected.begin(), expected.end(), -1) != expected.end()) continue;
            EXPECT_EQ(breaks(r), expected);
            if (entries.size() == 1) EXPECT_EQ(breaks(r)[0], udeg(entries[0]));
            ++checked;
        }
        EXPECT_GT(checked, 50);
    }
}

TEST(Witt, PthPowerBreakIsMinimal)
{
    const auto r = rt(F(3), {"1/x^2", "1/x^4"});
    EXPECT_EQ(conductors(r).conductors, (std::vector<int>{3, 7}));
    EXPECT_TRUE(conductors(r).minimal[1]);
    try {
        breaks(rt(F(2), {"1/x^4"}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotReduced);
    }
}

TEST(Witt, RootConstantCoefficient)
{
    EXPECT_EQ(root_constant_coefficient(rt(F(3), {"1/x^7", "2/x^26+1/x^5"})), F(3)->from_int(2));
    EXPECT_EQ(root_constant_coefficient(rt(F(2), {"1/x^3", "1/x^5"})), F(2)->one());
    try {
        root_constant_coefficient(rt(F(3), {"1/x^3"}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::LeadingExponentDivisibleByP);
    }
}

TEST(Witt, Prefix)
{
    const auto f = F(2);
    EXPECT_TRUE(is_prefix(rt(f, {"1/x^3"}), rt(f, {"1/x^3", "1/x^5"})));
    EXPECT_FALSE(is_prefix(rt(f, {"1/x^3"}), rt(f, {"1/x^5", "1/x^3"})));
    EXPECT_FALSE(is_prefix(rt(f, {"1/x^3"}), rt(f, {"1/x^3"})));
}
