#include "support.hpp"

#include <gtest/gtest.h>

using namespace hurwitz;
using namespace hurwitz::testing;

TEST(Ord, Examples)
{
    const auto f = F(2);
    EXPECT_EQ(ord(form(f, "dx/x^2"), Point::infinity()), 0);
    EXPECT_EQ(ord(form(f, "dx/x^2"), Point::at(f->zero())), -2);
    EXPECT_EQ(ord(form(f, "dx/(x^2*(x+1)^2)"), Point::infinity()), 2);
    EXPECT_EQ(ord(form(f, "dx"), Point::infinity()), -2);
    EXPECT_THROW(ord(DifferentialForm::zero(f), Point::infinity()), Error);
}

TEST(Ord, DegreeSumIsMinusTwo)
{
    Random rng(21);
    for (const auto& f : {F(2), F(3), F(5), F4(), F9()}) {
        for (int i = 0; i < 200; ++i) {
            const Poly num = rng.split_denominator(f, 3, 3).scaled(rng.nonzero(f));
            const DifferentialForm w(RatFunc(num, rng.split_denominator(f, 3, 5)));
            int sum = ord(w, Point::infinity());
            for (std::uint32_t c = 0; c < f->size(); ++c) sum += ord(w, Point::at(f->element(c)));
            EXPECT_EQ(sum, -2) << w.to_string();
        }
    }
}

TEST(Cartier, GoldenImages)
{
    const auto f2 = F(2);
    EXPECT_EQ(cartier(form(f2, "dx/(x^3*(x+1)^4)")), form(f2, "dx/(x^2*(x+1)^2)"));
    EXPECT_EQ(cartier(form(f2, "dx/(x^2*(x+1))")), form(f2, "dx/(x*(x+1))"));
    EXPECT_EQ(cartier(form(f2, "dx/(x^2*(x+1))")), form(f2, "dx/(x^2*(x+1))") + form(f2, "dx/x^2"));
    EXPECT_TRUE(cartier(form(f2, "dx/(x^2*(x+1)^2)")).is_zero());
    EXPECT_TRUE(cartier(form(f2, "dx")).is_zero());
    EXPECT_EQ(cartier(form(f2, "dx/x")), form(f2, "dx/x"));
    const auto f3 = F(3);
    EXPECT_EQ(cartier(form(f3, "dx/(x^13*(x-1)^9)")), form(f3, "dx/(x^5*(x-1)^3)"));
    EXPECT_EQ(cartier(form(f3, "dx/(x^2*(x^2-1))")), form(f3, "dx/(x^2*(x^2-1))") + form(f3, "dx/x^2"));
}

TEST(Cartier, PolynomialMonomials)
{
    const auto f = F(3);
    EXPECT_EQ(cartier(form(f, "x^2*dx")), form(f, "dx"));
    EXPECT_EQ(cartier(form(f, "x^5*dx")), form(f, "x*dx"));
    EXPECT_TRUE(cartier(form(f, "x^4*dx")).is_zero());
    const auto f9 = F9();
    // C(c x^2 dx) = c^(1/3) dx
    const Elem g = f9->generator();
    EXPECT_EQ(cartier(DifferentialForm(RatFunc(Poly::monomial(f9, g, 2)))),
              DifferentialForm(RatFunc(Poly::constant(f9, f9->pth_root(g)))));
}

TEST(Cartier, RoutesAgreeWithOracle)
{
    Random rng(22);
    for (const auto& f : {F(2), F(3), F(5), F4(), F8(), F9(), F25()}) {
        for (int i = 0; i < 150; ++i) {
            const DifferentialForm w = rng.split_form(f);
            const DifferentialForm expected = cartier_oracle(w);
            EXPECT_EQ(cartier(w), expected) << w.to_string();
            EXPECT_EQ(cartier_partial_fractions(w), expected) << w.to_string();
        }
    }
}

TEST(Cartier, ExpansionRouteHandlesIrreducibleDenominators)
{
    const auto f = F(3);
    const DifferentialForm w = form(f, "dx/(x*(x^2+1))");
    EXPECT_THROW(cartier_partial_fractions(w), Error);
    // Over F9 the denominator splits, and embedding commutes with C.
    const FieldEmbedding emb(f, F9());
    EXPECT_EQ(embed_form(cartier(w), emb), cartier_partial_fractions(embed_form(w, emb)));
}

TEST(Cartier, SemilinearIdentities)
{
    Random rng(23);
    for (const auto& f : {F(2), F(3), F(5), F9()}) {
        for (int i = 0; i < 100; ++i) {
            const DifferentialForm a = rng.split_form(f, 4, 2, 5);
            const DifferentialForm b = rng.split_form(f, 4, 2, 5);
            EXPECT_EQ(cartier(a + b), cartier(a) + cartier(b));
            const RatFunc h(rng.poly(f, 2), rng.split_denominator(f, 1, 2));
            EXPECT_EQ(cartier(a.times(pow(h, f->p()))), cartier(a).times(h));
            const Elem c = rng.nonzero(f);
            EXPECT_EQ(cartier(a.scaled(f->frobenius(c))), cartier(a).scaled(c));
            const RatFunc g(rng.poly(f, 3), rng.split_denominator(f, 2, 3));
            EXPECT_TRUE(cartier(exterior_derivative(g)).is_zero());
        }
    }
}

TEST(Logarithmic, Examples)
{
    EXPECT_TRUE(is_logarithmic(form(F(2), "dx/(x*(x+1))")));
    EXPECT_FALSE(is_logarithmic(form(F(3), "dx/x^3")));
    EXPECT_THROW(is_logarithmic(DifferentialForm::zero(F(3))), Error);
}

TEST(Dlog, Examples)
{
    const auto f = F(3);
    EXPECT_EQ(dlog(parse_expression(f, "x")), form(f, "dx/x"));
    EXPECT_EQ(dlog(parse_expression(f, "1-1/(2*x^2)")), form(f, "dx/(x*(x^2+1))"));
    EXPECT_EQ(dlog(parse_expression(f, "1-1/x^2")), form(f, "-dx/(x*(x^2-1))"));
    EXPECT_THROW(dlog(RatFunc(f)), Error);
}

TEST(Dlog, LogarithmRuleAndFixedPoint)
{
    Random rng(24);
    for (const auto& f : {F(2), F(3), F(5), F4()}) {
        for (int i = 0; i < 100; ++i) {
            const RatFunc g = rng.nonzero_ratfunc(f, 4);
            const RatFunc h = rng.nonzero_ratfunc(f, 4);
            EXPECT_EQ(dlog(g * h), dlog(g) + dlog(h));
            const DifferentialForm w = dlog(g);
            if (!w.is_zero()) EXPECT_TRUE(is_logarithmic(w)) << w.to_string();
        }
    }
}

TEST(Equidistant, LogarithmicWithSimplePoles)
{
    for (const auto& f : small_fields()) {
        const int p = f->p();
        if (p != 2 && p != 3 && p != 5) continue;
        for (int l = 1; l <= 6; ++l) {
            if (std::gcd(l, p) != 1) continue;
            for (std::uint32_t c = 1; c < f->size(); ++c) {
                const Elem a = f->element(c);
                const Poly xl = Poly::monomial(f, f->one(), l) - Poly::constant(f, a);
                if (!splits(xl)) continue;
                const DifferentialForm w(RatFunc(Poly::constant(f, a), Poly::x(f) * xl));
                EXPECT_TRUE(is_logarithmic(w));
                const PartialFractions pf = partial_fractions(w.coefficient());
                EXPECT_EQ(pf.terms.size(), static_cast<std::size_t>(l + 1));
                for (const auto& t : pf.terms) EXPECT_EQ(t.order, 1);
            }
        }
    }
}
