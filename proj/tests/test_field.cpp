#include "support.hpp"

#include <gtest/gtest.h>

using namespace hurwitz;
using namespace hurwitz::testing;

namespace {

// Schoolbook arithmetic on coefficient vectors modulo the field modulus.
std::vector<int> naive_mul(const FieldPtr& f, const std::vector<int>& a, const std::vector<int>& b)
{
    const int p = f->p();
    const int d = f->degree();
    std::vector<int> prod(2 * d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    const auto& m = f->modulus();
    for (int k = 2 * d - 1; k >= d; --k) {
        const int c = prod[k];
        if (c == 0) continue;
        for (int i = 0; i <= d; ++i) prod[k - d + i] = ((prod[k - d + i] - c * m[i]) % p + p) % p;
    }
    prod.resize(d);
    return prod;
}

std::vector<int> padded(const FieldPtr& f, Elem a)
{
    auto c = f->coeffs(a);
    c.resize(f->degree(), 0);
    return c;
}

}  // namespace

TEST(Field, MultiplicationMatchesPolynomialArithmetic)
{
    for (const auto& f : small_fields()) {
        for (std::uint32_t i = 0; i < f->size(); ++i)
            for (std::uint32_t j = 0; j < f->size(); ++j) {
                const Elem a = f->element(i), b = f->element(j);
                EXPECT_EQ(padded(f, f->mul(a, b)), naive_mul(f, padded(f, a), padded(f, b)));
            }
    }
}

TEST(Field, AdditionIsCoefficientwise)
{
    for (const auto& f : small_fields()) {
        for (std::uint32_t i = 0; i < f->size(); ++i)
            for (std::uint32_t j = 0; j < f->size(); ++j) {
                const auto a = padded(f, f->element(i)), b = padded(f, f->element(j));
                std::vector<int> s(a.size());
                for (std::size_t k = 0; k < a.size(); ++k) s[k] = (a[k] + b[k]) % f->p();
                EXPECT_EQ(padded(f, f->add(f->element(i), f->element(j))), s);
            }
    }
}

TEST(Field, InverseAndPower)
{
    for (const auto& f : small_fields()) {
        for (std::uint32_t i = 1; i < f->size(); ++i) {
            const Elem a = f->element(i);
            EXPECT_EQ(f->mul(a, f->inv(a)), f->one());
            EXPECT_EQ(f->pow(a, f->size() - 1), f->one());
            Elem acc = f->one();
            for (int k = 0; k < 5; ++k) acc = f->mul(acc, a);
            EXPECT_EQ(f->pow(a, 5), acc);
        }
    }
}

TEST(Field, PthRootExhaustive)
{
    for (const auto& f : small_fields()) {
        for (std::uint32_t i = 0; i < f->size(); ++i) {
            const Elem a = f->element(i);
            std::vector<Elem> roots;
            for (std::uint32_t j = 0; j < f->size(); ++j) {
                const Elem b = f->element(j);
                Elem bp = f->one();
                for (int k = 0; k < f->p(); ++k) bp = f->mul(bp, b);
                if (bp == a) roots.push_back(b);
            }
            ASSERT_EQ(roots.size(), 1u);
            EXPECT_EQ(f->pth_root(a), roots[0]);
            EXPECT_EQ(f->frobenius(f->pth_root(a)), a);
        }
    }
}

TEST(Field, LthRootsMatchBruteForce)
{
    for (const auto& f : small_fields()) {
        for (int l = 1; l <= 6; ++l)
            for (std::uint32_t i = 0; i < f->size(); ++i) {
                const Elem a = f->element(i);
                std::vector<Elem> expected;
                for (std::uint32_t j = 0; j < f->size(); ++j)
                    if (f->pow(f->element(j), l) == a) expected.push_back(f->element(j));
                EXPECT_EQ(f->lth_roots(a, l), expected);
            }
    }
}

TEST(Field, SquareRootOfTwoInF9)
{
    const auto f = F9();
    const Elem g = f->generator();
    const auto roots = f->lth_roots(f->from_int(2), 2);
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_EQ(roots[0], g);
    EXPECT_EQ(roots[1], f->scale(g, 2));
}

TEST(Field, FiveDoesNotSplitInF3ButFourthRootsOfOneDo)
{
    EXPECT_TRUE(F(3)->lth_roots(F(3)->one(), 4).size() == 2u);
    EXPECT_EQ(F9()->lth_roots(F9()->one(), 4).size(), 4u);
}

TEST(Field, IrreducibilityMatchesRootlessCheckForSmallDegrees)
{
    for (int p : {2, 3, 5}) {
        for (int d = 2; d <= 3; ++d) {
            const auto m = first_irreducible_modulus(p, d);
            ASSERT_EQ(static_cast<int>(m.size()), d + 1);
            EXPECT_EQ(m.back(), 1);
            EXPECT_TRUE(is_irreducible_mod_p(p, m));
            // Degree at most 3: irreducible iff no root in F_p.
            for (int x = 0; x < p; ++x) {
                long long v = 0, pw = 1;
                for (int c : m) {
                    v = (v + c * pw) % p;
                    pw = pw * x % p;
                }
                EXPECT_NE(v, 0);
            }
        }
    }
    EXPECT_FALSE(is_irreducible_mod_p(2, {1, 0, 1}));
    EXPECT_TRUE(is_irreducible_mod_p(2, {1, 1, 1}));
    EXPECT_TRUE(is_irreducible_mod_p(3, {1, 0, 1}));
}

TEST(Field, RejectsReducibleModulus)
{
    try {
        Field::make(2, {1, 0, 1});
        FAIL() << "reducible modulus accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
    }
}

TEST(Field, EmbeddingIsRingHomomorphism)
{
    const auto small = F4();
    const auto big = F16();
    const FieldEmbedding emb(small, big);
    for (std::uint32_t i = 0; i < small->size(); ++i)
        for (std::uint32_t j = 0; j < small->size(); ++j) {
            const Elem a = small->element(i), b = small->element(j);
            EXPECT_EQ(emb(small->add(a, b)), big->add(emb(a), emb(b)));
            EXPECT_EQ(emb(small->mul(a, b)), big->mul(emb(a), emb(b)));
        }
}

TEST(Field, ElementParsingAndPrinting)
{
    const auto f = F9();
    const Elem g = f->generator();
    EXPECT_EQ(parse_element(f, "2*g+1"), f->add(f->scale(g, 2), f->one()));
    EXPECT_EQ(parse_element(f, f->to_string(f->add(g, f->one()))), f->add(g, f->one()));
    EXPECT_EQ(parse_element(F(5), "-1"), F(5)->from_int(4));
}
