#include "support.hpp"

#include <gtest/gtest.h>

using namespace hurwitz;
using namespace hurwitz::testing;

namespace {

std::string data(const std::string& name) { return std::string(HURWITZ_DATA_DIR) + "/" + name; }

std::vector<std::uint32_t> codes(const Poly& f)
{
    std::vector<std::uint32_t> out;
    for (Elem a : f.coeffs()) out.push_back(a.code);
    return out;
}

std::vector<Poly> monic_polys(const FieldPtr& f, int deg)
{
    std::vector<Poly> out;
    std::uint64_t total = 1;
    for (int i = 0; i < deg; ++i) total *= f->size();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<Elem> c(deg + 1);
        std::uint64_t w = idx;
        for (int i = 0; i < deg; ++i) {
            c[i] = f->element(static_cast<std::uint32_t>(w % f->size()));
            w /= f->size();
        }
        c[deg] = f->one();
        out.emplace_back(f, c);
    }
    return out;
}

// Exhaustive search over every scalar and every monic cofactor of the right degree.
std::optional<DifferentialForm> naive_solve(const DifferentialForm& prev, int m_n, CartierVariant variant, bool split_only,
                                            int* count = nullptr)
{
    const FieldPtr& f = prev.field();
    const int p = f->p();
    const auto shape = canonical_shape(prev);
    Poly B = prev.coefficient().den();
    int N = m_n - (B.deg() - 1);
    if (variant == CartierVariant::SECTION) {
        B = Poly::constant(f, f->one());
        const Elem first = shape->poles.front().first;
        for (const auto& [e, l] : shape->poles) B *= pow(Poly::linear(f, e), e == first ? p * l - p + 1 : p * l);
        N = m_n + 1 - B.deg();
    }
    if (N < 0) return std::nullopt;
    std::optional<std::pair<std::vector<std::uint32_t>, std::uint32_t>> best;
    std::optional<DifferentialForm> out;
    int hits = 0;
    for (const Poly& Z : monic_polys(f, N)) {
        if (!is_squarefree(Z) || gcd(Z, B).deg() != 0) continue;
        if (split_only && Z.deg() > 0 && !splits_squarefree(Z)) continue;
        for (std::uint32_t c = 1; c < f->size(); ++c) {
            const DifferentialForm w(RatFunc(Poly::constant(f, f->element(c)), B * Z));
            const DifferentialForm image = split_only ? cartier_oracle(w) : cartier(w);
            const bool ok = variant == CartierVariant::FIXED_PLUS ? image == w + prev : image == prev;
            if (!ok) continue;
            ++hits;
            const auto key = std::make_pair(codes(Z), c);
            if (!best || key < *best) {
                best = key;
                out = w;
            }
        }
    }
    if (count) *count = hits;
    return out;
}

HurwitzTree tree_with_critical_vertex()
{
    auto t = load_tree(data("two_branch_z2.json"));
    t.edges[0].thickness = Rational(1, 3);
    t.find_vertex("v1")->depth = 1;
    t.edges[1].thickness = 1;
    t.edges[2].thickness = 1;
    return t;
}

}  // namespace

TEST(Classify, Examples)
{
    const auto f2 = F(2), f3 = F(3);
    EXPECT_EQ(classify_level_pair(2, Rational(1, 2), form(f2, "dx/(x^2*(x+1)^2)"), 1, form(f2, "dx/(x^3*(x+1)^4)")).tag,
              LevelCase::CASE3a);
    EXPECT_EQ(classify_level_pair(2, 1, form(f2, "dx/x^2"), 2, form(f2, "dx/(x^2*(x+1))")).tag, LevelCase::CASE3d);
    EXPECT_EQ(classify_level_pair(3, Rational(3, 2), form(f3, "dx/x^3"), Rational(5, 2), form(f3, "-dx/x^3")).tag,
              LevelCase::CASE2);
    EXPECT_EQ(classify_level_pair(3, Rational(1, 2), form(f3, "dx/x^2"), Rational(3, 2), form(f3, "dx/(x^2*(x^2-1))")).tag,
              LevelCase::CASE3d);
    const auto bad = classify_level_pair(2, 1, form(f2, "dx/x^2"), 3, form(f2, "dx/x^2"));
    EXPECT_FALSE(bad.ok());
    EXPECT_FALSE(bad.reason.empty());
}

TEST(Classify, LevelOne)
{
    EXPECT_EQ(classify_level_one(2, 2, form(F(2), "dx/(x*(x+1))")).tag, LevelCase::L1_MAX);
    EXPECT_EQ(classify_level_one(2, Rational(1, 2), form(F(2), "dx/(x^2*(x+1)^2)")).tag, LevelCase::L1_SUB);
    EXPECT_FALSE(classify_level_one(2, 2, form(F(2), "dx/x^2")).ok());
}

TEST(Classify, SemilinearScalingPreservesCase3a)
{
    const auto f = F9();
    const DifferentialForm lo = form(f, "dx/(x^5*(x-1)^3)");
    const DifferentialForm hi = form(f, "dx/(x^13*(x-1)^9)");
    for (std::uint32_t c = 1; c < f->size(); ++c) {
        const Elem s = f->element(c);
        const auto v = classify_level_pair(3, Rational(1, 4), lo.scaled(s), Rational(3, 4), hi.scaled(f->frobenius(s)));
        EXPECT_EQ(v.tag, LevelCase::CASE3a);
    }
}

TEST(CheckExtension, ReconstructedPairPasses)
{
    const auto lo = load_tree(data("table1_t1.json"));
    const auto hi = load_tree(data("table1_t2.json"));
    const auto map = parse_vertex_map(read_file(data("table1_map.json")));
    const auto rep = check_extension(lo, hi, map);
    EXPECT_TRUE(rep.ok()) << serialize_report(rep);
}

TEST(CheckExtension, TreeAgainstItselfFails)
{
    const auto t = load_tree(data("minimal_z2.json"));
    VertexMap map;
    for (const auto& v : t.vertices) map.vertices.emplace_back(v.id, v.id);
    for (const auto& b : t.leaves) map.leaves.emplace_back(b.id, b.id);
    EXPECT_TRUE(check_extension(t, t, map).has_clause("EXT3"));
}

TEST(CheckExtension, NewBranchWithFullMonodromyFails)
{
    const auto lo = load_tree(data("table1_t1.json"));
    auto hi = load_tree(data("table1_t2.json"));
    hi.find_vertex("u3")->monodromy = 2;
    for (auto& b : hi.leaves)
        if (b.vertex == "u3") b.index = 2;
    const auto map = parse_vertex_map(read_file(data("table1_map.json")));
    EXPECT_TRUE(check_extension(lo, hi, map).has_clause("EXT4"));
}

TEST(CheckExtension, WrongRootReductionFails)
{
    const auto lo = load_tree(data("table1_t1.json"));
    auto hi = load_tree(data("table1_t2.json"));
    const auto f = hi.field;
    hi.reduction_type->entries[0] = Poly(f, {f->zero(), f->zero(), f->zero(), f->zero(), f->zero(), f->one()});
    const auto map = parse_vertex_map(read_file(data("table1_map.json")));
    EXPECT_FALSE(check_extension(lo, hi, map).ok());
}

TEST(Solver, FixedPlusExample)
{
    const auto f = F(2);
    const auto w = solve_cartier(form(f, "dx/x^2"), 2, CartierVariant::FIXED_PLUS);
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, form(f, "dx/(x^2*(x+1))"));
}

TEST(Solver, SectionExample)
{
    const auto f = F(3);
    const auto w = solve_cartier(form(f, "dx/(x^5*(x-1)^3)"), 21, CartierVariant::SECTION);
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, form(f, "dx/(x^13*(x-1)^9)"));
    EXPECT_EQ(cartier(*w), form(f, "dx/(x^5*(x-1)^3)"));
}

TEST(Solver, CubicCofactorOverF3)
{
    const auto f = F(3);
    const DifferentialForm prev = form(f, "dx/x^3");
    // x^3 - x^2 + 1 is irreducible over F3, and the form it gives misses the identity.
    const DifferentialForm candidate = form(f, "dx/(x^3*(x^3-x^2+1))");
    EXPECT_NE(cartier(candidate), candidate + prev);
    EXPECT_EQ(cartier(candidate), form(f, "(x+1)*dx/(x*(x^3+2*x^2+1))"));

    int count = 0;
    const auto expected = naive_solve(prev, 5, CartierVariant::FIXED_PLUS, false, &count);
    ASSERT_TRUE(expected);
    EXPECT_EQ(count, 2);
    EXPECT_EQ(*expected, form(f, "-dx/(x^3*(x-1)*(x^2+2*x+2))"));
    const auto w = solve_cartier(prev, 5, CartierVariant::FIXED_PLUS);
    ASSERT_TRUE(w);
    EXPECT_EQ(*w, *expected);
}

TEST(Solver, EmptyWhenNoNewPoles)
{
    // N = 0 needs C(c dx/x^4) = c^(1/3) dx/x^2 to equal (c + 1) dx/x^4.
    EXPECT_FALSE(solve_cartier(form(F(3), "dx/x^4"), 3, CartierVariant::FIXED_PLUS));
    // c = -1 turns dx/x^3 into a trivial solution: both sides vanish.
    EXPECT_EQ(solve_cartier(form(F(3), "dx/x^3"), 2, CartierVariant::FIXED_PLUS), form(F(3), "-dx/x^3"));
}

TEST(Solver, MatchesExhaustiveSearch)
{
    struct Case {
        FieldPtr f;
        std::string prev;
        int max_n;
    };
    const std::vector<Case> cases{
        {F(2), "dx/x^2", 3},          {F(2), "dx/x^3", 4},         {F(2), "dx/(x^2*(x+1)^2)", 5},
        {F(2), "dx/(x^2*(x+1))", 4},  {F4(), "dx/x^2", 3},         {F4(), "dx/x^3", 4},
        {F(3), "dx/x^2", 4},          {F(3), "2*dx/x^3", 5},       {F(3), "dx/(x^2*(x-1)^2)", 5},
        {F(3), "-dx/(x^2*(x-1)^3)", 6}, {F9(), "dx/x^2", 2},       {F(5), "dx/x^2", 3},
    };
    int compared = 0;
    for (const auto& c : cases) {
        const DifferentialForm prev = form(c.f, c.prev);
        const int m_prev = prev.coefficient().den().deg() - 1;
        for (int m_n = m_prev; m_n <= c.max_n; ++m_n) {
            for (bool split : {false, true}) {
                SolverOptions opts;
                opts.split_only = split;
                const auto got = solve_cartier(prev, m_n, CartierVariant::FIXED_PLUS, opts);
                const auto want = naive_solve(prev, m_n, CartierVariant::FIXED_PLUS, split);
                EXPECT_EQ(got.has_value(), want.has_value()) << c.prev << " m_n=" << m_n;
                if (got && want) EXPECT_EQ(*got, *want) << c.prev << " m_n=" << m_n;
                ++compared;
            }
        }
    }
    EXPECT_GT(compared, 40);
}

TEST(Solver, SectionMatchesExhaustiveSearch)
{
    const auto f = F(3);
    for (const std::string prev_text : {"dx/x^2", "dx/(x^2*(x-1)^2)", "dx/x^3"}) {
        const DifferentialForm prev = form(f, prev_text);
        const int base = 3 * (prev.coefficient().den().deg()) - 3;
        for (int m_n = base; m_n <= base + 2; ++m_n) {
            const auto got = solve_cartier(prev, m_n, CartierVariant::SECTION);
            const auto want = naive_solve(prev, m_n, CartierVariant::SECTION, false);
            EXPECT_EQ(got.has_value(), want.has_value()) << prev_text << " " << m_n;
            if (got && want) EXPECT_EQ(*got, *want);
        }
    }
}

TEST(Solver, WorkersDoNotChangeTheAnswer)
{
    const auto f = F9();
    const DifferentialForm prev = form(f, "dx/(x^2*(x-1)^2)");
    SolverOptions one, many;
    many.workers = 4;
    for (int m_n = 3; m_n <= 6; ++m_n) {
        const auto a = solve_cartier(prev, m_n, CartierVariant::FIXED_PLUS, one);
        const auto b = solve_cartier(prev, m_n, CartierVariant::FIXED_PLUS, many);
        EXPECT_EQ(a.has_value(), b.has_value());
        if (a && b) EXPECT_EQ(*a, *b);
    }
}

TEST(Solver, CeilingRaisesSearchFailed)
{
    SolverOptions opts;
    opts.ceiling = 10;
    try {
        solve_cartier(form(F9(), "dx/x^2"), 6, CartierVariant::FIXED_PLUS, opts);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SearchFailed);
    }
}

TEST(Partition, GoldenAndProperties)
{
    const auto [e1, e2] = partition_trunk(6, 3, 5, 2, 1);
    EXPECT_EQ(e1, Rational(1, 6));
    EXPECT_EQ(e2, Rational(5, 6));
    EXPECT_EQ(Rational(15), Rational(14) * e2 + Rational(20) * e1);

    const auto [a1, a2] = partition_trunk(4, 3, 2, 2, 1);
    EXPECT_GT(a1, 0);
    EXPECT_GT(a2, 0);
    EXPECT_EQ(a1 + a2, Rational(1));

    const auto [s1, s2] = partition_trunk(6, 3, 5, 2, Rational(7, 3));
    EXPECT_EQ(s1, e1 * Rational(7, 3));
    EXPECT_EQ(s2, e2 * Rational(7, 3));
}

TEST(Partition, NonPositiveSplitIsRejected)
{
    try {
        split_segment(10, 12, 11, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonPositiveSolution);
    }
}

TEST(EquidistantParameter, Examples)
{
    const auto f3 = F(3);
    EXPECT_EQ(solve_equidistant_parameter(f3, f3->one(), f3->one(), 0), f3->one());

    const auto f4 = F4();
    const Elem g2 = f4->pow(f4->generator(), 2);
    std::vector<Elem> brute;
    for (std::uint32_t c = 1; c < f4->size(); ++c)
        if (f4->pow(f4->element(c), 4) == g2) brute.push_back(f4->element(c));
    ASSERT_EQ(brute.size(), 1u);
    EXPECT_EQ(solve_equidistant_parameter(f4, g2, f4->one(), 1), brute[0]);

    try {
        solve_equidistant_parameter(f3, f3->from_int(2), f3->one(), 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NoRootInField);
        EXPECT_EQ(e.detail(), 6);
    }
}

TEST(Extend, EquidistantRootOverF4)
{
    const auto f = F4();
    const auto prev = make_equidistant(f, 3, f->one(), 0, 0, "v");
    ExtensionTarget target;
    target.mode = TargetMode::MINIMAL;
    const auto res = extend_tree(prev, target);
    EXPECT_EQ(res.tree.conductor(), 7);
    EXPECT_EQ(res.tree.leaves.size(), 7u);
    EXPECT_TRUE(validate(res.tree).ok()) << serialize_report(validate(res.tree));
    EXPECT_TRUE(check_compatibility(res.tree).ok());
    EXPECT_TRUE(check_extension(res.source, res.tree, res.map).ok()) << serialize_report(check_extension(res.source, res.tree, res.map));
    EXPECT_TRUE(is_prefix(*prev.reduction_type, *res.tree.reduction_type));
}

TEST(Extend, CriticalDepthVertexIsRejected)
{
    const auto t = tree_with_critical_vertex();
    ASSERT_TRUE(validate(t).ok()) << serialize_report(validate(t));
    try {
        extend_tree(t, ExtensionTarget{});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
    }
}

TEST(Extend, ExampleShapedTreeGeneral)
{
    const auto prev = load_tree(data("exp3_t1.json"));
    const auto target = parse_target(read_file(data("exp3_target_general.json")), prev.field);
    ExtendOptions opts;
    opts.max_field_degree = 4;
    const auto res = extend_tree(prev, target, opts);
    EXPECT_EQ(res.tree.conductor(), 27);
    EXPECT_TRUE(validate(res.tree).ok());
    EXPECT_TRUE(check_compatibility(res.tree).ok());
    EXPECT_TRUE(check_extension(res.source, res.tree, res.map).ok());
    EXPECT_TRUE(is_prefix(*res.source.reduction_type, *res.tree.reduction_type));
    EXPECT_EQ(conductors(*res.tree.reduction_type).conductors, (std::vector<int>{8, 27}));
}

TEST(Extend, ExampleShapedTreeMinimal)
{
    const auto prev = load_tree(data("exp3_t1.json"));
    const auto target = parse_target(read_file(data("exp3_target_minimal.json")), prev.field);
    const auto res = extend_tree(prev, target);
    EXPECT_EQ(res.tree.conductor(), 22);
    EXPECT_TRUE(validate(res.tree).ok());
    EXPECT_TRUE(check_compatibility(res.tree).ok());
    EXPECT_TRUE(check_extension(res.source, res.tree, res.map).ok());
    for (const auto& v : prev.vertices) {
        if (v.depth > Rational(1, 2)) continue;
        EXPECT_EQ(res.tree.vertex(v.id).depth, v.depth * 3) << v.id;
    }
}

TEST(Extend, RadicalRootDepthScales)
{
    const auto f = F9();
    const auto prev = make_equidistant(f, 2, f->one(), Rational(1, 4), 0, "v");
    ExtendOptions opts;
    opts.max_field_degree = 4;
    const auto res = extend_tree(prev, ExtensionTarget{}, opts);
    EXPECT_EQ(res.tree.vertex(res.tree.root).depth, Rational(3, 4));
    EXPECT_EQ(res.tree.conductor(), 3 * 3 - 3 + 1);
    EXPECT_TRUE(validate(res.tree).ok()) << serialize_report(validate(res.tree));
    EXPECT_TRUE(check_compatibility(res.tree).ok());
    EXPECT_TRUE(check_extension(res.source, res.tree, res.map).ok()) << serialize_report(check_extension(res.source, res.tree, res.map));
}

TEST(Extend, Deterministic)
{
    const auto prev = load_tree(data("two_branch_z2.json"));
    ExtendOptions a, b;
    b.workers = 3;
    const auto r1 = extend_tree(prev, ExtensionTarget{}, a);
    const auto r2 = extend_tree(prev, ExtensionTarget{}, b);
    EXPECT_EQ(serialize_tree(r1.tree), serialize_tree(r2.tree));
    EXPECT_EQ(serialize_vertex_map(r1.map), serialize_vertex_map(r2.map));
}

TEST(Extend, InfeasibleTarget)
{
    const auto prev = load_tree(data("minimal_z2.json"));
    ExtensionTarget target;
    target.mode = TargetMode::GENERAL;
    target.l = 2;
    try {
        extend_tree(prev, target);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TargetInfeasible);
    }
}
