#include "support.hpp"

#include <gtest/gtest.h>

using namespace cgras;

namespace {

MessageId m(const char* s) { return parse_message_id(s); }
RvId U(const char* s) { return RvId::u(m(s)); }
const RvId Q = RvId::q();

Derivation p2p_derivation() { return derive(fixture_p2p().scheme); }

} // namespace

TEST(Entropy, Examples)
{
    JointPmf uniform({{U("1->1"), 2}}, {0.5, 0.5});
    EXPECT_NEAR(entropy(uniform, {U("1->1")}), 1.0, 1e-12);
    JointPmf point({{U("1->1"), 2}}, {1.0, 0.0});
    EXPECT_NEAR(entropy(point, {U("1->1")}), 0.0, 1e-12);
    JointPmf pair({{U("1->1"), 2}, {U("1->2"), 2}}, {0.5, 0.25, 0.25, 0.0});
    EXPECT_NEAR(entropy(pair, {U("1->1"), U("1->2")}), support::entropy_of({0.5, 0.25, 0.25, 0.0}), 1e-12);
    EXPECT_NEAR(entropy(pair, {U("1->1"), U("1->2")}), 1.5, 1e-12);
    EXPECT_THROW(entropy(pair, {U("2->1")}), Error);
}

TEST(EvalExpr, BscCapacity)
{
    for (double p : {0.0, 0.1, 0.5}) {
        auto f = fixture_p2p(p);
        auto d = derive(f.scheme);
        auto pmf = compose_pmf(d.factors, *f.model);
        double v = eval_expr(pmf, MiTerm({RvId::y(1)}, {U("1->1")}, {}));
        EXPECT_NEAR(v, 1 - support::h2(p), 1e-12) << p;
    }
}

TEST(EvalExpr, IndependenceAndCancellation)
{
    JointPmf ind({{Q, 1}, {U("1->1"), 2}, {U("2->1"), 2}}, {0.12, 0.28, 0.18, 0.42});
    EXPECT_NEAR(eval_expr(ind, MiTerm({U("1->1")}, {U("2->1")}, {})), 0.0, 1e-12);
    auto h = InfoExpr::entropy({U("1->1")});
    EXPECT_EQ(eval_expr(ind, h - h), 0.0);
}

TEST(Properties, MonotoneAndNonnegative)
{
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        auto s = support::random_scheme(rng, 4);
        auto d = derive(s);
        auto pmf = compose_pmf(d.factors, support::random_model(rng, d.adg, d.factors, 3, 2));
        std::vector<RvId> all;
        for (const auto& a : pmf.axes())
            all.push_back(a.rv);
        std::uniform_int_distribution<std::uint32_t> bits(0, (1u << all.size()) - 1);
        for (int k = 0; k < 10; ++k) {
            std::uint32_t sb = bits(rng), tb = sb | bits(rng);
            RvSet S, T;
            for (std::size_t i = 0; i < all.size(); ++i) {
                if (sb >> i & 1u)
                    S.insert(all[i]);
                if (tb >> i & 1u)
                    T.insert(all[i]);
            }
            EXPECT_LE(entropy(pmf, S), entropy(pmf, T) + 1e-9);
        }
        // random disjoint A, B, C over the non-Q axes
        std::uniform_int_distribution<int> label(0, 3);
        for (int k = 0; k < 10; ++k) {
            RvSet part[4];
            for (const auto& v : all)
                if (v != Q)
                    part[label(rng)].insert(v);
            if (part[0].empty() || part[1].empty())
                continue;
            EXPECT_GE(eval_expr(pmf, MiTerm(part[0], part[1], part[2])), -1e-9);
        }
    }
}

TEST(ValidatePmf, PointToPointIsValid)
{
    auto d = p2p_derivation();
    auto f = fixture_p2p();
    auto pmf = compose_pmf(d.factors, *f.model);
    EXPECT_TRUE(validate_pmf(pmf, d.factors, f.model->channel).empty());
}

TEST(ValidatePmf, CorrelatedMacCodewords)
{
    auto f = fixture_mac2();
    auto d = derive(f.scheme);
    auto pmf = compose_pmf(d.factors, *f.model);
    // move mass so that U1 = U2 with high probability (axes Q, U1, U2, X1, X2, Y)
    std::vector<double> t(pmf.size(), 0.0);
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        auto c = pmf.config(i);
        if (c[1] == c[2])
            t[i] = 2 * pmf.table()[i];
    }
    JointPmf bad(pmf.axes(), t);
    auto r = validate_pmf(bad, d.factors, f.model->channel);
    EXPECT_TRUE(has_code(r, "factorization"));
}

TEST(ValidatePmf, RandomizedEncoder)
{
    auto f = fixture_p2p();
    auto d = derive(f.scheme);
    auto pmf = compose_pmf(d.factors, *f.model);
    // X = U half the time when U = 0 (axes Q, U, X, Y)
    std::vector<double> t(pmf.size(), 0.0);
    for (std::size_t i = 0; i < pmf.size(); ++i) {
        auto c = pmf.config(i);
        double pu = 0.5;
        double px = c[1] == 0 ? 0.5 : (c[2] == 1 ? 1.0 : 0.0);
        double py = fixture_detail::bsc(0.11, c[2], c[3]);
        t[i] = pu * px * py;
    }
    auto r = validate_pmf(JointPmf(pmf.axes(), t), d.factors, f.model->channel);
    EXPECT_TRUE(has_code(r, "determinism"));
}

TEST(ValidatePmf, ShapeProblems)
{
    auto f = fixture_p2p();
    auto d = derive(f.scheme);
    auto pmf = compose_pmf(d.factors, *f.model);
    auto axes = pmf.axes();
    axes.pop_back();
    auto r = validate_pmf(JointPmf(axes, std::vector<double>(pmf.size() / 2, 0.0)), d.factors, f.model->channel);
    EXPECT_TRUE(has_code(r, "missing-axis"));
    auto t = pmf.table();
    t[0] += 0.01;
    EXPECT_TRUE(has_code(validate_pmf(JointPmf(pmf.axes(), t), d.factors, f.model->channel), "normalization"));
}

TEST(EvalRegion, PointToPoint)
{
    auto f = fixture_p2p(0.11);
    auto d = derive(f.scheme);
    auto pmf = compose_pmf(d.factors, *f.model);
    auto n = eval_region(region(d), pmf);
    ASSERT_EQ(n.vertices.size(), 2u);
    EXPECT_NEAR(n.vertices[0][0], 0.0, 1e-12);
    EXPECT_NEAR(n.vertices[1][0], 1 - support::h2(0.11), 1e-9);
    EXPECT_TRUE(n.contains({0.0}));
    EXPECT_FALSE(n.contains({-0.01}));
}

TEST(EvalRegion, XorMacContainsOrigin)
{
    auto f = fixture_mac2();
    auto d = derive(f.scheme);
    auto n = eval_region(region(d), compose_pmf(d.factors, *f.model));
    EXPECT_TRUE(n.contains({0.0, 0.0}));
    EXPECT_FALSE(n.contains({-0.1, 0.0}));
    EXPECT_FALSE(n.contains({0.0, -0.1}));
}

TEST(EvalRegion, RejectsAuxiliarySymbols)
{
    auto f = fixture_marton2();
    auto d = derive(f.scheme);
    auto pmf = compose_pmf(d.factors, *f.model);
    EXPECT_THROW(eval_region(d.assembled, pmf), Error);
}

// Without binning every bound has a nonnegative right side, so the origin
// is feasible. With binning a covering term can exceed the packing term at
// a poor pmf and the region is then empty, as with Marton's bound.
TEST(EvalRegion, OriginInsideWithoutBinning)
{
    std::mt19937_64 rng(37);
    int checked = 0;
    for (int t = 0; t < 80; ++t) {
        auto s = support::random_scheme(rng, 3);
        auto d = derive(s);
        auto pmf = compose_pmf(d.factors, support::random_model(rng, d.adg, d.factors, 3));
        auto n = eval_region(region(d), pmf);
        std::vector<double> neg(n.variables.size(), 0.0);
        neg[0] = -0.5;
        EXPECT_FALSE(n.contains(neg));
        if (!d.adg.binned().empty())
            continue;
        ++checked;
        EXPECT_TRUE(n.contains(std::vector<double>(n.variables.size(), 0.0)));
    }
    EXPECT_GT(checked, 10);
}

TEST(EnumerateVertices, UnitSquare)
{
    std::vector<std::vector<Rational>> A{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::vector<Rational> b{1, 1, 0, 0};
    auto v = enumerate_vertices(A, b, 2);
    EXPECT_EQ(v.size(), 4u);
}
