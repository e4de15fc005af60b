#include "support.hpp"

#include <gtest/gtest.h>

using namespace cgras;

namespace {

MessageId m(const char* s) { return parse_message_id(s); }
RvId U(const char* s) { return RvId::u(m(s)); }
const RvId Q = RvId::q();

// Hand expansion into atoms, independent of mi_to_expr.
InfoExpr atoms(std::vector<std::pair<int, RvSet>> terms)
{
    InfoExpr e;
    for (const auto& [c, s] : terms)
        e += InfoExpr::entropy(s, c);
    return e;
}

Adg marton()
{
    return orient(build(make_network(1, 2, {m("1->1"), m("1->2")}),
                        {binning(m("1->1"), m("1->2")), binning(m("1->2"), m("1->1"))}));
}

Adg mac() { return orient(build(make_network(2, 1, {m("1->1"), m("2->1")}), {})); }

} // namespace

TEST(MiToExpr, FourAtomExpansion)
{
    RvId a = U("1->1"), b = U("2->1");
    EXPECT_EQ(mi_to_expr(MiTerm({a}, {b}, {})), atoms({{1, {a, Q}}, {1, {b, Q}}, {-1, {a, b, Q}}, {-1, {Q}}}));
}

TEST(MiToExpr, OverlapIsRejected)
{
    RvId a = U("1->1"), b = U("2->1");
    EXPECT_THROW(MiTerm({a}, {b}, {b}), Error);
    EXPECT_THROW(MiTerm({a}, {a}, {}), Error);
    EXPECT_THROW(MiTerm({}, {a}, {}), Error);
}

TEST(MiToExpr, Symmetry)
{
    RvId a = U("1->1"), b = U("2->1");
    EXPECT_EQ(mi_to_expr(MiTerm({a}, {b}, {})), mi_to_expr(MiTerm({b}, {a}, {})));
    EXPECT_EQ(MiTerm({a}, {b}, {}), MiTerm({b}, {a}, {}));
}

TEST(Combine, Examples)
{
    RvId a = U("1->1");
    auto e = InfoExpr::entropy({a});
    EXPECT_TRUE(combine({{1, e}, {-1, e}}).is_zero());
    EXPECT_EQ(combine({{2, e}, {3, e}}), InfoExpr::entropy({a}, 5));
}

TEST(Combine, ChainRule)
{
    RvId a = U("1->1"), b = U("1->2"), c = U("2->1");
    auto lhs = combine({{1, mi_to_expr(MiTerm({a}, {b}, {}))}, {1, mi_to_expr(MiTerm({a}, {c}, {b}))}});
    // I(A; BC | Q) by hand: H(AQ) + H(BCQ) - H(ABCQ) - H(Q)
    EXPECT_EQ(lhs, atoms({{1, {a, Q}}, {1, {b, c, Q}}, {-1, {a, b, c, Q}}, {-1, {Q}}}));
    EXPECT_EQ(lhs, mi_to_expr(MiTerm({a}, {b, c}, {})));
}

TEST(VanishesUnder, Examples)
{
    EXPECT_TRUE(vanishes_under(MiTerm({U("1->1")}, {U("2->1")}, {}), mac()));
    EXPECT_FALSE(vanishes_under(MiTerm({U("1->1")}, {U("1->2")}, {}), marton()));
    EXPECT_TRUE(vanishes_under(RvSet{}, {U("1->1")}, {}, marton()));
}

TEST(InfoSum, ComparesByCanonicalForm)
{
    RvId a = U("1->1"), b = U("1->2"), c = U("2->1");
    InfoSum chain(MiTerm({a}, {b}, {}));
    chain.add(MiTerm({a}, {c}, {b}), 1);
    InfoSum whole(MiTerm({a}, {b, c}, {}));
    EXPECT_EQ(chain, whole);
    EXPECT_NE(chain.str(), whole.str());
    EXPECT_TRUE((chain - whole).is_zero());
}

TEST(InfoSum, ProvablyNonnegative)
{
    RvId a = U("1->1"), b = U("1->2"), c = U("2->1");
    InfoSum x(MiTerm({a}, {b, c}, {}));
    InfoSum y(MiTerm({a}, {b}, {}));
    EXPECT_TRUE(x.provably_nonnegative());
    EXPECT_TRUE((x - y).provably_nonnegative()); // equals I(A;C|B,Q)
    EXPECT_FALSE((y - x).provably_nonnegative());
    EXPECT_FALSE((Rational(-1) * y).provably_nonnegative());
    EXPECT_TRUE(InfoSum().provably_nonnegative());
}

// Random terms over a small universe: canonical form is idempotent,
// symmetric, and the chain rule holds term by term.
TEST(Properties, RandomTerms)
{
    std::vector<RvId> universe{U("1->1"), U("1->2"), U("2->1"), U("2->2"), RvId::x(1), RvId::y(1)};
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> pick(0, 3);
    for (int t = 0; t < 500; ++t) {
        RvSet part[4]; // A, B, C, D; index 3 means unused
        for (const auto& v : universe)
            part[pick(rng)].insert(v);
        if (part[0].empty() || part[1].empty())
            continue;
        MiTerm ab(part[0], part[1], part[2]);
        auto e = mi_to_expr(ab);
        EXPECT_EQ(e, combine({{1, e}}));
        EXPECT_EQ(e, mi_to_expr(MiTerm(part[1], part[0], part[2])));
        // split B = B1 u B2 and check I(A;B|C) = I(A;B1|C) + I(A;B2|B1,C)
        std::vector<RvId> bs(part[1].begin(), part[1].end());
        if (bs.size() < 2)
            continue;
        RvSet b1{bs[0]}, b2(bs.begin() + 1, bs.end());
        auto sum = mi_to_expr(MiTerm(part[0], b1, part[2])) + mi_to_expr(MiTerm(part[0], b2, set_union(part[2], b1)));
        EXPECT_EQ(e, sum);
    }
}
