#include "support.hpp"

#include <gtest/gtest.h>

using namespace cgras;

namespace {

MessageId m(const char* s) { return parse_message_id(s); }

Cgras marton()
{
    return build(make_network(1, 2, {m("1->1"), m("1->2")}), {binning(m("1->1"), m("1->2")), binning(m("1->2"), m("1->1"))});
}

Cgras mac() { return build(make_network(2, 1, {m("1->1"), m("2->1")}), {}); }

Cgras superposed_bc()
{
    return build(make_network(1, 2, {m("1->1"), m("1->1,2")}), {superposition(m("1->1,2"), m("1->1"))});
}

} // namespace

TEST(Build, MartonHasOneClass)
{
    auto g = marton();
    ASSERT_EQ(g.joint_bins().size(), 1u);
    EXPECT_EQ(g.joint_bins()[0], (NodeList{m("1->1"), m("1->2")}));
    EXPECT_TRUE(g.mutually_binned(m("1->1"), m("1->2")));
}

TEST(Build, MacHasSingletonClasses)
{
    auto g = mac();
    ASSERT_EQ(g.joint_bins().size(), 2u);
    EXPECT_EQ(g.joint_bins()[0].size(), 1u);
}

TEST(Build, RejectsSuperpositionWidening)
{
    try {
        build(make_network(1, 2, {m("1->1"), m("1->1,2")}), {superposition(m("1->1"), m("1->1,2"))});
        FAIL() << "expected rejection";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("receiver set"), std::string::npos) << e.what();
    }
}

TEST(Build, RejectsBinningByOutsider)
{
    auto net = make_network(2, 1, {m("1->1"), m("2->1")});
    try {
        build(net, {binning(m("1->1"), m("2->1"))});
        FAIL() << "expected rejection";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("transmitter set"), std::string::npos) << e.what();
    }
}

TEST(Build, RejectsDanglingSelfAndDuplicate)
{
    auto net = make_network(1, 1, {m("1->1")});
    EXPECT_THROW(build(net, {superposition(m("1->1"), m("1->2"))}), Error);
    EXPECT_THROW(build(net, {binning(m("1->1"), m("1->1"))}), Error);
    auto two = make_network(1, 2, {m("1->1"), m("1->2")});
    EXPECT_THROW(build(two, {binning(m("1->1"), m("1->2")), binning(m("1->1"), m("1->2"))}), Error);
}

TEST(CheckAssumptions, A1NonCompleteClass)
{
    auto net = make_network(1, 3, {m("1->1"), m("1->2"), m("1->3")});
    auto g = build(net, {binning(m("1->1"), m("1->2")), binning(m("1->2"), m("1->1")), binning(m("1->2"), m("1->3")),
                         binning(m("1->3"), m("1->2"))});
    auto r = check_assumptions(g);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].code, "A1");
}

TEST(CheckAssumptions, A2ParentMismatch)
{
    auto net = make_network(1, 2, {m("1->1"), m("1->1,2"), m("1->2")});
    auto g = build(net, {superposition(m("1->1,2"), m("1->1")), binning(m("1->1"), m("1->2")),
                         binning(m("1->2"), m("1->1"))});
    auto r = check_assumptions(g);
    ASSERT_FALSE(r.empty());
    EXPECT_TRUE(has_code(r, "A2"));
    EXPECT_FALSE(has_code(r, "A1"));
}

TEST(CheckAssumptions, A3DirectedCycle)
{
    auto net = make_network(1, 3, {m("1->1"), m("1->2"), m("1->3")});
    auto g = build(net, {binning(m("1->1"), m("1->2")), binning(m("1->2"), m("1->3")), binning(m("1->3"), m("1->1"))});
    auto r = check_assumptions(g);
    ASSERT_TRUE(has_code(r, "A3"));
    EXPECT_THROW(orient(g), Error);
}

TEST(CheckAssumptions, A3SemiDirectedThroughClass)
{
    // a - b jointly binned, a -> c -> b one-directional: cycle a - b <- c <- a
    auto net = make_network(1, 3, {m("1->1"), m("1->2"), m("1->3")});
    auto g = build(net, {binning(m("1->1"), m("1->2")), binning(m("1->2"), m("1->1")), binning(m("1->1"), m("1->3")),
                         binning(m("1->3"), m("1->2"))});
    EXPECT_TRUE(has_code(check_assumptions(g), "A3"));
}

TEST(Orient, MartonCanonicalDirection)
{
    auto a = orient(marton());
    EXPECT_EQ(a.binning_parents(m("1->2")), NodeList{m("1->1")});
    EXPECT_TRUE(a.binning_parents(m("1->1")).empty());
    EXPECT_EQ(a.topological_order(), (NodeList{m("1->1"), m("1->2")}));
    EXPECT_EQ(a.binned(), (NodeList{m("1->1"), m("1->2")}));
}

TEST(Orient, EdgelessAndChain)
{
    auto a = orient(mac());
    EXPECT_EQ(a.topological_order(), (NodeList{m("1->1"), m("2->1")}));
    EXPECT_TRUE(a.binned().empty());
    auto c = orient(superposed_bc());
    EXPECT_EQ(c.superposition_parents(m("1->1")), NodeList{m("1->1,2")});
    EXPECT_EQ(c.topological_order(), (NodeList{m("1->1,2"), m("1->1")}));
}

TEST(Factorize, Examples)
{
    auto fm = factorize(orient(marton()));
    ASSERT_EQ(fm.size(), 2u);
    EXPECT_EQ(to_string(fm[0]), "P(U[1->1]|Q)");
    EXPECT_EQ(to_string(fm[1]), "P(U[1->2]|U[1->1],Q)");
    auto fmac = factorize(orient(mac()));
    EXPECT_EQ(to_string(fmac[0]), "P(U[1->1]|Q)");
    EXPECT_EQ(to_string(fmac[1]), "P(U[2->1]|Q)");
    auto fbc = factorize(orient(superposed_bc()));
    EXPECT_EQ(to_string(fbc[0]), "P(U[1->1,2]|Q)");
    EXPECT_EQ(to_string(fbc[1]), "P(U[1->1]|U[1->1,2],Q)");
}

TEST(DSeparation, Examples)
{
    auto amac = orient(mac());
    EXPECT_TRUE(d_separated(amac, {RvId::u(m("1->1"))}, {RvId::u(m("2->1"))}, {RvId::q()}));
    // the output couples them
    EXPECT_FALSE(d_separated(amac, {RvId::u(m("1->1"))}, {RvId::u(m("2->1"))}, {RvId::q(), RvId::y(1)}));
    auto am = orient(marton());
    EXPECT_FALSE(d_separated(am, {RvId::u(m("1->1"))}, {RvId::u(m("1->2"))}, {RvId::q()}));
    auto ac = orient(superposed_bc());
    EXPECT_THROW(d_separated(ac, {RvId::u(m("1->1"))}, {RvId::q()}, {RvId::u(m("1->1,2")), RvId::q()}), Error);
}

TEST(Properties, OrientAndFactorizeAreDeterministic)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        auto s = support::random_scheme(rng, 5);
        auto g1 = build(s.network, s.edges());
        auto edges = s.edges();
        std::shuffle(edges.begin(), edges.end(), rng);
        auto g2 = build(s.network, edges);
        auto a1 = orient(g1), a2 = orient(g2);
        EXPECT_TRUE(a1 == a2);
        auto f1 = factorize(a1), f2 = factorize(a2);
        ASSERT_EQ(f1.size(), a1.nodes().size());
        std::set<MessageId> left;
        for (std::size_t i = 0; i < f1.size(); ++i) {
            EXPECT_EQ(to_string(f1[i]), to_string(f2[i]));
            left.insert(f1[i].node);
        }
        EXPECT_EQ(left.size(), f1.size());
    }
}

// A receiver that decodes a codeword also decodes every superposition
// ancestor of it, for any graph that passes the edge side conditions.
TEST(Properties, DecodersSeeAllAncestors)
{
    std::mt19937_64 rng(12);
    for (int t = 0; t < 200; ++t) {
        auto s = support::random_scheme(rng, 5);
        auto g = build(s.network, s.edges());
        for (const auto& n : g.nodes())
            for (const auto& anc : g.superposition_ancestors(n))
                for (int z : n.rx.elements())
                    EXPECT_TRUE(anc.rx.contains(z));
    }
}

// Every topological order respects all directed edges.
TEST(Properties, TopologicalOrderRespectsEdges)
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        auto s = support::random_scheme(rng, 5);
        auto a = orient(build(s.network, s.edges()));
        const auto& order = a.topological_order();
        auto pos = [&](const MessageId& x) { return std::find(order.begin(), order.end(), x) - order.begin(); };
        for (const auto& n : a.nodes())
            for (const auto& p : a.parents(n))
                EXPECT_LT(pos(p), pos(n));
    }
}
