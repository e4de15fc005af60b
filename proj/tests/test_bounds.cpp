#include "support.hpp"

#include <gtest/gtest.h>

using namespace cgras;

namespace {

MessageId m(const char* s) { return parse_message_id(s); }
RvId U(const char* s) { return RvId::u(m(s)); }

Adg marton()
{
    return orient(build(make_network(1, 2, {m("1->1"), m("1->2")}),
                        {binning(m("1->1"), m("1->2")), binning(m("1->2"), m("1->1"))}));
}

Adg mac() { return orient(build(make_network(2, 1, {m("1->1"), m("2->1")}), {})); }

// Cognitive-style: the cognitive transmitter bins its own codeword against
// the codeword of the common message it also knows.
Adg cognitive()
{
    return orient(build(make_network(2, 2, {m("1->1"), m("1,2->2")}), {binning(m("1,2->2"), m("1->1"))}));
}

InfoSum mi(RvSet a, RvSet b, RvSet c = {}) { return InfoSum(MiTerm(a, b, c)); }

RateIneq ineq(std::vector<RateSymbol> lhs, Sense s, InfoSum rhs)
{
    RateIneq r;
    for (const auto& v : lhs)
        r.add_term(v, 1);
    r.sense = s;
    r.rhs = rhs;
    return r;
}

bool contains(const std::vector<RateIneq>& rows, RateIneq want)
{
    want.normalize();
    for (auto r : rows) {
        r.normalize();
        if (r == want)
            return true;
    }
    return false;
}

} // namespace

TEST(BinnedSet, Examples)
{
    EXPECT_EQ(binned_set(marton()), (NodeList{m("1->1"), m("1->2")}));
    EXPECT_TRUE(binned_set(mac()).empty());
    EXPECT_EQ(binned_set(cognitive()), NodeList{m("1->1")});
}

TEST(ValidSubsets, Examples)
{
    auto fam = valid_subsets({m("1->1"), m("2->1")}, mac());
    EXPECT_EQ(fam.members, (std::vector<NodeList>{{}, {m("1->1")}, {m("2->1")}, {m("1->1"), m("2->1")}}));

    // 1->1 superposed on 1->1,2: {1->1,2} alone misses its descendant
    auto bc = orient(build(make_network(1, 2, {m("1->1"), m("1->1,2")}), {superposition(m("1->1,2"), m("1->1"))}));
    auto fbc = valid_subsets({m("1->1"), m("1->1,2")}, bc);
    EXPECT_EQ(fbc.members, (std::vector<NodeList>{{}, {m("1->1")}, {m("1->1"), m("1->1,2")}}));

    EXPECT_EQ(valid_subsets({}, mac()).members, std::vector<NodeList>{{}});
}

TEST(ValidSubsets, ClassAtomicKeepsClassesWhole)
{
    auto fam = valid_subsets({m("1->1"), m("1->2")}, marton(), SubsetPolicy::ClassAtomic);
    EXPECT_EQ(fam.members, (std::vector<NodeList>{{}, {m("1->1"), m("1->2")}}));
}

TEST(EncodingBounds, MartonComplementMode)
{
    auto b = encoding_bounds(marton());
    ASSERT_EQ(b.bounds.size(), 1u);
    auto want = ineq({RateSymbol::binning(m("1->1")), RateSymbol::binning(m("1->2"))}, Sense::Ge,
                     mi({U("1->1")}, {U("1->2")}));
    EXPECT_TRUE(contains(b.bounds, want)) << b.bounds[0].str();
}

TEST(EncodingBounds, MacHasNone) { EXPECT_TRUE(encoding_bounds(mac()).bounds.empty()); }

TEST(EncodingBounds, SingleBin)
{
    auto b = encoding_bounds(cognitive());
    ASSERT_EQ(b.bounds.size(), 1u);
    EXPECT_TRUE(contains(b.bounds, ineq({RateSymbol::binning(m("1->1"))}, Sense::Ge, mi({U("1->1")}, {U("1,2->2")}))));
}

TEST(EncodingBounds, DistanceAndCredit)
{
    auto a = marton();
    EXPECT_EQ(encoding_distance(a), mi({U("1->1")}, {U("1->2")}));
    EXPECT_TRUE(covering_credit(a, {}).is_zero());
    EXPECT_EQ(covering_credit(a, a.binned()), encoding_distance(a));
}

TEST(DecodingBounds, Mac)
{
    auto b = decoding_bounds(mac(), 1);
    ASSERT_EQ(b.bounds.size(), 3u);
    auto L1 = RateSymbol::codebook(m("1->1")), L2 = RateSymbol::codebook(m("2->1"));
    auto Y = RvId::y(1);
    EXPECT_TRUE(contains(b.bounds, ineq({L1}, Sense::Le, mi({Y}, {U("1->1")}, {U("2->1")}))));
    EXPECT_TRUE(contains(b.bounds, ineq({L2}, Sense::Le, mi({Y}, {U("2->1")}, {U("1->1")}))));
    EXPECT_TRUE(contains(b.bounds, ineq({L1, L2}, Sense::Le, mi({Y}, {U("1->1"), U("2->1")}))));
}

TEST(DecodingBounds, PointToPoint)
{
    auto a = orient(build(make_network(1, 1, {m("1->1")}), {}));
    auto b = decoding_bounds(a, 1);
    ASSERT_EQ(b.bounds.size(), 1u);
    EXPECT_TRUE(contains(b.bounds, ineq({RateSymbol::codebook(m("1->1"))}, Sense::Le, mi({RvId::y(1)}, {U("1->1")}))));
}

TEST(DecodingBounds, EmptyReceiverWarns)
{
    auto a = orient(build(make_network(1, 2, {m("1->1")}), {}));
    auto b = decoding_bounds(a, 2);
    EXPECT_TRUE(b.bounds.empty());
    EXPECT_EQ(b.warnings.size(), 1u);
}

TEST(Bounds, OnlyDeclaredSymbols)
{
    std::mt19937_64 rng(21);
    for (int t = 0; t < 100; ++t) {
        auto s = support::random_scheme(rng, 4);
        auto a = orient(build(s.network, s.edges()));
        std::set<RvId> rvs{RvId::q()};
        for (const auto& n : a.nodes())
            rvs.insert(RvId::u(n));
        for (int z = 1; z <= s.network.n_rx; ++z)
            rvs.insert(RvId::y(z));
        auto check = [&](const BoundSet& bs) {
            for (const auto& r : bs.bounds) {
                for (const auto& [v, _] : r.lhs) {
                    EXPECT_TRUE(a.network().has(v.owner()));
                    if (v.kind() == RateSymbol::Kind::Binning) {
                        EXPECT_NE(std::find(a.binned().begin(), a.binned().end(), v.owner()), a.binned().end());
                    }
                }
                for (const auto& [atom, _] : r.rhs.expr().atoms())
                    for (const auto& v : atom)
                        EXPECT_TRUE(rvs.count(v)) << v.str();
            }
        };
        check(encoding_bounds(a));
        for (int z = 1; z <= s.network.n_rx; ++z)
            check(decoding_bounds(a, z));
    }
}

// Adding a binning edge keeps every decoding left-hand side; adding a node
// keeps every earlier bound of the other receivers' codewords.
TEST(Bounds, Monotonicity)
{
    auto lhs_set = [](const BoundSet& bs) {
        std::set<std::vector<RateSymbol>> out;
        for (const auto& r : bs.bounds) {
            std::vector<RateSymbol> v;
            for (const auto& [s, _] : r.lhs)
                v.push_back(s);
            out.insert(v);
        }
        return out;
    };
    auto net = make_network(1, 2, {m("1->1"), m("1->2")});
    auto before = orient(build(net, {}));
    auto after = marton();
    for (int z = 1; z <= 2; ++z) {
        auto b = lhs_set(decoding_bounds(before, z)), c = lhs_set(decoding_bounds(after, z));
        EXPECT_TRUE(std::includes(c.begin(), c.end(), b.begin(), b.end()));
    }
    // a new message for receiver 2 leaves receiver 1's bounds in place
    auto small = orient(build(make_network(1, 2, {m("1->1")}), {}));
    auto big = orient(build(make_network(1, 2, {m("1->1"), m("1->2")}), {}));
    auto b = lhs_set(decoding_bounds(small, 1)), c = lhs_set(decoding_bounds(big, 1));
    EXPECT_TRUE(std::includes(c.begin(), c.end(), b.begin(), b.end()));
}

TEST(SvoMode, DefaultIsComplement)
{
    EXPECT_EQ(kDefaultSvoMode, SvoMode::Complement);
    EXPECT_EQ(parse_svo_mode("subset"), SvoMode::Subset);
    EXPECT_THROW(parse_svo_mode("sideways"), Error);
}
