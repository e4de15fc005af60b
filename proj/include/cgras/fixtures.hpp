#pragma once

// Calibration fixtures: literature-standard schemes with their expected
// regions, each derived by hand below, plus a runner comparing them with
// the pipeline output symbolically and by point sampling on a sample pmf.

#include "cgras/numeric.hpp"
#include "cgras/pipeline.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cgras {

struct Fixture {
    std::string name;
    std::string summary;
    Scheme scheme;
    // Over message rates when `symbolic`; otherwise it may also use split
    // rates, which are projected out by LP during the numeric comparison.
    RateSystem expected;
    bool symbolic = true;
    std::optional<PmfModel> model;
};

namespace fixture_detail {

inline MessageId msg(const char* s) { return parse_message_id(s); }
inline RvId U(const char* s) { return RvId::u(msg(s)); }

inline InfoSum mi(RvSet left, RvSet right, RvSet given = {}) { return InfoSum(MiTerm(left, right, given)); }

inline RateIneq row(std::vector<std::pair<RateSymbol, int>> lhs, Sense sense, InfoSum rhs = {})
{
    RateIneq r;
    r.sense = sense;
    for (const auto& [v, c] : lhs)
        r.add_term(v, c);
    r.rhs = std::move(rhs);
    return r;
}

inline RateSymbol R(const char* m) { return RateSymbol::message(msg(m)); }
inline RateSymbol Rs(const char* part, const char* parent) { return RateSymbol::split(msg(part), msg(parent)); }

inline RateSystem system(std::vector<RateSymbol> vars, std::vector<RateIneq> rows)
{
    RateSystem s(std::move(vars), std::move(rows));
    s.canonicalize();
    return s;
}

// P(y | x) of a binary symmetric channel
inline double bsc(double p, int x, int y) { return x == y ? 1 - p : p; }

inline DmcSpec product_channel(int n_in, const std::vector<std::function<double(const std::vector<int>&, int)>>& outs)
{
    DmcSpec ch;
    ch.inputs.assign(static_cast<std::size_t>(n_in), 2);
    ch.outputs.assign(outs.size(), 2);
    const std::size_t nx = ch.input_configs(), ny = ch.output_configs();
    for (std::size_t xi = 0; xi < nx; ++xi) {
        std::vector<int> x(static_cast<std::size_t>(n_in));
        for (int k = n_in - 1, r = static_cast<int>(xi); k >= 0; --k, r /= 2)
            x[static_cast<std::size_t>(k)] = r % 2;
        for (std::size_t yi = 0; yi < ny; ++yi) {
            double p = 1;
            for (std::size_t z = 0; z < outs.size(); ++z)
                p *= outs[z](x, static_cast<int>(yi >> (outs.size() - 1 - z) & 1u));
            ch.table.push_back(p);
        }
    }
    return ch;
}

} // namespace fixture_detail

/// Point-to-point: one codeword, packing alone gives R <= I(Y;U|Q).
inline Fixture fixture_p2p(double crossover = 0.11)
{
    using namespace fixture_detail;
    Fixture f;
    f.name = "p2p";
    f.summary = "single message, no edges";
    f.scheme.network = make_network(1, 1, {msg("1->1")});
    f.expected = system({R("1->1")}, {row({{R("1->1"), 1}}, Sense::Le, mi({RvId::y(1)}, {U("1->1")})),
                                      row({{R("1->1"), 1}}, Sense::Ge)});
    PmfModel m;
    m.q = {1.0};
    m.factors = {{msg("1->1"), 2, {0.5, 0.5}}};
    m.encoders = {{0, 1}};
    m.channel = product_channel(1, {[=](const std::vector<int>& x, int y) { return bsc(crossover, x[0], y); }});
    f.model = m;
    return f;
}

/// Two-user MAC. Receiver 1 decodes both codewords; the closed subsets of
/// {U1, U2} are {U1}, {U2}, {U1,U2} and with no binning L = R, so
///   R1 <= I(Y; U1 | U2, Q), R2 <= I(Y; U2 | U1, Q), R1 + R2 <= I(Y; U1 U2 | Q).
inline Fixture fixture_mac2()
{
    using namespace fixture_detail;
    Fixture f;
    f.name = "mac2";
    f.summary = "two transmitters, one receiver, no edges";
    f.scheme.network = make_network(2, 1, {msg("1->1"), msg("2->1")});
    const RvId y = RvId::y(1), u1 = U("1->1"), u2 = U("2->1");
    f.expected = system({R("1->1"), R("2->1")},
                        {row({{R("1->1"), 1}}, Sense::Le, mi({y}, {u1}, {u2})),
                         row({{R("2->1"), 1}}, Sense::Le, mi({y}, {u2}, {u1})),
                         row({{R("1->1"), 1}, {R("2->1"), 1}}, Sense::Le, mi({y}, {u1, u2})),
                         row({{R("1->1"), 1}}, Sense::Ge), row({{R("2->1"), 1}}, Sense::Ge)});
    PmfModel m;
    m.q = {1.0};
    m.factors = {{msg("1->1"), 2, {0.5, 0.5}}, {msg("2->1"), 2, {0.5, 0.5}}};
    m.encoders = {{0, 1}, {0, 1}};
    m.channel = product_channel(2, {[](const std::vector<int>& x, int y) { return (x[0] ^ x[1]) == y ? 1.0 : 0.0; }});
    f.model = m;
    return f;
}

/// Degraded broadcast with superposition: the cloud W_{1->{1,2}} is decoded
/// by both receivers and the satellite W_{1->1} is stacked on it; the
/// satellite codeword plays the role of the channel input. Receiver 2 sees
/// only the cloud: R2 <= I(Y2; Ucloud | Q). Receiver 1 decodes both; {cloud}
/// alone is not closed (its descendant is missing), leaving
///   {sat}: R1 <= I(Y1; Usat | Ucloud, Q),  {sat, cloud}: R1 + R2 <= I(Y1; Usat Ucloud | Q).
inline Fixture fixture_degraded_bc()
{
    using namespace fixture_detail;
    Fixture f;
    f.name = "degraded-bc";
    f.summary = "superposition of W_{1->1} on W_{1->1,2}";
    f.scheme.network = make_network(1, 2, {msg("1->1"), msg("1->1,2")});
    f.scheme.superposition = {{msg("1->1,2"), msg("1->1")}};
    const RvId y1 = RvId::y(1), y2 = RvId::y(2), cloud = U("1->1,2"), sat = U("1->1");
    const auto r1 = R("1->1"), r2 = R("1->1,2");
    f.expected = system({r1, r2}, {row({{r2, 1}}, Sense::Le, mi({y2}, {cloud})),
                                   row({{r1, 1}}, Sense::Le, mi({y1}, {sat}, {cloud})),
                                   row({{r1, 1}, {r2, 1}}, Sense::Le, mi({y1}, {sat, cloud})),
                                   row({{r1, 1}}, Sense::Ge), row({{r2, 1}}, Sense::Ge)});
    PmfModel m;
    m.q = {1.0};
    m.factors = {{msg("1->1,2"), 2, {0.5, 0.5}}, {msg("1->1"), 2, {0.8, 0.2, 0.2, 0.8}}};
    // known codewords in canonical order: U[1->1], U[1->1,2]
    m.encoders = {{0, 0, 1, 1}};
    m.channel = product_channel(1, {[](const std::vector<int>& x, int y) { return bsc(0.05, x[0], y); },
                                    [](const std::vector<int>& x, int y) { return bsc(0.2, x[0], y); }});
    f.model = m;
    return f;
}

/// Marton's inner bound with joint binning of U1 = U[1->1], U2 = U[1->2].
/// Both carry bin indices; orientation makes U1 the binning parent of U2.
/// Covering: Rb1 + Rb2 >= I(U1; U2 | Q). Packing: L1 <= I(Y1; U1 | Q),
/// L2 <= I(Y2; U2 | Q), with L = R + Rb. Substituting L and eliminating Rb1
/// (pairing R1 + Rb1 <= I1 with -Rb1 <= 0 and with -Rb1 - Rb2 <= -I12)
/// gives R1 <= I1 and R1 - Rb2 <= I1 - I12; eliminating Rb2 against
/// R2 + Rb2 <= I2 gives R2 <= I2 and R1 + R2 <= I1 + I2 - I12.
inline Fixture fixture_marton2()
{
    using namespace fixture_detail;
    Fixture f;
    f.name = "marton2";
    f.summary = "broadcast with joint binning of both private codewords";
    f.scheme.network = make_network(1, 2, {msg("1->1"), msg("1->2")});
    f.scheme.joint_binning = {{msg("1->1"), msg("1->2")}};
    const RvId y1 = RvId::y(1), y2 = RvId::y(2), u1 = U("1->1"), u2 = U("1->2");
    const auto r1 = R("1->1"), r2 = R("1->2");
    f.expected = system({r1, r2}, {row({{r1, 1}}, Sense::Le, mi({y1}, {u1})),
                                   row({{r2, 1}}, Sense::Le, mi({y2}, {u2})),
                                   row({{r1, 1}, {r2, 1}}, Sense::Le,
                                       mi({y1}, {u1}) + mi({y2}, {u2}) - mi({u1}, {u2})),
                                   row({{r1, 1}}, Sense::Ge), row({{r2, 1}}, Sense::Ge)});
    PmfModel m;
    m.q = {1.0};
    m.factors = {{msg("1->1"), 2, {0.5, 0.5}}, {msg("1->2"), 2, {0.75, 0.25, 0.25, 0.75}}};
    m.encoders = {{0, 1, 1, 1}}; // X = U1 or U2
    m.channel = product_channel(1, {[](const std::vector<int>& x, int y) { return bsc(0.1, x[0], y); },
                                    [](const std::vector<int>& x, int y) { return bsc(0.25, x[0], y); }});
    f.model = m;
    return f;
}

/// Han-Kobayashi: W_{1->1} splits into a private part P1 = (1, {1}) and a
/// common part C1 = (1, {1,2}) with P1 superposed on C1; symmetrically for
/// transmitter 2. Receiver 1 decodes {P1, C1, C2}; the subsets closed under
/// superposition descendants are {P1}, {C2}, {P1,C2}, {P1,C1}, {P1,C1,C2}:
///   S1p                 <= I(Y1; P1 | C1 C2 Q)
///   S2c                 <= I(Y1; C2 | P1 C1 Q)
///   S1p + S2c           <= I(Y1; P1 C2 | C1 Q)
///   S1p + S1c           <= I(Y1; P1 C1 | C2 Q)
///   S1p + S1c + S2c     <= I(Y1; P1 C1 C2 | Q)
/// and the mirror image at receiver 2, with R1 = S1p + S1c, R2 = S2p + S2c
/// and nonnegative split rates. Compared as sets after projection.
inline Fixture fixture_hk()
{
    using namespace fixture_detail;
    Fixture f;
    f.name = "hk";
    f.summary = "interference channel, rate splitting with superposition";
    f.scheme.network = make_network(2, 2, {msg("1->1"), msg("2->2")});
    f.scheme.splits = {{msg("1->1"), {msg("1->1"), msg("1->1,2")}}, {msg("2->2"), {msg("2->2"), msg("2->1,2")}}};
    f.scheme.superposition = {{msg("1->1,2"), msg("1->1")}, {msg("2->1,2"), msg("2->2")}};
    f.symbolic = false;

    const auto s1p = Rs("1->1", "1->1"), s1c = Rs("1->1,2", "1->1");
    const auto s2p = Rs("2->2", "2->2"), s2c = Rs("2->1,2", "2->2");
    std::vector<RateIneq> rows;
    auto receiver = [&](RvId y, RvId p, RvId c, RvId o, RateSymbol sp, RateSymbol sc, RateSymbol so) {
        rows.push_back(row({{sp, 1}}, Sense::Le, mi({y}, {p}, {c, o})));
        rows.push_back(row({{so, 1}}, Sense::Le, mi({y}, {o}, {p, c})));
        rows.push_back(row({{sp, 1}, {so, 1}}, Sense::Le, mi({y}, {p, o}, {c})));
        rows.push_back(row({{sp, 1}, {sc, 1}}, Sense::Le, mi({y}, {p, c}, {o})));
        rows.push_back(row({{sp, 1}, {sc, 1}, {so, 1}}, Sense::Le, mi({y}, {p, c, o})));
    };
    receiver(RvId::y(1), U("1->1"), U("1->1,2"), U("2->1,2"), s1p, s1c, s2c);
    receiver(RvId::y(2), U("2->2"), U("2->1,2"), U("1->1,2"), s2p, s2c, s1c);
    rows.push_back(row({{R("1->1"), 1}, {s1p, -1}, {s1c, -1}}, Sense::Eq));
    rows.push_back(row({{R("2->2"), 1}, {s2p, -1}, {s2c, -1}}, Sense::Eq));
    for (const auto& s : {s1p, s1c, s2p, s2c})
        rows.push_back(row({{s, 1}}, Sense::Ge));
    f.expected = system({R("1->1"), R("2->2"), s1p, s1c, s2p, s2c}, std::move(rows));

    PmfModel m;
    m.q = {1.0};
    m.factors = {{msg("1->1,2"), 2, {0.5, 0.5}},
                 {msg("1->1"), 2, {0.7, 0.3, 0.2, 0.8}},
                 {msg("2->1,2"), 2, {0.6, 0.4}},
                 {msg("2->2"), 2, {0.5, 0.5, 0.9, 0.1}}};
    // X_k = common xor private; canonical order puts the private codeword first
    m.encoders = {{0, 1, 1, 0}, {0, 1, 1, 0}};
    m.channel = product_channel(2, {[](const std::vector<int>& x, int y) { return bsc(x[1] ? 0.35 : 0.1, x[0], y); },
                                    [](const std::vector<int>& x, int y) { return bsc(x[0] ? 0.3 : 0.15, x[1], y); }});
    f.model = m;
    return f;
}

inline std::vector<Fixture> all_fixtures()
{
    return {fixture_p2p(), fixture_mac2(), fixture_degraded_bc(), fixture_marton2(), fixture_hk()};
}

struct FixtureReport {
    std::string name;
    std::string error; // pipeline failure, prefixed by its stage
    bool symbolic_checked = false;
    bool symbolic_match = false;
    std::vector<std::string> missing; // expected rows the pipeline did not produce
    std::vector<std::string> extra;   // produced rows not expected
    bool numeric_checked = false;
    std::size_t points = 0;
    std::size_t inside = 0;
    std::size_t disagreements = 0;
    double max_deviation = 0; // largest row violation at a disagreeing point

    bool passed() const
    {
        return error.empty() && (!symbolic_checked || symbolic_match) && (!numeric_checked || disagreements == 0);
    }
};

/// Samples `points` rate vectors uniformly in the box [0, 1.1 * max]^d
/// (max from LP over `a`) and counts points strictly inside one region but
/// outside the other by more than tol.
struct SampleResult {
    std::size_t points = 0;
    std::size_t inside = 0; // strictly inside both
    std::size_t disagreements = 0;
    double max_deviation = 0;
};

inline double worst_violation(const InstantiatedSystem& s, const std::vector<RateSymbol>& fixed,
                              const std::vector<double>& pt)
{
    // only meaningful when every variable is fixed; otherwise report the tolerance scale
    double worst = 0;
    if (s.vars.size() != fixed.size())
        return kCompareTol;
    for (std::size_t i = 0; i < s.A.size(); ++i) {
        double lhs = 0;
        for (std::size_t j = 0; j < s.vars.size(); ++j) {
            auto it = std::find(fixed.begin(), fixed.end(), s.vars[j]);
            lhs += to_double(s.A[i][j]) * pt[static_cast<std::size_t>(it - fixed.begin())];
        }
        worst = std::max(worst, lhs - to_double(s.b[i]));
    }
    return worst;
}

inline SampleResult compare_by_sampling(const InstantiatedSystem& a, const InstantiatedSystem& b,
                                        const std::vector<RateSymbol>& coords, std::size_t points, std::uint64_t seed,
                                        double tol = kCompareTol)
{
    SampleResult out;
    std::vector<double> hi;
    for (const auto& v : coords) {
        std::vector<Rational> c(a.vars.size(), Rational(0));
        auto it = std::find(a.vars.begin(), a.vars.end(), v);
        if (it == a.vars.end())
            throw Error("sampling", "region has no coordinate " + v.str());
        c[static_cast<std::size_t>(it - a.vars.begin())] = 1;
        auto res = lp_maximize(a.A, a.b, c);
        double top = res.status == LpStatus::Optimal ? to_double(res.value) : 1.0;
        hi.push_back(std::max(1.1 * top, 1e-6));
    }
    std::mt19937_64 rng(seed);
    for (std::size_t n = 0; n < points; ++n) {
        std::vector<double> pt;
        for (double h : hi)
            pt.push_back(std::uniform_real_distribution<double>(0.0, h)(rng));
        bool a_in = admits(a, coords, pt, -tol), a_near = admits(a, coords, pt, tol);
        bool b_in = admits(b, coords, pt, -tol), b_near = admits(b, coords, pt, tol);
        ++out.points;
        out.inside += a_in && b_in ? 1 : 0;
        if ((a_in && !b_near) || (b_in && !a_near)) {
            ++out.disagreements;
            out.max_deviation = std::max({out.max_deviation, worst_violation(a, coords, pt), worst_violation(b, coords, pt)});
        }
    }
    return out;
}

inline std::vector<RateSymbol> message_rates(const Scheme& s)
{
    std::vector<RateSymbol> out;
    auto msgs = s.network.messages;
    std::sort(msgs.begin(), msgs.end());
    for (const auto& m : msgs)
        out.push_back(RateSymbol::message(m));
    return out;
}

inline FixtureReport run_fixture(const Fixture& f, SvoMode mode = kDefaultSvoMode, std::size_t points = 1000,
                                 std::uint64_t seed = 1)
{
    FixtureReport rep;
    rep.name = f.name;
    PipelineOptions opt;
    opt.bounds.svo = mode;
    Derivation d;
    RateSystem got;
    try {
        d = derive(f.scheme, opt);
        got = region(d, opt);
    } catch (const Error& e) {
        rep.error = e.what();
        return rep;
    }
    if (f.symbolic) {
        rep.symbolic_checked = true;
        RateSystem want = f.expected;
        want.canonicalize();
        for (const auto& r : want.rows())
            if (std::find(got.rows().begin(), got.rows().end(), r) == got.rows().end())
                rep.missing.push_back(r.str());
        for (const auto& r : got.rows())
            if (std::find(want.rows().begin(), want.rows().end(), r) == want.rows().end())
                rep.extra.push_back(r.str());
        rep.symbolic_match = rep.missing.empty() && rep.extra.empty();
    }
    if (f.model) {
        try {
            auto pmf = compose_pmf(d.factors, *f.model);
            auto coords = message_rates(f.scheme);
            auto res = compare_by_sampling(instantiate(got, pmf), instantiate(f.expected, pmf), coords, points, seed);
            rep.numeric_checked = true;
            rep.points = res.points;
            rep.inside = res.inside;
            rep.disagreements = res.disagreements;
            rep.max_deviation = res.max_deviation;
        } catch (const Error& e) {
            rep.error = e.what();
        }
    }
    return rep;
}

} // namespace cgras
