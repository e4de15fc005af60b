#pragma once

// End-to-end derivation: scheme -> split network -> graph -> assumption
// check -> ADG -> bounds -> assembled system -> region over message rates.

#include "cgras/bounds.hpp"
#include "cgras/chain_graph.hpp"
#include "cgras/network.hpp"
#include "cgras/polyhedra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cgras {

/// A coding scheme as written in a scheme file. Edges and classes refer to
/// post-split messages.
struct Scheme {
    NetworkSpec network;
    std::vector<SplitDecl> splits;
    std::vector<std::pair<MessageId, MessageId>> superposition; // (bottom, top)
    std::vector<std::pair<MessageId, MessageId>> binning;       // (victim, binner)
    std::vector<NodeList> joint_binning;
    int q_cardinality = 1;
    std::optional<SvoMode> svo;

    bool operator==(const Scheme&) const = default;

    /// Joint-binning classes expand to mutual binning between all members.
    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        for (const auto& [b, t] : superposition)
            out.push_back(cgras::superposition(b, t));
        for (const auto& [v, b] : binning)
            out.push_back(cgras::binning(v, b));
        for (const auto& cls : joint_binning)
            for (const auto& m : cls)
                for (const auto& n : cls)
                    if (m != n)
                        out.push_back(cgras::binning(m, n));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
};

struct PipelineOptions {
    BoundOptions bounds;
    std::size_t max_inequalities = kDefaultMaxInequalities;
};

struct Derivation {
    SplitResult split;
    Cgras graph;
    Adg adg;
    Factorization factors;
    BoundSet encoding;
    std::vector<BoundSet> decoding; // receiver z at index z - 1
    RateSystem assembled;
    std::vector<std::string> warnings;
};

/// Split and build the graph; throws with the failing stage on invalid input.
inline std::pair<SplitResult, Cgras> prepare(const Scheme& s)
{
    if (auto r = validate_network(make_network(s.network.n_tx, s.network.n_rx, s.network.messages)); !r.empty())
        throw Error("validate_network", r.front().message);
    auto split = apply_splits(s.network, s.splits);
    auto g = build(split.network, s.edges());
    return {std::move(split), std::move(g)};
}

/// Everything up to the assembled system (no elimination).
inline Derivation derive(const Scheme& s, const PipelineOptions& opt = {})
{
    auto [split, g] = prepare(s);
    if (auto r = check_assumptions(g); !r.empty())
        throw Error("check_assumptions", r.front().code + ": " + r.front().message);
    Derivation d{std::move(split), std::move(g), {}, {}, {}, {}, {}, {}};
    d.adg = orient(d.graph);
    d.factors = factorize(d.adg);
    d.encoding = encoding_bounds(d.adg, opt.bounds);
    for (int z = 1; z <= d.adg.network().n_rx; ++z) {
        d.decoding.push_back(decoding_bounds(d.adg, z, opt.bounds));
        for (const auto& w : d.decoding.back().warnings)
            d.warnings.push_back(w);
    }
    d.assembled = assemble(d.adg, d.split, d.encoding, d.decoding);
    return d;
}

inline RateSystem region(const Derivation& d, const PipelineOptions& opt = {})
{
    return eliminate_to_messages(d.assembled, opt.max_inequalities);
}

inline RateSystem region(const Scheme& s, const PipelineOptions& opt = {}) { return region(derive(s, opt), opt); }

} // namespace cgras
