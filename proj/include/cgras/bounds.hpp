#pragma once

// Rate bounds of a scheme: covering conditions on the binning rates of the
// binned codewords (encoding) and packing conditions on the codebook rates
// seen by each receiver (decoding).

#include "cgras/chain_graph.hpp"
#include "cgras/info_algebra.hpp"
#include "cgras/rate.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace cgras {

/// Which binning rates the encoding bound for a closed subset S sums over:
/// the rates of S itself, or of its complement within the binned set.
enum class SvoMode { Subset, Complement };

inline constexpr SvoMode kDefaultSvoMode = SvoMode::Complement;

inline const char* to_string(SvoMode m) { return m == SvoMode::Subset ? "subset" : "complement"; }

inline SvoMode parse_svo_mode(const std::string& s)
{
    if (s == "subset")
        return SvoMode::Subset;
    if (s == "complement")
        return SvoMode::Complement;
    throw Error("options", "unknown svo mode '" + s + "' (expected subset|complement)");
}

/// AllClosed enumerates every subset closed under superposition
/// descendants; ClassAtomic additionally keeps joint-binning classes whole.
enum class SubsetPolicy { AllClosed, ClassAtomic };

inline const char* to_string(SubsetPolicy p) { return p == SubsetPolicy::AllClosed ? "closed" : "class-atomic"; }

inline SubsetPolicy parse_subset_policy(const std::string& s)
{
    if (s == "closed")
        return SubsetPolicy::AllClosed;
    if (s == "class-atomic")
        return SubsetPolicy::ClassAtomic;
    throw Error("options", "unknown subset policy '" + s + "' (expected closed|class-atomic)");
}

struct BoundOptions {
    SvoMode svo = kDefaultSvoMode;
    SubsetPolicy subsets = SubsetPolicy::AllClosed;
};

struct SubsetFamily {
    NodeList base;
    std::vector<NodeList> members; // canonical order: by size, then lexicographic
};

struct BoundSet {
    std::vector<RateIneq> bounds;
    std::vector<std::string> warnings;
};

/// Nodes binned against at least one codeword (they carry a bin index).
inline NodeList binned_set(const Adg& a) { return a.binned(); }

/// Codewords decoded at receiver z.
inline NodeList decoded_set(const Adg& a, int z)
{
    NodeList out;
    for (const auto& m : a.nodes())
        if (m.rx.contains(z))
            out.push_back(m);
    return out;
}

inline SubsetFamily valid_subsets(NodeList base, const Adg& a, SubsetPolicy policy = SubsetPolicy::AllClosed)
{
    std::sort(base.begin(), base.end());
    if (base.size() > 24)
        throw Error("valid_subsets", "base set of " + std::to_string(base.size()) + " codewords is too large");
    auto in_base = [&](const MessageId& m) { return std::binary_search(base.begin(), base.end(), m); };
    SubsetFamily fam{base, {}};
    const std::size_t n = base.size();
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        NodeList s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1u)
                s.push_back(base[i]);
        auto in_s = [&](const MessageId& m) { return std::binary_search(s.begin(), s.end(), m); };
        bool ok = true;
        for (const auto& m : s)
            for (const auto& d : a.superposition_descendants(m))
                if (in_base(d) && !in_s(d))
                    ok = false;
        if (ok && policy == SubsetPolicy::ClassAtomic)
            for (const auto& cls : a.joint_bins()) {
                int inside = 0, total = 0;
                for (const auto& m : cls)
                    if (in_base(m)) {
                        ++total;
                        inside += in_s(m) ? 1 : 0;
                    }
                if (inside != 0 && inside != total)
                    ok = false;
            }
        if (ok)
            fam.members.push_back(std::move(s));
    }
    std::stable_sort(fam.members.begin(), fam.members.end(), [](const NodeList& x, const NodeList& y) {
        if (x.size() != y.size())
            return x.size() < y.size();
        return x < y;
    });
    return fam;
}

namespace detail {

inline RvSet codewords(const NodeList& l)
{
    RvSet s;
    for (const auto& m : l)
        s.insert(RvId::u(m));
    return s;
}

inline NodeList intersect(const NodeList& a, const NodeList& b)
{
    NodeList out;
    for (const auto& m : a)
        if (std::find(b.begin(), b.end(), m) != b.end())
            out.push_back(m);
    return out;
}

inline NodeList minus(const NodeList& a, const NodeList& b)
{
    NodeList out;
    for (const auto& m : a)
        if (std::find(b.begin(), b.end(), m) == b.end())
            out.push_back(m);
    return out;
}

// Adds I(left; right | given, Q) unless it is degenerate or certified zero.
// A codeword that is both a superposition and a binning parent sits in the
// conditioning set; I(A; B | C) = I(A; B \ C | C) drops it from the argument.
inline void add_mi(InfoSum& sum, const Adg& a, const RvSet& left, const RvSet& right, const RvSet& given,
                   const Rational& coef = 1)
{
    RvSet l = set_minus(left, given), r = set_minus(right, given);
    if (vanishes_under(l, r, given, a))
        return;
    sum.add(MiTerm(l, r, given), coef);
}

} // namespace detail

/// Sum over binned codewords of I(U; binning parents | superposition parents, Q):
/// the divergence between the encoding and codebook distributions.
inline InfoSum encoding_distance(const Adg& a)
{
    InfoSum out;
    for (const auto& m : a.binned())
        detail::add_mi(out, a, {RvId::u(m)}, detail::codewords(a.binning_parents(m)),
                       detail::codewords(a.superposition_parents(m)));
    return out;
}

/// Covering credit of the subset S: for each codeword in S, its correlation
/// with its binning parents and with the binned codewords outside S that
/// are oriented after it. With S equal to the whole binned set this equals
/// encoding_distance(), and for S empty it is zero.
inline InfoSum covering_credit(const Adg& a, const NodeList& s)
{
    InfoSum out;
    auto rest = detail::minus(a.binned(), s);
    for (const auto& m : s) {
        RvSet related = detail::codewords(a.binning_parents(m));
        for (const auto& c : detail::intersect(a.binning_children(m), rest))
            related.insert(RvId::u(c));
        detail::add_mi(out, a, {RvId::u(m)}, related, detail::codewords(a.superposition_parents(m)));
    }
    return out;
}

inline BoundSet encoding_bounds(const Adg& a, const BoundOptions& opt = {})
{
    BoundSet out;
    const auto& sb = a.binned();
    if (sb.empty())
        return out;
    InfoSum distance = encoding_distance(a);
    for (const auto& s : valid_subsets(sb, a, opt.subsets).members) {
        InfoSum rhs = distance - covering_credit(a, s);
        NodeList summed = opt.svo == SvoMode::Subset ? s : detail::minus(sb, s);
        RateIneq r;
        r.sense = Sense::Ge;
        for (const auto& m : summed)
            r.add_term(RateSymbol::binning(m), 1);
        r.rhs = rhs;
        // sum of nonnegative rates >= (something provably <= 0) says nothing
        if (provably_nonnegative(Rational(-1) * rhs))
            continue;
        out.bounds.push_back(std::move(r));
    }
    return out;
}

inline BoundSet decoding_bounds(const Adg& a, int z, const BoundOptions& opt = {})
{
    BoundSet out;
    auto base = decoded_set(a, z);
    if (base.empty()) {
        out.warnings.push_back("receiver " + std::to_string(z) + " decodes no codeword");
        return out;
    }
    for (const auto& s : valid_subsets(base, a, opt.subsets).members) {
        if (s.empty())
            continue;
        auto rest = detail::minus(base, s);
        InfoSum rhs;
        detail::add_mi(rhs, a, {RvId::y(z)}, detail::codewords(s), detail::codewords(rest));
        for (const auto& m : s)
            detail::add_mi(rhs, a, {RvId::u(m)}, detail::codewords(detail::intersect(a.binning_parents(m), s)),
                           detail::codewords(detail::intersect(a.superposition_parents(m), rest)));
        RateIneq r;
        r.sense = Sense::Le;
        for (const auto& m : s)
            r.add_term(RateSymbol::codebook(m), 1);
        r.rhs = rhs;
        out.bounds.push_back(std::move(r));
    }
    return out;
}

} // namespace cgras
