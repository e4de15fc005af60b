#pragma once

// Single-hop network skeleton: transmitter/receiver index sets, messages
// W_{tx->rx}, and rate splitting as a rewrite of the message set.

#include "cgras/common.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cgras {

inline constexpr int kMaxNodes = 32;

/// Subset of node indices 1..kMaxNodes. Transmitters and receivers use
/// separate universes; the set itself does not know which.
class NodeSet {
public:
    constexpr NodeSet() = default;
    NodeSet(std::initializer_list<int> idx)
    {
        for (int i : idx)
            insert(i);
    }
    static constexpr NodeSet from_bits(std::uint32_t bits)
    {
        NodeSet s;
        s.bits_ = bits;
        return s;
    }

    void insert(int i)
    {
        if (i < 1 || i > kMaxNodes)
            throw Error("network", "node index " + std::to_string(i) + " outside 1.." +
                                       std::to_string(kMaxNodes));
        bits_ |= std::uint32_t{1} << (i - 1);
    }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool contains(int i) const
    {
        return i >= 1 && i <= kMaxNodes && ((bits_ >> (i - 1)) & 1u);
    }
    constexpr bool subset_of(NodeSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr int max_index() const { return 32 - std::countl_zero(bits_); }

    std::vector<int> elements() const
    {
        std::vector<int> out;
        for (int i = 1; i <= kMaxNodes; ++i)
            if (contains(i))
                out.push_back(i);
        return out;
    }

    constexpr bool operator==(const NodeSet&) const = default;

    /// Lexicographic on the sorted element lists: {1} < {1,2} < {2}.
    std::strong_ordering operator<=>(const NodeSet& o) const
    {
        auto a = elements(), b = o.elements();
        return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
    }

    std::string str() const
    {
        std::string s;
        for (int i : elements()) {
            if (!s.empty())
                s += ',';
            s += std::to_string(i);
        }
        return s;
    }

private:
    std::uint32_t bits_ = 0;
};

/// W_{tx->rx}; a message is identified by its (transmitter set, receiver set).
struct MessageId {
    NodeSet tx;
    NodeSet rx;

    bool operator==(const MessageId&) const = default;
    std::strong_ordering operator<=>(const MessageId& o) const
    {
        if (auto c = tx <=> o.tx; c != 0)
            return c;
        return rx <=> o.rx;
    }

    std::string str() const { return tx.str() + "->" + rx.str(); }
};

/// Parses "1,2->1" (the form str() produces); blanks are ignored.
inline MessageId parse_message_id(const std::string& text)
{
    std::string compact;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            compact += c;
    auto arrow = compact.find("->");
    if (arrow == std::string::npos)
        throw Error("network", "message id '" + text + "' lacks '->'");
    auto parse_side = [&](const std::string& side) {
        if (side.empty())
            throw Error("network", "message id '" + text + "' has an empty node set");
        NodeSet s;
        std::stringstream ss(side);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty() || tok.size() > 2 || tok.find_first_not_of("0123456789") != std::string::npos)
                throw Error("network", "bad node index '" + tok + "' in '" + text + "'");
            s.insert(std::stoi(tok));
        }
        return s;
    };
    return {parse_side(compact.substr(0, arrow)), parse_side(compact.substr(arrow + 2))};
}

struct NetworkSpec {
    int n_tx = 0;
    int n_rx = 0;
    std::vector<MessageId> messages; // canonical order after normalize()

    void normalize() { std::sort(messages.begin(), messages.end()); }

    bool has(const MessageId& m) const
    {
        return std::find(messages.begin(), messages.end(), m) != messages.end();
    }

    bool operator==(const NetworkSpec&) const = default;
};

inline NetworkSpec make_network(int n_tx, int n_rx, std::vector<MessageId> messages)
{
    NetworkSpec s{n_tx, n_rx, std::move(messages)};
    s.normalize();
    return s;
}

/// Every violated NetworkSpec invariant; empty means valid.
inline Report validate_network(const NetworkSpec& spec)
{
    Report r;
    if (spec.n_tx < 1 || spec.n_tx > kMaxNodes)
        r.push_back({"bad-n-tx", "n_tx must be in 1.." + std::to_string(kMaxNodes)});
    if (spec.n_rx < 1 || spec.n_rx > kMaxNodes)
        r.push_back({"bad-n-rx", "n_rx must be in 1.." + std::to_string(kMaxNodes)});
    std::set<MessageId> seen;
    for (const auto& m : spec.messages) {
        if (m.tx.empty())
            r.push_back({"empty-tx", "message " + m.str() + ": empty transmitter set"});
        if (m.rx.empty())
            r.push_back({"empty-rx", "message " + m.str() + ": empty receiver set"});
        if (m.tx.max_index() > spec.n_tx)
            r.push_back({"tx-range", "message " + m.str() + ": transmitter index out of range"});
        if (m.rx.max_index() > spec.n_rx)
            r.push_back({"rx-range", "message " + m.str() + ": receiver index out of range"});
        if (!seen.insert(m).second)
            r.push_back({"duplicate", "message " + m.str() + " declared twice"});
    }
    if (!std::is_sorted(spec.messages.begin(), spec.messages.end()))
        r.push_back({"order", "messages are not in canonical order"});
    return r;
}

/// Splits W_parent into sub-messages W_part^{[parent]}.
struct SplitDecl {
    MessageId parent;
    std::vector<MessageId> parts;

    bool operator==(const SplitDecl&) const = default;
};

/// For every original message, the post-split nodes whose rates sum to its
/// rate. `split == false` marks a pass-through (the node is the message).
struct Recomposition {
    MessageId original;
    std::vector<MessageId> parts;
    bool split = false;

    bool operator==(const Recomposition&) const = default;
};

struct SplitResult {
    NetworkSpec network; // post-split
    std::vector<Recomposition> recomposition; // in canonical order of originals

    /// Original message owning a post-split node.
    MessageId parent_of(const MessageId& node) const
    {
        for (const auto& rc : recomposition)
            if (std::find(rc.parts.begin(), rc.parts.end(), node) != rc.parts.end())
                return rc.original;
        throw Error("network", "node " + node.str() + " is not a post-split message");
    }

    bool is_split_part(const MessageId& node) const
    {
        for (const auto& rc : recomposition)
            if (std::find(rc.parts.begin(), rc.parts.end(), node) != rc.parts.end())
                return rc.split;
        return false;
    }
};

inline SplitResult apply_splits(const NetworkSpec& spec, const std::vector<SplitDecl>& splits)
{
    std::map<MessageId, const SplitDecl*> by_parent;
    for (const auto& sd : splits) {
        if (!spec.has(sd.parent))
            throw Error("apply_splits", "unknown parent message " + sd.parent.str());
        if (!by_parent.emplace(sd.parent, &sd).second)
            throw Error("apply_splits", "message " + sd.parent.str() + " split twice");
        if (sd.parts.empty())
            throw Error("apply_splits", "split of " + sd.parent.str() + " has no parts");
        std::set<MessageId> seen;
        for (const auto& p : sd.parts) {
            if (p.tx.empty() || p.rx.empty())
                throw Error("apply_splits", "part " + p.str() + " has an empty node set");
            if (!p.tx.subset_of(sd.parent.tx))
                throw Error("apply_splits", "part " + p.str() + " of " + sd.parent.str() +
                                                ": transmitter set is not a subset of the parent's");
            if (!sd.parent.rx.subset_of(p.rx))
                throw Error("apply_splits", "part " + p.str() + " of " + sd.parent.str() +
                                                ": receiver set does not contain the parent's");
            if (p.tx.max_index() > spec.n_tx || p.rx.max_index() > spec.n_rx)
                throw Error("apply_splits", "part " + p.str() + ": index out of range");
            if (!seen.insert(p).second)
                throw Error("apply_splits", "duplicate part " + p.str() + " in split of " +
                                                sd.parent.str());
        }
    }

    SplitResult out;
    out.network.n_tx = spec.n_tx;
    out.network.n_rx = spec.n_rx;
    std::set<MessageId> nodes;
    auto original_messages = spec.messages;
    std::sort(original_messages.begin(), original_messages.end());
    for (const auto& m : original_messages) {
        Recomposition rc{m, {}, false};
        if (auto it = by_parent.find(m); it != by_parent.end()) {
            rc.parts = it->second->parts;
            std::sort(rc.parts.begin(), rc.parts.end());
            rc.split = true;
        } else {
            rc.parts = {m};
        }
        for (const auto& p : rc.parts)
            if (!nodes.insert(p).second)
                throw Error("apply_splits", "post-split message " + p.str() +
                                                " would be produced twice");
        out.recomposition.push_back(std::move(rc));
    }
    out.network.messages.assign(nodes.begin(), nodes.end());
    return out;
}

} // namespace cgras
