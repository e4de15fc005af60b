#pragma once

// Rate symbols and the inequality systems built over them.

#include "cgras/info_algebra.hpp"
#include "cgras/linear.hpp"
#include "cgras/network.hpp"

#include <compare>
#include <string>

namespace cgras {

class RateSymbol {
public:
    /// R: original message rate. Rs: rate of a split part. Rb: binning
    /// rate. L: codebook rate, always Rs (or R) + Rb.
    enum class Kind { Message = 0, Split = 1, Binning = 2, Codebook = 3 };

    static RateSymbol message(const MessageId& m) { return {Kind::Message, m, m}; }
    static RateSymbol split(const MessageId& part, const MessageId& parent) { return {Kind::Split, part, parent}; }
    static RateSymbol binning(const MessageId& node) { return {Kind::Binning, node, node}; }
    static RateSymbol codebook(const MessageId& node) { return {Kind::Codebook, node, node}; }

    Kind kind() const { return kind_; }
    const MessageId& owner() const { return owner_; }
    const MessageId& parent() const { return parent_; }

    bool operator==(const RateSymbol&) const = default;
    std::strong_ordering operator<=>(const RateSymbol& o) const
    {
        if (kind_ != o.kind_)
            return static_cast<int>(kind_) <=> static_cast<int>(o.kind_);
        if (auto c = owner_ <=> o.owner_; c != 0)
            return c;
        return parent_ <=> o.parent_;
    }

    std::string str() const
    {
        switch (kind_) {
        case Kind::Message: return "R[" + owner_.str() + "]";
        case Kind::Split: return "R'[" + owner_.str() + "]^[" + parent_.str() + "]";
        case Kind::Binning: return "Rb[" + owner_.str() + "]";
        case Kind::Codebook: return "L[" + owner_.str() + "]";
        }
        return "?";
    }

private:
    RateSymbol(Kind k, MessageId o, MessageId p) : kind_(k), owner_(o), parent_(p) {}

    Kind kind_;
    MessageId owner_;
    MessageId parent_;
};

inline RateSymbol parse_rate_symbol(const std::string& s)
{
    auto inner = [&](std::size_t open) {
        auto close = s.find(']', open);
        if (close == std::string::npos)
            throw Error("rate", "bad rate symbol '" + s + "'");
        return std::pair{parse_message_id(s.substr(open + 1, close - open - 1)), close};
    };
    if (s.rfind("R[", 0) == 0)
        return RateSymbol::message(inner(1).first);
    if (s.rfind("Rb[", 0) == 0)
        return RateSymbol::binning(inner(2).first);
    if (s.rfind("L[", 0) == 0)
        return RateSymbol::codebook(inner(1).first);
    if (s.rfind("R'[", 0) == 0) {
        auto [part, close] = inner(2);
        if (s.compare(close + 1, 2, "^[") != 0)
            throw Error("rate", "bad split rate symbol '" + s + "'");
        return RateSymbol::split(part, inner(close + 2).first);
    }
    throw Error("rate", "bad rate symbol '" + s + "'");
}

using RateIneq = Constraint<RateSymbol, InfoSum>;
using RateSystem = LinearSystem<RateSymbol, InfoSum>;

/// Rate symbol carrying node m's message: the message rate itself when the
/// node is an unsplit message, otherwise the split rate.
inline RateSymbol node_rate(const SplitResult& split, const MessageId& node)
{
    if (split.is_split_part(node))
        return RateSymbol::split(node, split.parent_of(node));
    return RateSymbol::message(node);
}

} // namespace cgras
