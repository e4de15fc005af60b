#pragma once

// Random-variable identifiers: the time-sharing variable Q, codeword
// variables U_{tx->rx}, channel inputs X_k and channel outputs Y_z.

#include "cgras/network.hpp"

#include <compare>
#include <set>
#include <string>

namespace cgras {

class RvId {
public:
    enum class Kind { Q = 0, U = 1, X = 2, Y = 3 };

    static RvId q() { return RvId(Kind::Q, {}, 0); }
    static RvId u(const MessageId& m) { return RvId(Kind::U, m, 0); }
    static RvId x(int k) { return RvId(Kind::X, {}, k); }
    static RvId y(int z) { return RvId(Kind::Y, {}, z); }

    Kind kind() const { return kind_; }
    const MessageId& message() const { return msg_; }
    int index() const { return index_; }

    bool operator==(const RvId&) const = default;
    std::strong_ordering operator<=>(const RvId& o) const
    {
        if (kind_ != o.kind_)
            return static_cast<int>(kind_) <=> static_cast<int>(o.kind_);
        if (kind_ == Kind::U)
            return msg_ <=> o.msg_;
        return index_ <=> o.index_;
    }

    std::string str() const
    {
        switch (kind_) {
        case Kind::Q: return "Q";
        case Kind::U: return "U[" + msg_.str() + "]";
        case Kind::X: return "X" + std::to_string(index_);
        case Kind::Y: return "Y" + std::to_string(index_);
        }
        return "?";
    }

private:
    RvId(Kind k, MessageId m, int idx) : kind_(k), msg_(m), index_(idx) {}

    Kind kind_;
    MessageId msg_;
    int index_;
};

using RvSet = std::set<RvId>;

inline RvId parse_rv(const std::string& text)
{
    if (text == "Q")
        return RvId::q();
    if (text.size() > 3 && text.rfind("U[", 0) == 0 && text.back() == ']')
        return RvId::u(parse_message_id(text.substr(2, text.size() - 3)));
    if (text.size() > 1 && (text[0] == 'X' || text[0] == 'Y') &&
        text.find_first_not_of("0123456789", 1) == std::string::npos) {
        int i = std::stoi(text.substr(1));
        if (i < 1)
            throw Error("rv", "bad index in '" + text + "'");
        return text[0] == 'X' ? RvId::x(i) : RvId::y(i);
    }
    throw Error("rv", "unrecognized random variable '" + text + "'");
}

inline RvSet set_union(const RvSet& a, const RvSet& b)
{
    RvSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

inline RvSet set_minus(const RvSet& a, const RvSet& b)
{
    RvSet out;
    for (const auto& v : a)
        if (!b.count(v))
            out.insert(v);
    return out;
}

inline bool intersects(const RvSet& a, const RvSet& b)
{
    for (const auto& v : a)
        if (b.count(v))
            return true;
    return false;
}

inline std::string str(const RvSet& s, const char* sep = ",")
{
    std::string out;
    for (const auto& v : s) {
        if (!out.empty())
            out += sep;
        out += v.str();
    }
    return out;
}

} // namespace cgras
