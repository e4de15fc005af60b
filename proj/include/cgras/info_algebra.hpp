#pragma once

// Symbolic entropy algebra. Every information quantity is normalized to a
// rational combination of joint entropies H(S) ("atoms"); this basis gives a
// unique canonical form, so formal equality is map equality.

#include "cgras/chain_graph.hpp"
#include "cgras/rational.hpp"
#include "cgras/rv.hpp"

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cgras {

/// I(left; right | given). The conditioning set always contains Q.
class MiTerm {
public:
    MiTerm(RvSet left, RvSet right, RvSet given)
        : left_(std::move(left)), right_(std::move(right)), given_(std::move(given))
    {
        given_.insert(RvId::q());
        if (left_.empty() || right_.empty())
            throw Error("info-algebra", "mutual information with an empty argument");
        if (intersects(left_, right_) || intersects(left_, given_) || intersects(right_, given_))
            throw Error("info-algebra", "overlapping arguments in I(" + cgras::str(left_) + "; " +
                                            cgras::str(right_) + " | " + cgras::str(given_) + ")");
        if (right_ < left_)
            std::swap(left_, right_);
    }

    const RvSet& left() const { return left_; }
    const RvSet& right() const { return right_; }
    const RvSet& given() const { return given_; }

    bool operator==(const MiTerm&) const = default;
    auto operator<=>(const MiTerm&) const = default;

    std::string str() const
    {
        return "I(" + cgras::str(left_) + "; " + cgras::str(right_) + " | " + cgras::str(given_) + ")";
    }

private:
    RvSet left_, right_, given_;
};

class InfoExpr {
public:
    using Atoms = std::map<RvSet, Rational>;

    InfoExpr() = default;
    static InfoExpr entropy(const RvSet& s, Rational coef = 1)
    {
        InfoExpr e;
        e.add(s, coef);
        return e;
    }

    const Atoms& atoms() const { return atoms_; }
    bool is_zero() const { return atoms_.empty(); }

    InfoExpr& operator+=(const InfoExpr& o)
    {
        for (const auto& [s, c] : o.atoms_)
            add(s, c);
        return *this;
    }
    InfoExpr& operator-=(const InfoExpr& o)
    {
        for (const auto& [s, c] : o.atoms_)
            add(s, -c);
        return *this;
    }
    InfoExpr& operator*=(const Rational& k)
    {
        if (k == 0) {
            atoms_.clear();
            return *this;
        }
        for (auto& [_, c] : atoms_)
            c *= k;
        return *this;
    }
    friend InfoExpr operator+(InfoExpr a, const InfoExpr& b) { return a += b; }
    friend InfoExpr operator-(InfoExpr a, const InfoExpr& b) { return a -= b; }
    friend InfoExpr operator*(const Rational& k, InfoExpr a) { return a *= k; }
    InfoExpr operator-() const { return Rational(-1) * *this; }

    bool operator==(const InfoExpr& o) const { return atoms_ == o.atoms_; }
    std::strong_ordering operator<=>(const InfoExpr& o) const
    {
        auto ia = atoms_.begin(), ib = o.atoms_.begin();
        for (; ia != atoms_.end() && ib != o.atoms_.end(); ++ia, ++ib) {
            if (auto c = ia->first <=> ib->first; c != 0)
                return c;
            if (ia->second != ib->second)
                return ia->second < ib->second ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        if (ia == atoms_.end() && ib == o.atoms_.end())
            return std::strong_ordering::equal;
        return ia == atoms_.end() ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    std::string str() const
    {
        if (atoms_.empty())
            return "0";
        std::string s;
        for (const auto& [set, c] : atoms_) {
            std::string h = "H(" + cgras::str(set) + ")";
            s += term_prefix(s.empty(), c) + h;
        }
        return s;
    }

    static std::string term_prefix(bool first, const Rational& c)
    {
        Rational mag = abs(c);
        std::string s = first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        if (mag != 1)
            s += to_string(mag) + " ";
        return s;
    }

private:
    void add(const RvSet& s, const Rational& c)
    {
        if (s.empty() || c == 0)
            return; // H(empty) = 0
        auto [it, fresh] = atoms_.emplace(s, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                atoms_.erase(it);
        }
    }

    Atoms atoms_;
};

/// I(A;B|C) = H(AC) + H(BC) - H(ABC) - H(C).
inline InfoExpr mi_to_expr(const MiTerm& t)
{
    const auto& c = t.given();
    InfoExpr e = InfoExpr::entropy(set_union(t.left(), c));
    e += InfoExpr::entropy(set_union(t.right(), c));
    e -= InfoExpr::entropy(set_union(set_union(t.left(), t.right()), c));
    e -= InfoExpr::entropy(c);
    return e;
}

inline InfoExpr combine(const std::vector<std::pair<Rational, InfoExpr>>& parts)
{
    InfoExpr out;
    for (const auto& [k, e] : parts)
        out += k * e;
    return out;
}

/// Recognizes an expression that is exactly one conditional mutual
/// information with coefficient 1.
inline std::optional<MiTerm> as_single_mi(const InfoExpr& e)
{
    if (e.atoms().size() != 4)
        return std::nullopt;
    std::vector<RvSet> pos, neg;
    for (const auto& [s, c] : e.atoms()) {
        if (c == 1)
            pos.push_back(s);
        else if (c == -1)
            neg.push_back(s);
        else
            return std::nullopt;
    }
    if (pos.size() != 2 || neg.size() != 2)
        return std::nullopt;
    for (int flip = 0; flip < 2; ++flip) {
        const auto& small = neg[flip];
        const auto& big = neg[1 - flip];
        if (set_union(pos[0], pos[1]) != big)
            continue;
        RvSet common;
        for (const auto& v : pos[0])
            if (pos[1].count(v))
                common.insert(v);
        if (common != small || !small.count(RvId::q()))
            continue;
        auto a = set_minus(pos[0], small), b = set_minus(pos[1], small);
        if (a.empty() || b.empty())
            continue;
        return MiTerm(a, b, small);
    }
    return std::nullopt;
}

/// True when the term is certified zero under the graph's factorization:
/// a degenerate argument, or d-separation of the arguments given the rest.
inline bool vanishes_under(const RvSet& left, const RvSet& right, const RvSet& given, const Adg& a)
{
    if (left.empty() || right.empty())
        return true;
    RvSet g = given;
    g.insert(RvId::q());
    return d_separated(a, left, right, g);
}

inline bool vanishes_under(const MiTerm& t, const Adg& a)
{
    return vanishes_under(t.left(), t.right(), t.given(), a);
}

/// A rational combination of mutual-information terms that keeps its
/// presentation for printing while comparing by canonical entropy form.
class InfoSum {
public:
    InfoSum() = default;
    explicit InfoSum(const MiTerm& t, Rational coef = 1) { add(t, coef); }

    const std::map<MiTerm, Rational>& terms() const { return terms_; }
    const InfoExpr& expr() const { return expr_; }
    bool is_zero() const { return expr_.is_zero(); }

    void add(const MiTerm& t, const Rational& coef)
    {
        if (coef == 0)
            return;
        auto [it, fresh] = terms_.emplace(t, coef);
        if (!fresh) {
            it->second += coef;
            if (it->second == 0)
                terms_.erase(it);
        }
        expr_ += coef * mi_to_expr(t);
    }

    InfoSum& operator+=(const InfoSum& o)
    {
        for (const auto& [t, c] : o.terms_)
            add(t, c);
        return *this;
    }
    InfoSum& operator-=(const InfoSum& o)
    {
        for (const auto& [t, c] : o.terms_)
            add(t, -c);
        return *this;
    }
    InfoSum& operator*=(const Rational& k)
    {
        if (k == 0) {
            terms_.clear();
            expr_ = {};
            return *this;
        }
        for (auto& [_, c] : terms_)
            c *= k;
        expr_ *= k;
        return *this;
    }
    friend InfoSum operator+(InfoSum a, const InfoSum& b) { return a += b; }
    friend InfoSum operator-(InfoSum a, const InfoSum& b) { return a -= b; }
    friend InfoSum operator*(const Rational& k, InfoSum a) { return a *= k; }

    /// Equality and order follow the canonical entropy form only.
    bool operator==(const InfoSum& o) const { return expr_ == o.expr_; }
    std::strong_ordering operator<=>(const InfoSum& o) const { return expr_ <=> o.expr_; }

    /// Sound but incomplete: zero, a nonnegative combination of terms, or
    /// a single mutual information in disguise.
    bool provably_nonnegative() const
    {
        if (expr_.is_zero())
            return true;
        bool all_pos = true;
        for (const auto& [_, c] : terms_)
            if (c < 0)
                all_pos = false;
        return all_pos || as_single_mi(expr_).has_value();
    }

    std::string str() const
    {
        if (expr_.is_zero())
            return "0";
        if (terms_.empty())
            return expr_.str();
        std::string s;
        for (const auto& [t, c] : terms_)
            s += InfoExpr::term_prefix(s.empty(), c) + t.str();
        return s;
    }

private:
    std::map<MiTerm, Rational> terms_;
    InfoExpr expr_;
};

} // namespace cgras
