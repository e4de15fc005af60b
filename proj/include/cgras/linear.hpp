#pragma once

// Linear constraint systems over an ordered variable type with exact
// rational coefficients and a pluggable constant type (exact rationals for
// numeric systems, symbolic InfoSum for rate regions).

#include "cgras/common.hpp"
#include "cgras/info_algebra.hpp"
#include "cgras/rational.hpp"

#include <algorithm>
#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace cgras {

enum class Sense { Le, Ge, Eq };

inline const char* to_string(Sense s)
{
    switch (s) {
    case Sense::Le: return "<=";
    case Sense::Ge: return ">=";
    case Sense::Eq: return "=";
    }
    return "?";
}

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool provably_nonnegative(const Rational& r) { return r >= 0; }
inline std::string to_string_const(const Rational& r) { return to_string(r); }
inline bool is_zero(const InfoSum& s) { return s.is_zero(); }
inline bool provably_nonnegative(const InfoSum& s) { return s.provably_nonnegative(); }
inline std::string to_string_const(const InfoSum& s) { return s.str(); }

template <class Var, class Const>
struct Constraint {
    std::map<Var, Rational> lhs;
    Sense sense = Sense::Le;
    Const rhs{};

    Rational coef(const Var& v) const
    {
        auto it = lhs.find(v);
        return it == lhs.end() ? Rational(0) : it->second;
    }

    void add_term(const Var& v, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, fresh] = lhs.emplace(v, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0)
                lhs.erase(it);
        }
    }

    /// Multiplies both sides; a negative factor flips the sense.
    void scale(const Rational& k)
    {
        for (auto& [_, c] : lhs)
            c *= k;
        rhs = k * rhs;
        if (k < 0 && sense != Sense::Eq)
            sense = sense == Sense::Le ? Sense::Ge : Sense::Le;
    }

    /// Ge rewritten as Le; coefficients scaled to coprime integers, with a
    /// positive first coefficient for equalities.
    void normalize()
    {
        if (sense == Sense::Ge)
            scale(Rational(-1));
        if (lhs.empty())
            return;
        mpz_class num_gcd = 0, den_lcm = 1;
        for (const auto& [_, c] : lhs) {
            num_gcd = gcd(num_gcd, mpz_class(c.get_num()));
            den_lcm = lcm(den_lcm, mpz_class(c.get_den()));
        }
        Rational k(den_lcm, num_gcd);
        k.canonicalize();
        if (sense == Sense::Eq && lhs.begin()->second < 0)
            k = -k;
        scale(k);
    }

    bool operator==(const Constraint& o) const
    {
        return sense == o.sense && lhs == o.lhs && rhs == o.rhs;
    }
    std::strong_ordering operator<=>(const Constraint& o) const
    {
        if (sense != o.sense)
            return static_cast<int>(sense) <=> static_cast<int>(o.sense);
        auto ia = lhs.begin(), ib = o.lhs.begin();
        for (; ia != lhs.end() && ib != o.lhs.end(); ++ia, ++ib) {
            if (auto c = ia->first <=> ib->first; c != 0)
                return c;
            if (ia->second != ib->second)
                return ia->second < ib->second ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        if (ia != lhs.end() || ib != o.lhs.end())
            return ia == lhs.end() ? std::strong_ordering::less : std::strong_ordering::greater;
        if (rhs == o.rhs)
            return std::strong_ordering::equal;
        return rhs < o.rhs ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    /// "a + 2 b <= c"; an all-negative Le row prints as its Ge mirror.
    std::string str() const
    {
        Constraint c = *this;
        bool all_neg = !c.lhs.empty();
        for (const auto& [_, k] : c.lhs)
            all_neg = all_neg && k < 0;
        if (c.sense == Sense::Le && all_neg)
            c.scale(Rational(-1));
        std::string s;
        for (const auto& [v, k] : c.lhs)
            s += InfoExpr::term_prefix(s.empty(), k) + v.str();
        if (s.empty())
            s = "0";
        return s + " " + to_string(c.sense) + " " + to_string_const(c.rhs);
    }
};

template <class Var, class Const>
class LinearSystem {
public:
    using Row = Constraint<Var, Const>;

    LinearSystem() = default;
    LinearSystem(std::vector<Var> vars, std::vector<Row> rows)
        : vars_(std::move(vars)), rows_(std::move(rows))
    {
        std::sort(vars_.begin(), vars_.end());
        vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
    }

    const std::vector<Var>& variables() const { return vars_; }
    const std::vector<Row>& rows() const { return rows_; }
    std::vector<Row>& rows() { return rows_; }
    void add(Row r) { rows_.push_back(std::move(r)); }
    void set_variables(std::vector<Var> v)
    {
        vars_ = std::move(v);
        std::sort(vars_.begin(), vars_.end());
    }

    /// Variables that actually occur in some row.
    std::vector<Var> used_variables() const
    {
        std::set<Var> s;
        for (const auto& r : rows_)
            for (const auto& [v, _] : r.lhs)
                s.insert(v);
        return {s.begin(), s.end()};
    }

    /// Normalizes rows, drops tautologies (0 <= c with c provably >= 0,
    /// 0 = 0) and syntactic duplicates, and sorts.
    void canonicalize()
    {
        std::vector<Row> out;
        for (auto r : rows_) {
            r.normalize();
            if (r.lhs.empty()) {
                if (r.sense == Sense::Le && provably_nonnegative(r.rhs))
                    continue;
                if (r.sense == Sense::Eq && is_zero(r.rhs))
                    continue;
            }
            out.push_back(std::move(r));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        rows_ = std::move(out);
    }

    /// canonicalize() plus dominance: of two Le rows with the same left
    /// side, the one whose bound exceeds the other by a provably
    /// nonnegative constant is dropped.
    void prune_dominated()
    {
        canonicalize();
        std::vector<bool> drop(rows_.size(), false);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (drop[i] || rows_[i].sense != Sense::Le)
                continue;
            for (std::size_t j = 0; j < rows_.size(); ++j) {
                if (i == j || drop[j] || rows_[j].sense != Sense::Le || rows_[j].lhs != rows_[i].lhs)
                    continue;
                if (provably_nonnegative(rows_[j].rhs - rows_[i].rhs))
                    drop[j] = true;
            }
        }
        std::vector<Row> kept;
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (!drop[i])
                kept.push_back(rows_[i]);
        rows_ = std::move(kept);
    }

    bool operator==(const LinearSystem& o) const { return vars_ == o.vars_ && rows_ == o.rows_; }

    std::string str() const
    {
        std::string s;
        for (const auto& r : rows_)
            s += r.str() + "\n";
        return s;
    }

private:
    std::vector<Var> vars_;
    std::vector<Row> rows_;
};

/// Raised when Fourier-Motzkin would exceed the configured row budget.
class BlowupError : public Error {
public:
    BlowupError(std::size_t rows, std::size_t cap)
        : Error("eliminate", "intermediate system has " + std::to_string(rows) +
                                 " inequalities, above the cap of " + std::to_string(cap))
    {
    }
};

inline constexpr std::size_t kDefaultMaxInequalities = 100000;

/// Projects the system onto the variables not in `elim`, in the given
/// order. A variable that occurs in an equality is substituted out;
/// otherwise it is removed by pairwise Fourier-Motzkin combination with
/// positive multipliers. Chernikov's rule discards combinations of more
/// than (steps + 1) original rows, which are always redundant.
template <class Var, class Const>
LinearSystem<Var, Const> fourier_motzkin(const LinearSystem<Var, Const>& sys, const std::vector<Var>& elim,
                                         std::size_t max_rows = kDefaultMaxInequalities)
{
    using Row = Constraint<Var, Const>;
    struct Tracked {
        Row row;
        std::vector<std::size_t> history; // sorted ids of original inequality rows
    };

    std::vector<Tracked> rows;
    std::size_t next_id = 0;
    for (auto r : sys.rows()) {
        r.normalize();
        std::vector<std::size_t> h;
        if (r.sense == Sense::Le)
            h.push_back(next_id++);
        rows.push_back({std::move(r), std::move(h)});
    }

    auto merge = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        std::vector<std::size_t> out;
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    };

    auto tidy = [&](std::vector<Tracked>& rs) {
        std::vector<Tracked> out;
        for (auto& t : rs) {
            t.row.normalize();
            if (t.row.lhs.empty()) {
                if (t.row.sense == Sense::Le && provably_nonnegative(t.row.rhs))
                    continue;
                if (t.row.sense == Sense::Eq && is_zero(t.row.rhs))
                    continue;
            }
            out.push_back(std::move(t));
        }
        std::sort(out.begin(), out.end(), [](const Tracked& a, const Tracked& b) {
            if (a.row != b.row)
                return a.row < b.row;
            return a.history.size() < b.history.size();
        });
        std::vector<Tracked> uniq;
        for (auto& t : out)
            if (uniq.empty() || uniq.back().row != t.row)
                uniq.push_back(std::move(t));
        rs = std::move(uniq);
    };

    std::size_t fm_steps = 0;
    for (const auto& v : elim) {
        auto eq = std::find_if(rows.begin(), rows.end(), [&](const Tracked& t) {
            return t.row.sense == Sense::Eq && t.row.coef(v) != 0;
        });
        if (eq != rows.end()) {
            Row pivot = eq->row;
            rows.erase(eq);
            Rational pc = pivot.coef(v);
            for (auto& t : rows) {
                Rational c = t.row.coef(v);
                if (c == 0)
                    continue;
                // row - (c / pc) * pivot cancels v
                Rational k = -c / pc;
                for (const auto& [w, a] : pivot.lhs)
                    t.row.add_term(w, k * a);
                t.row.rhs = t.row.rhs + k * pivot.rhs;
            }
            tidy(rows);
            continue;
        }

        std::vector<Tracked> pos, neg, next;
        for (auto& t : rows) {
            Rational c = t.row.coef(v);
            if (c > 0)
                pos.push_back(std::move(t));
            else if (c < 0)
                neg.push_back(std::move(t));
            else
                next.push_back(std::move(t));
        }
        if (pos.empty() && neg.empty()) {
            rows = std::move(next);
            continue;
        }
        ++fm_steps;
        for (const auto& p : pos)
            for (const auto& n : neg) {
                auto h = merge(p.history, n.history);
                if (h.size() > fm_steps + 1)
                    continue;
                Rational kp = -n.row.coef(v), kn = p.row.coef(v);
                Row r;
                r.sense = Sense::Le;
                for (const auto& [w, a] : p.row.lhs)
                    r.add_term(w, kp * a);
                for (const auto& [w, a] : n.row.lhs)
                    r.add_term(w, kn * a);
                r.lhs.erase(v);
                r.rhs = kp * p.row.rhs + kn * n.row.rhs;
                next.push_back({std::move(r), std::move(h)});
                if (next.size() > max_rows)
                    throw BlowupError(next.size(), max_rows);
            }
        rows = std::move(next);
        tidy(rows);
    }

    std::vector<Var> vars;
    for (const auto& v : sys.variables())
        if (std::find(elim.begin(), elim.end(), v) == elim.end())
            vars.push_back(v);
    std::vector<Row> out;
    for (auto& t : rows)
        out.push_back(std::move(t.row));
    LinearSystem<Var, Const> res(std::move(vars), std::move(out));
    res.prune_dominated();
    return res;
}

} // namespace cgras
