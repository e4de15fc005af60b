#pragma once

// Assembly of the full rate system of a scheme and its projection onto the
// message rates.

#include "cgras/bounds.hpp"
#include "cgras/linear.hpp"
#include "cgras/lp.hpp"
#include "cgras/numeric.hpp"
#include "cgras/rate.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cgras {

/// Every bound plus L = (node rate) + Rb, R = sum of split rates and
/// nonnegativity of the binning, split and unsplit message rates.
inline RateSystem assemble(const Adg& a, const SplitResult& split, const BoundSet& enc,
                           const std::vector<BoundSet>& dec)
{
    std::set<RateSymbol> vars;
    std::vector<RateIneq> rows;
    const auto& sb = a.binned();
    auto binned = [&](const MessageId& m) { return std::find(sb.begin(), sb.end(), m) != sb.end(); };

    for (const auto& m : a.nodes()) {
        if (!split.network.has(m))
            throw Error("assemble", "graph node " + m.str() + " is not a post-split message");
        vars.insert(RateSymbol::codebook(m));
        vars.insert(node_rate(split, m));
        RateIneq eq;
        eq.sense = Sense::Eq;
        eq.add_term(RateSymbol::codebook(m), 1);
        eq.add_term(node_rate(split, m), -1);
        if (binned(m)) {
            vars.insert(RateSymbol::binning(m));
            eq.add_term(RateSymbol::binning(m), -1);
            RateIneq nn;
            nn.add_term(RateSymbol::binning(m), -1);
            rows.push_back(nn);
        }
        rows.push_back(eq);
        RateIneq nn;
        nn.add_term(node_rate(split, m), -1);
        rows.push_back(nn);
    }
    for (const auto& rc : split.recomposition) {
        vars.insert(RateSymbol::message(rc.original));
        if (!rc.split)
            continue;
        RateIneq eq;
        eq.sense = Sense::Eq;
        eq.add_term(RateSymbol::message(rc.original), 1);
        for (const auto& p : rc.parts) {
            if (!a.network().has(p))
                throw Error("assemble", "split part " + p.str() + " is not a graph node");
            eq.add_term(RateSymbol::split(p, rc.original), -1);
        }
        rows.push_back(eq);
    }

    auto take = [&](const BoundSet& bs) {
        for (const auto& b : bs.bounds) {
            for (const auto& [v, _] : b.lhs)
                if (!vars.count(v))
                    throw Error("assemble", "bound uses undeclared symbol " + v.str());
            rows.push_back(b);
        }
    };
    take(enc);
    for (const auto& d : dec)
        take(d);

    RateSystem sys({vars.begin(), vars.end()}, std::move(rows));
    sys.canonicalize();
    return sys;
}

/// Codebook rates first (pure substitution), then binning rates, then split
/// rates.
inline std::vector<RateSymbol> default_elimination_order(const RateSystem& sys)
{
    std::vector<RateSymbol> out;
    for (auto kind : {RateSymbol::Kind::Codebook, RateSymbol::Kind::Binning, RateSymbol::Kind::Split})
        for (const auto& v : sys.variables())
            if (v.kind() == kind)
                out.push_back(v);
    return out;
}

inline RateSystem eliminate(const RateSystem& sys, const std::vector<RateSymbol>& vars,
                            std::size_t max_inequalities = kDefaultMaxInequalities)
{
    for (const auto& v : vars)
        if (std::find(sys.variables().begin(), sys.variables().end(), v) == sys.variables().end())
            throw Error("eliminate", "variable " + v.str() + " is not in the system");
    return fourier_motzkin(sys, vars, max_inequalities);
}

/// Projection onto the original message rates.
inline RateSystem eliminate_to_messages(const RateSystem& sys, std::size_t max_inequalities = kDefaultMaxInequalities)
{
    return eliminate(sys, default_elimination_order(sys), max_inequalities);
}

/// A rate system with its constants evaluated, as exact rows A x <= b
/// (each equality contributes two rows, flagged).
struct InstantiatedSystem {
    std::vector<RateSymbol> vars;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    std::vector<bool> from_eq;
};

inline InstantiatedSystem instantiate(const RateSystem& sys, const JointPmf& p)
{
    InstantiatedSystem out;
    out.vars = sys.variables();
    for (const auto& v : sys.used_variables())
        if (std::find(out.vars.begin(), out.vars.end(), v) == out.vars.end())
            out.vars.push_back(v);
    std::sort(out.vars.begin(), out.vars.end());
    for (auto r : sys.rows()) {
        r.normalize();
        std::vector<Rational> a(out.vars.size(), Rational(0));
        for (const auto& [v, c] : r.lhs)
            a[static_cast<std::size_t>(std::find(out.vars.begin(), out.vars.end(), v) - out.vars.begin())] = c;
        Rational b = rational_from_double(eval_expr(p, r.rhs));
        out.A.push_back(a);
        out.b.push_back(b);
        out.from_eq.push_back(r.sense == Sense::Eq);
        if (r.sense == Sense::Eq) {
            for (auto& c : a)
                c = -c;
            out.A.push_back(a);
            out.b.push_back(-b);
            out.from_eq.push_back(true);
        }
    }
    return out;
}

/// Does some extension of the point (values of `fixed`, every other
/// variable free) satisfy every inequality row relaxed by `slack`? A
/// negative slack asks for interior membership; equalities stay exact.
inline bool admits(const InstantiatedSystem& s, const std::vector<RateSymbol>& fixed, const std::vector<double>& point,
                   double slack)
{
    std::vector<std::size_t> free_idx;
    std::vector<std::optional<Rational>> val(s.vars.size());
    for (std::size_t i = 0; i < fixed.size(); ++i) {
        auto it = std::find(s.vars.begin(), s.vars.end(), fixed[i]);
        if (it != s.vars.end())
            val[static_cast<std::size_t>(it - s.vars.begin())] = rational_from_double(point[i]);
    }
    for (std::size_t j = 0; j < s.vars.size(); ++j)
        if (!val[j])
            free_idx.push_back(j);
    const Rational rs = rational_from_double(slack);
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < s.A.size(); ++i) {
        Rational rhs = s.b[i] + (s.from_eq[i] ? Rational(0) : rs);
        std::vector<Rational> row;
        for (std::size_t j = 0; j < s.vars.size(); ++j) {
            if (val[j])
                rhs -= s.A[i][j] * *val[j];
            else
                row.push_back(s.A[i][j]);
        }
        if (free_idx.empty() || std::all_of(row.begin(), row.end(), [](const Rational& c) { return c == 0; })) {
            if (rhs < 0)
                return false;
            continue;
        }
        A.push_back(std::move(row));
        b.push_back(rhs);
    }
    return lp_feasible(A, b, free_idx.size());
}

/// Drops rows that an exact LP over the instantiated system certifies as
/// implied by the others (max of the row's left side over the rest is at
/// most its bound plus tol). Rows are tested in canonical order against the
/// rows still kept.
inline RateSystem prune_numeric(const RateSystem& sys, const JointPmf& p, const Rational& tol = 0)
{
    const auto& vars = sys.variables();
    auto idx = [&](const RateSymbol& v) {
        auto it = std::find(vars.begin(), vars.end(), v);
        if (it == vars.end())
            throw Error("prune_numeric", "row uses undeclared symbol " + v.str());
        return static_cast<std::size_t>(it - vars.begin());
    };
    struct NumRow {
        std::vector<Rational> a;
        Rational b;
        Sense sense;
    };
    std::vector<NumRow> num;
    for (auto r : sys.rows()) {
        r.normalize();
        NumRow n{std::vector<Rational>(vars.size(), Rational(0)), rational_from_double(eval_expr(p, r.rhs)), r.sense};
        for (const auto& [v, c] : r.lhs)
            n.a[idx(v)] = c;
        num.push_back(std::move(n));
    }

    std::vector<bool> keep(num.size(), true);
    for (std::size_t i = 0; i < num.size(); ++i) {
        if (num[i].sense != Sense::Le)
            continue;
        std::vector<std::vector<Rational>> A;
        std::vector<Rational> b;
        for (std::size_t j = 0; j < num.size(); ++j) {
            if (j == i || !keep[j])
                continue;
            A.push_back(num[j].a);
            b.push_back(num[j].b);
            if (num[j].sense == Sense::Eq) {
                std::vector<Rational> neg;
                for (const auto& c : num[j].a)
                    neg.push_back(-c);
                A.push_back(neg);
                b.push_back(-num[j].b);
            }
        }
        if (A.empty())
            continue;
        auto res = lp_maximize(A, b, num[i].a);
        if (res.status == LpStatus::Optimal && res.value <= num[i].b + tol)
            keep[i] = false;
    }
    std::vector<RateIneq> rows;
    for (std::size_t i = 0; i < num.size(); ++i)
        if (keep[i])
            rows.push_back(sys.rows()[i]);
    RateSystem out(vars, std::move(rows));
    out.canonicalize();
    return out;
}

} // namespace cgras
