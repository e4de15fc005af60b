#pragma once

// Numeric instantiation on a discrete memoryless channel: joint pmfs over
// (Q, codewords, inputs, outputs), entropies in bits, evaluation of symbolic
// expressions and of eliminated rate regions.

#include "cgras/chain_graph.hpp"
#include "cgras/common.hpp"
#include "cgras/info_algebra.hpp"
#include "cgras/rate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace cgras {

inline constexpr double kNormTol = 1e-12;   // normalization and KL tolerance
inline constexpr double kCompareTol = 1e-9; // numeric comparisons of information quantities

struct Axis {
    RvId rv;
    int card;

    bool operator==(const Axis&) const = default;
};

/// Dense joint distribution; the table is row-major over `axes` (first
/// axis varies slowest).
class JointPmf {
public:
    JointPmf() = default;
    JointPmf(std::vector<Axis> axes, std::vector<double> table) : axes_(std::move(axes)), table_(std::move(table)) {}

    const std::vector<Axis>& axes() const { return axes_; }
    const std::vector<double>& table() const { return table_; }
    std::vector<double>& table() { return table_; }

    std::size_t size() const
    {
        std::size_t n = 1;
        for (const auto& a : axes_)
            n *= static_cast<std::size_t>(a.card);
        return n;
    }

    std::optional<std::size_t> axis_of(const RvId& v) const
    {
        for (std::size_t i = 0; i < axes_.size(); ++i)
            if (axes_[i].rv == v)
                return i;
        return std::nullopt;
    }

    std::vector<std::size_t> axis_indices(const RvSet& s) const
    {
        std::vector<std::size_t> idx;
        for (const auto& v : s) {
            auto i = axis_of(v);
            if (!i)
                throw Error("numeric", "pmf has no axis for " + v.str());
            idx.push_back(*i);
        }
        return idx;
    }

    /// Decodes a flat table index into one value per axis.
    std::vector<int> config(std::size_t flat) const
    {
        std::vector<int> c(axes_.size());
        for (std::size_t i = axes_.size(); i-- > 0;) {
            c[i] = static_cast<int>(flat % static_cast<std::size_t>(axes_[i].card));
            flat /= static_cast<std::size_t>(axes_[i].card);
        }
        return c;
    }

    /// Marginal over the given axes (row-major in the given order).
    std::vector<double> marginal(const std::vector<std::size_t>& idx) const
    {
        std::size_t n = 1;
        for (auto i : idx)
            n *= static_cast<std::size_t>(axes_[i].card);
        std::vector<double> out(n, 0.0);
        for (std::size_t f = 0; f < table_.size(); ++f) {
            if (table_[f] == 0.0)
                continue;
            auto c = config(f);
            out[sub_index(c, idx)] += table_[f];
        }
        return out;
    }

    std::size_t sub_index(const std::vector<int>& c, const std::vector<std::size_t>& idx) const
    {
        std::size_t k = 0;
        for (auto i : idx)
            k = k * static_cast<std::size_t>(axes_[i].card) + static_cast<std::size_t>(c[i]);
        return k;
    }

private:
    std::vector<Axis> axes_;
    std::vector<double> table_;
};

/// Channel law P(y_1..y_M | x_1..x_N), row-major over inputs then outputs.
struct DmcSpec {
    std::vector<int> inputs;  // alphabet sizes of X_1..X_N
    std::vector<int> outputs; // alphabet sizes of Y_1..Y_M
    std::vector<double> table;

    std::size_t input_configs() const
    {
        return std::accumulate(inputs.begin(), inputs.end(), std::size_t{1},
                               [](std::size_t a, int b) { return a * static_cast<std::size_t>(b); });
    }
    std::size_t output_configs() const
    {
        return std::accumulate(outputs.begin(), outputs.end(), std::size_t{1},
                               [](std::size_t a, int b) { return a * static_cast<std::size_t>(b); });
    }

    bool operator==(const DmcSpec&) const = default;
};

inline Report validate_dmc(const DmcSpec& ch)
{
    Report r;
    if (ch.inputs.empty() || ch.outputs.empty())
        r.push_back({"channel-shape", "channel needs at least one input and one output"});
    for (int c : ch.inputs)
        if (c < 1)
            r.push_back({"channel-shape", "input alphabet size must be positive"});
    for (int c : ch.outputs)
        if (c < 1)
            r.push_back({"channel-shape", "output alphabet size must be positive"});
    if (!r.empty())
        return r;
    const auto nx = ch.input_configs(), ny = ch.output_configs();
    if (ch.table.size() != nx * ny) {
        r.push_back({"channel-shape", "channel table has " + std::to_string(ch.table.size()) +
                                          " entries, expected " + std::to_string(nx * ny)});
        return r;
    }
    for (std::size_t x = 0; x < nx; ++x) {
        double s = 0;
        for (std::size_t y = 0; y < ny; ++y) {
            double p = ch.table[x * ny + y];
            if (!(p >= 0) || !std::isfinite(p))
                r.push_back({"channel-negative", "channel entry for input config " + std::to_string(x) +
                                                     " is negative or not finite"});
            s += p;
        }
        if (std::abs(s - 1.0) > kNormTol)
            r.push_back({"channel-sum", "channel slice for input config " + std::to_string(x) +
                                            " sums to " + std::to_string(s)});
    }
    return r;
}

/// Shannon entropy (bits) of the marginal on S, with 0 log 0 = 0.
inline double entropy(const JointPmf& p, const RvSet& s)
{
    if (s.empty())
        return 0.0;
    double h = 0.0;
    for (double v : p.marginal(p.axis_indices(s)))
        if (v > 0)
            h -= v * std::log2(v);
    return h;
}

inline double eval_expr(const JointPmf& p, const InfoExpr& e)
{
    double out = 0.0;
    for (const auto& [s, c] : e.atoms())
        out += to_double(c) * entropy(p, s);
    return out;
}

inline double eval_expr(const JointPmf& p, const InfoSum& e) { return eval_expr(p, e.expr()); }
inline double eval_expr(const JointPmf& p, const MiTerm& t) { return eval_expr(p, mi_to_expr(t)); }

/// Ingredients for building a pmf that factorizes per a graph: P(Q), one
/// conditional per factor, the encoders' deterministic maps and the channel.
struct PmfModel {
    std::vector<double> q; // P(Q)
    struct Conditional {
        MessageId node;
        int card = 2;
        // row-major over (given codewords in factor order, Q, value)
        std::vector<double> table;
    };
    std::vector<Conditional> factors; // any order; matched by node
    std::vector<int> input_cards;      // |X_k|
    // X_k = encoders[k-1][row-major index over (Q, codewords known to k in canonical order)]
    std::vector<std::vector<int>> encoders;
    DmcSpec channel;
};

/// Codewords transmitter k knows, in canonical order.
inline NodeList known_at(const Factorization& f, int k)
{
    NodeList out;
    for (const auto& fac : f)
        if (fac.node.tx.contains(k))
            out.push_back(fac.node);
    std::sort(out.begin(), out.end());
    return out;
}

/// Axes Q, codewords (canonical order), X_1..X_N, Y_1..Y_M.
inline JointPmf compose_pmf(const Factorization& f, const PmfModel& m)
{
    std::vector<Axis> axes{{RvId::q(), static_cast<int>(m.q.size())}};
    NodeList nodes;
    for (const auto& fac : f)
        nodes.push_back(fac.node);
    std::sort(nodes.begin(), nodes.end());
    std::map<MessageId, int> card;
    std::map<MessageId, const PmfModel::Conditional*> cond_of;
    for (const auto& c : m.factors) {
        card[c.node] = c.card;
        cond_of[c.node] = &c;
    }
    for (const auto& n : nodes)
        if (!cond_of.count(n))
            throw Error("numeric", "model has no conditional for " + n.str());
    for (const auto& n : nodes)
        axes.push_back({RvId::u(n), card.at(n)});
    const int ntx = static_cast<int>(m.channel.inputs.size());
    for (int k = 1; k <= ntx; ++k)
        axes.push_back({RvId::x(k), m.channel.inputs[static_cast<std::size_t>(k - 1)]});
    for (std::size_t z = 0; z < m.channel.outputs.size(); ++z)
        axes.push_back({RvId::y(static_cast<int>(z) + 1), m.channel.outputs[z]});

    JointPmf p(axes, {});
    std::vector<double> t(p.size(), 0.0);
    const std::size_t ny = m.channel.output_configs();
    for (std::size_t flat = 0; flat < t.size(); flat += ny) {
        auto c = p.config(flat);
        double prob = m.q[static_cast<std::size_t>(c[0])];
        for (std::size_t i = 0; i < f.size() && prob > 0; ++i) {
            const auto& fac = f[i];
            const auto& cond = *cond_of.at(fac.node);
            std::size_t row = 0;
            for (const auto& g : fac.given) {
                auto ax = *p.axis_of(g);
                row = row * static_cast<std::size_t>(axes[ax].card) + static_cast<std::size_t>(c[ax]);
            }
            auto ax = *p.axis_of(RvId::u(fac.node));
            prob *= cond.table[row * static_cast<std::size_t>(cond.card) + static_cast<std::size_t>(c[ax])];
        }
        if (prob == 0)
            continue;
        bool consistent = true;
        std::size_t xrow = 0;
        for (int k = 1; k <= ntx; ++k) {
            std::size_t idx = static_cast<std::size_t>(c[0]);
            for (const auto& n : known_at(f, k)) {
                auto ax = *p.axis_of(RvId::u(n));
                idx = idx * static_cast<std::size_t>(axes[ax].card) + static_cast<std::size_t>(c[ax]);
            }
            int x = m.encoders[static_cast<std::size_t>(k - 1)][idx];
            auto ax = *p.axis_of(RvId::x(k));
            consistent = consistent && c[ax] == x;
            xrow = xrow * static_cast<std::size_t>(axes[ax].card) + static_cast<std::size_t>(x);
        }
        if (!consistent)
            continue;
        for (std::size_t y = 0; y < ny; ++y)
            t[flat + y] = prob * m.channel.table[xrow * ny + y];
    }
    p.table() = std::move(t);
    return p;
}

/// KL divergence (bits) between the (Q, codeword) marginal and the product
/// of its conditionals along the factorization.
inline double factorization_divergence(const JointPmf& p, const Factorization& f)
{
    RvSet qu{RvId::q()};
    for (const auto& fac : f)
        qu.insert(RvId::u(fac.node));
    auto idx = p.axis_indices(qu);
    auto joint = p.marginal(idx);
    struct Piece {
        std::vector<std::size_t> family, given;
        std::vector<double> pf, pg;
    };
    std::vector<Piece> pieces;
    for (const auto& fac : f) {
        RvSet given(fac.given.begin(), fac.given.end());
        RvSet family = given;
        family.insert(RvId::u(fac.node));
        Piece pc{p.axis_indices(family), p.axis_indices(given), {}, {}};
        pc.pf = p.marginal(pc.family);
        pc.pg = p.marginal(pc.given);
        pieces.push_back(std::move(pc));
    }
    std::vector<double> pq = p.marginal(p.axis_indices({RvId::q()}));
    auto qax = *p.axis_of(RvId::q());

    // walk the joint over the qu axes only
    std::vector<int> full(p.axes().size(), 0);
    double kl = 0;
    for (std::size_t k = 0; k < joint.size(); ++k) {
        double pj = joint[k];
        if (pj <= 0)
            continue;
        std::size_t rem = k;
        for (std::size_t i = idx.size(); i-- > 0;) {
            auto card = static_cast<std::size_t>(p.axes()[idx[i]].card);
            full[idx[i]] = static_cast<int>(rem % card);
            rem /= card;
        }
        double prod = pq[static_cast<std::size_t>(full[qax])];
        for (const auto& pc : pieces) {
            double g = pc.pg[p.sub_index(full, pc.given)];
            prod *= g > 0 ? pc.pf[p.sub_index(full, pc.family)] / g : 0.0;
        }
        if (prod <= 0)
            return std::numeric_limits<double>::infinity();
        kl += pj * std::log2(pj / prod);
    }
    return kl;
}

/// Every violated pmf invariant: normalization, factorization per the
/// graph, deterministic encoders and the channel law on the outputs.
inline Report validate_pmf(const JointPmf& p, const Factorization& f, const DmcSpec& ch)
{
    Report r;
    for (const auto& issue : validate_dmc(ch))
        r.push_back(issue);
    if (!r.empty())
        return r;

    // axes
    std::vector<Axis> want{{RvId::q(), 0}};
    NodeList nodes;
    for (const auto& fac : f)
        nodes.push_back(fac.node);
    std::sort(nodes.begin(), nodes.end());
    for (const auto& n : nodes)
        want.push_back({RvId::u(n), 0});
    for (std::size_t k = 0; k < ch.inputs.size(); ++k)
        want.push_back({RvId::x(static_cast<int>(k) + 1), ch.inputs[k]});
    for (std::size_t z = 0; z < ch.outputs.size(); ++z)
        want.push_back({RvId::y(static_cast<int>(z) + 1), ch.outputs[z]});
    for (const auto& w : want) {
        auto i = p.axis_of(w.rv);
        if (!i)
            r.push_back({"missing-axis", "pmf has no axis for " + w.rv.str()});
        else if (w.card > 0 && p.axes()[*i].card != w.card)
            r.push_back({"axis-card", "axis " + w.rv.str() + " has alphabet " + std::to_string(p.axes()[*i].card) +
                                          " but the channel expects " + std::to_string(w.card)});
    }
    for (std::size_t i = 0; i < p.axes().size(); ++i) {
        const auto& a = p.axes()[i];
        if (a.card < 1)
            r.push_back({"axis-card", "axis " + a.rv.str() + " has a non-positive alphabet"});
        if (std::none_of(want.begin(), want.end(), [&](const Axis& w) { return w.rv == a.rv; }))
            r.push_back({"extra-axis", "unexpected axis " + a.rv.str()});
        for (std::size_t j = 0; j < i; ++j)
            if (p.axes()[j].rv == a.rv)
                r.push_back({"duplicate-axis", "axis " + a.rv.str() + " declared twice"});
    }
    if (!r.empty())
        return r;
    if (p.table().size() != p.size()) {
        r.push_back({"table-size", "table has " + std::to_string(p.table().size()) + " entries, expected " +
                                       std::to_string(p.size())});
        return r;
    }

    double total = 0;
    for (double v : p.table()) {
        if (!(v >= 0) || !std::isfinite(v)) {
            r.push_back({"negative", "table has a negative or non-finite entry"});
            return r;
        }
        total += v;
    }
    if (std::abs(total - 1.0) > kNormTol)
        r.push_back({"normalization", "table sums to " + std::to_string(total)});

    double kl = factorization_divergence(p, f);
    if (!(kl < kNormTol))
        r.push_back({"factorization", "KL divergence from the graph factorization is " + std::to_string(kl)});

    // X_k must be a deterministic function of (Q, codewords known to k)
    for (std::size_t k = 1; k <= ch.inputs.size(); ++k) {
        RvSet given{RvId::q()};
        for (const auto& n : known_at(f, static_cast<int>(k)))
            given.insert(RvId::u(n));
        auto gi = p.axis_indices(given);
        auto fam = gi;
        fam.push_back(*p.axis_of(RvId::x(static_cast<int>(k))));
        auto pg = p.marginal(gi), pf = p.marginal(fam);
        const auto card = static_cast<std::size_t>(ch.inputs[k - 1]);
        bool det = true;
        for (std::size_t g = 0; g < pg.size() && det; ++g) {
            if (pg[g] <= 0)
                continue;
            for (std::size_t x = 0; x < card; ++x) {
                double cond = pf[g * card + x] / pg[g];
                if (cond > kNormTol && cond < 1.0 - kNormTol)
                    det = false;
            }
        }
        if (!det)
            r.push_back({"determinism", "X" + std::to_string(k) +
                                            " is not a deterministic function of Q and the codewords of transmitter " +
                                            std::to_string(k)});
    }

    // Y | everything else must follow the channel law
    std::vector<std::size_t> rest, xs;
    for (std::size_t i = 0; i < p.axes().size(); ++i)
        if (p.axes()[i].rv.kind() != RvId::Kind::Y)
            rest.push_back(i);
    for (std::size_t k = 1; k <= ch.inputs.size(); ++k)
        xs.push_back(*p.axis_of(RvId::x(static_cast<int>(k))));
    std::vector<std::size_t> ys;
    for (std::size_t z = 1; z <= ch.outputs.size(); ++z)
        ys.push_back(*p.axis_of(RvId::y(static_cast<int>(z))));
    auto prest = p.marginal(rest);
    const auto ny = ch.output_configs();
    double worst = 0;
    for (std::size_t fl = 0; fl < p.table().size(); ++fl) {
        auto c = p.config(fl);
        double pr = prest[p.sub_index(c, rest)];
        if (pr <= 0)
            continue;
        double law = ch.table[p.sub_index(c, xs) * ny + p.sub_index(c, ys)];
        worst = std::max(worst, std::abs(p.table()[fl] / pr - law));
    }
    if (worst > kCompareTol)
        r.push_back({"channel-law", "outputs deviate from the channel law by " + std::to_string(worst)});
    return r;
}

/// A rate region with numeric constants.
struct NumericRegion {
    struct Row {
        std::vector<double> coef;
        Sense sense = Sense::Le;
        double rhs = 0;
    };
    std::vector<RateSymbol> variables;
    std::vector<Row> rows;
    std::vector<std::vector<double>> vertices; // filled when dimension <= 3

    bool contains(const std::vector<double>& point, double tol = kCompareTol) const
    {
        for (const auto& r : rows) {
            double s = 0;
            for (std::size_t i = 0; i < point.size(); ++i)
                s += r.coef[i] * point[i];
            if (r.sense == Sense::Le && s > r.rhs + tol)
                return false;
            if (r.sense == Sense::Ge && s < r.rhs - tol)
                return false;
            if (r.sense == Sense::Eq && std::abs(s - r.rhs) > tol)
                return false;
        }
        return true;
    }
};

namespace detail {

// Solves the square system M x = v exactly; nullopt when singular.
inline std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> M, std::vector<Rational> v)
{
    const std::size_t n = v.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && M[piv][col] == 0)
            ++piv;
        if (piv == n)
            return std::nullopt;
        std::swap(M[piv], M[col]);
        std::swap(v[piv], v[col]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || M[i][col] == 0)
                continue;
            Rational f = M[i][col] / M[col][col];
            for (std::size_t j = col; j < n; ++j)
                M[i][j] -= f * M[col][j];
            v[i] -= f * v[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = v[i] / M[i][i];
    return x;
}

} // namespace detail

/// Vertices of { x : A x <= b } in dimension <= 3 by intersecting every
/// choice of d facets and keeping the feasible, distinct points.
inline std::vector<std::vector<Rational>> enumerate_vertices(const std::vector<std::vector<Rational>>& A,
                                                             const std::vector<Rational>& b, std::size_t dim)
{
    std::vector<std::vector<Rational>> out;
    if (dim == 0 || dim > 3 || A.size() < dim)
        return out;
    std::vector<std::size_t> pick(dim);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == dim) {
            std::vector<std::vector<Rational>> M;
            std::vector<Rational> v;
            for (auto i : pick) {
                M.push_back(A[i]);
                v.push_back(b[i]);
            }
            auto x = detail::solve_exact(M, v);
            if (!x)
                return;
            for (std::size_t i = 0; i < A.size(); ++i) {
                Rational s = 0;
                for (std::size_t j = 0; j < dim; ++j)
                    s += A[i][j] * (*x)[j];
                if (s > b[i])
                    return;
            }
            if (std::find(out.begin(), out.end(), *x) == out.end())
                out.push_back(*x);
            return;
        }
        for (std::size_t i = start; i < A.size(); ++i) {
            pick[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

/// Replaces every symbolic constant by its value under the pmf. The system
/// must be over message rates only.
inline NumericRegion eval_region(const RateSystem& sys, const JointPmf& p)
{
    auto vars = sys.variables();
    for (const auto& v : sys.used_variables())
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
            vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    for (const auto& v : vars)
        if (v.kind() != RateSymbol::Kind::Message)
            throw Error("eval_region", "symbolic variable " + v.str() + " remains; eliminate it first");
    NumericRegion out;
    out.variables = vars;
    std::map<RvSet, double> cache;
    auto value = [&](const InfoSum& s) {
        double total = 0;
        for (const auto& [set, c] : s.expr().atoms()) {
            auto it = cache.find(set);
            if (it == cache.end())
                it = cache.emplace(set, entropy(p, set)).first;
            total += to_double(c) * it->second;
        }
        return total;
    };
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (const auto& r : sys.rows()) {
        NumericRegion::Row row;
        row.sense = r.sense;
        row.rhs = value(r.rhs);
        row.coef.assign(vars.size(), 0.0);
        std::vector<Rational> exact(vars.size(), Rational(0));
        for (std::size_t i = 0; i < vars.size(); ++i) {
            exact[i] = r.coef(vars[i]);
            row.coef[i] = to_double(exact[i]);
        }
        out.rows.push_back(row);
        Rational rb = rational_from_double(row.rhs);
        if (r.sense != Sense::Ge) {
            A.push_back(exact);
            b.push_back(rb);
        }
        if (r.sense != Sense::Le) {
            std::vector<Rational> neg;
            for (const auto& e : exact)
                neg.push_back(-e);
            A.push_back(neg);
            b.push_back(-rb);
        }
    }
    for (const auto& v : enumerate_vertices(A, b, vars.size())) {
        std::vector<double> d;
        for (const auto& x : v)
            d.push_back(to_double(x));
        out.vertices.push_back(std::move(d));
    }
    return out;
}

} // namespace cgras
