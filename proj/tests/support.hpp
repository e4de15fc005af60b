#pragma once

// Generators and reference computations shared by the unit and acceptance
// tests. Nothing here calls the code path it is used to check.

#include "cgras.hpp"

#include <cmath>
#include <map>
#include <random>
#include <vector>

namespace support {

using namespace cgras;

/// Binary entropy in bits, closed form.
inline double h2(double p)
{
    if (p <= 0 || p >= 1)
        return 0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

/// Entropy of a probability vector computed directly from its definition.
inline double entropy_of(const std::vector<double>& probs)
{
    double h = 0;
    for (double p : probs)
        if (p > 0)
            h += p * std::log2(1 / p);
    return h;
}

inline std::vector<double> random_simplex(std::mt19937_64& rng, int n)
{
    std::exponential_distribution<double> e(1.0);
    std::vector<double> v(static_cast<std::size_t>(n));
    double s = 0;
    for (auto& x : v)
        s += x = e(rng) + 1e-3;
    for (auto& x : v)
        x /= s;
    return v;
}

inline NodeSet random_nonempty(std::mt19937_64& rng, int n)
{
    std::uniform_int_distribution<std::uint32_t> d(1, (1u << n) - 1);
    return NodeSet::from_bits(d(rng)); // bit i - 1 stands for node i
}

/// Random scheme with at most `max_nodes` codewords whose graph satisfies
/// every edge side condition and A1-A3 (rejection sampling).
inline Scheme random_scheme(std::mt19937_64& rng, int max_nodes)
{
    std::uniform_int_distribution<int> small(1, 2);
    std::uniform_real_distribution<double> u01(0, 1);
    for (;;) {
        Scheme s;
        s.network.n_tx = small(rng);
        s.network.n_rx = small(rng);
        int want = std::uniform_int_distribution<int>(1, max_nodes)(rng);
        std::set<MessageId> ids;
        for (int tries = 0; tries < 50 && static_cast<int>(ids.size()) < want; ++tries)
            ids.insert({random_nonempty(rng, s.network.n_tx), random_nonempty(rng, s.network.n_rx)});
        s.network.messages.assign(ids.begin(), ids.end());
        for (const auto& a : s.network.messages)
            for (const auto& b : s.network.messages) {
                if (a == b)
                    continue;
                if (b.tx.subset_of(a.tx) && b.rx.subset_of(a.rx) && u01(rng) < 0.3)
                    s.superposition.push_back({a, b});
                if (b.tx.subset_of(a.tx) && u01(rng) < 0.3)
                    s.binning.push_back({a, b});
            }
        try {
            auto g = build(s.network, s.edges());
            if (check_assumptions(g).empty())
                return s;
        } catch (const Error&) {
        }
    }
}

/// Random conditionals, encoders and channel for a factorization; every
/// alphabet has at most `max_card` letters.
inline PmfModel random_model(std::mt19937_64& rng, const Adg& a, const Factorization& f, int max_card,
                             int q_card = 1)
{
    std::uniform_int_distribution<int> card(2, max_card);
    PmfModel m;
    m.q = random_simplex(rng, q_card);
    std::map<MessageId, int> cards;
    for (const auto& fac : f)
        cards[fac.node] = card(rng);
    for (const auto& fac : f) {
        PmfModel::Conditional c{fac.node, cards[fac.node], {}};
        std::size_t rows = 1;
        for (const auto& g : fac.given)
            rows *= g.kind() == RvId::Kind::Q ? static_cast<std::size_t>(q_card)
                                              : static_cast<std::size_t>(cards[g.message()]);
        for (std::size_t r = 0; r < rows; ++r)
            for (double p : random_simplex(rng, c.card))
                c.table.push_back(p);
        m.factors.push_back(c);
    }
    const auto& net = a.network();
    for (int k = 1; k <= net.n_tx; ++k) {
        int xc = card(rng);
        m.channel.inputs.push_back(xc);
        std::size_t rows = static_cast<std::size_t>(q_card);
        for (const auto& n : known_at(f, k))
            rows *= static_cast<std::size_t>(cards[n]);
        std::vector<int> enc;
        for (std::size_t r = 0; r < rows; ++r)
            enc.push_back(std::uniform_int_distribution<int>(0, xc - 1)(rng));
        m.encoders.push_back(enc);
    }
    for (int z = 1; z <= net.n_rx; ++z)
        m.channel.outputs.push_back(card(rng));
    const auto nx = m.channel.input_configs(), ny = m.channel.output_configs();
    for (std::size_t x = 0; x < nx; ++x)
        for (double p : random_simplex(rng, static_cast<int>(ny)))
            m.channel.table.push_back(p);
    return m;
}

/// Random integer-coefficient system; when `feasible` the rows are built
/// to hold at `anchor` (returned through the pointer).
inline LinearSystem<int, Rational> random_system(std::mt19937_64& rng, int nvars, int nrows, bool feasible,
                                                 std::vector<Rational>* anchor)
{
    std::uniform_int_distribution<int> coef(-3, 3), rhs(-8, 8), den(1, 3), slack(0, 4);
    std::vector<Rational> x0;
    for (int i = 0; i < nvars; ++i)
        x0.push_back(make_rational(rhs(rng), den(rng)));
    std::vector<int> vars;
    for (int i = 0; i < nvars; ++i)
        vars.push_back(i);
    std::vector<Constraint<int, Rational>> rows;
    for (int r = 0; r < nrows; ++r) {
        Constraint<int, Rational> c;
        for (int i = 0; i < nvars; ++i)
            c.add_term(i, coef(rng));
        if (c.lhs.empty())
            c.add_term(std::uniform_int_distribution<int>(0, nvars - 1)(rng), 1);
        if (feasible) {
            Rational v = 0;
            for (const auto& [i, k] : c.lhs)
                v += k * x0[static_cast<std::size_t>(i)];
            c.rhs = v + make_rational(slack(rng), den(rng));
        } else {
            c.rhs = make_rational(rhs(rng), den(rng));
        }
        rows.push_back(c);
    }
    if (anchor)
        *anchor = x0;
    return {vars, rows};
}

/// Exact check of a point against every row of a system over ints.
inline bool satisfies(const LinearSystem<int, Rational>& s, const std::map<int, Rational>& point)
{
    for (const auto& r : s.rows()) {
        Rational v = 0;
        for (const auto& [i, k] : r.lhs)
            v += k * point.at(i);
        if (r.sense == Sense::Le && v > r.rhs)
            return false;
        if (r.sense == Sense::Ge && v < r.rhs)
            return false;
        if (r.sense == Sense::Eq && v != r.rhs)
            return false;
    }
    return true;
}

/// Oracle: does the point (values of the kept variables) extend to a
/// solution of the original system? Decided by exact LP feasibility.
inline bool extends(const LinearSystem<int, Rational>& s, const std::vector<int>& elim,
                    const std::map<int, Rational>& point)
{
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    for (const auto& r : s.rows()) {
        std::vector<Rational> row;
        Rational rhs = r.rhs;
        for (int e : elim)
            row.push_back(r.coef(e));
        for (const auto& [i, k] : r.lhs)
            if (point.count(i))
                rhs -= k * point.at(i);
        Rational sign = r.sense == Sense::Ge ? Rational(-1) : Rational(1);
        std::vector<Rational> srow;
        for (const auto& c : row)
            srow.push_back(sign * c);
        A.push_back(srow);
        b.push_back(sign * rhs);
        if (r.sense == Sense::Eq) {
            std::vector<Rational> neg;
            for (const auto& c : row)
                neg.push_back(-c);
            A.push_back(neg);
            b.push_back(-rhs);
        }
    }
    bool all_zero = true;
    for (const auto& row : A)
        for (const auto& c : row)
            all_zero = all_zero && c == 0;
    if (all_zero) {
        for (const auto& v : b)
            if (v < 0)
                return false;
        return true;
    }
    return lp_feasible(A, b, elim.size());
}

} // namespace support
