#pragma once

// Chain graph representation of an achievable scheme. Nodes are codeword
// variables U_m, one per post-split message. Superposition edges run
// bottom -> top; binning edges run victim -> binner (the binner's codeword
// is binned against the victim's). A pair binned in both directions is an
// undirected (joint binning) edge, and the connected components of those
// edges are the joint-binning classes.

#include "cgras/common.hpp"
#include "cgras/network.hpp"
#include "cgras/rv.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cgras {

enum class EdgeKind { Superposition, Binning };

inline const char* to_string(EdgeKind k)
{
    return k == EdgeKind::Superposition ? "superposition" : "binning";
}

struct Edge {
    MessageId from; // bottom (superposition) or victim (binning)
    MessageId to;   // top (superposition) or binner (binning)
    EdgeKind kind;

    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge& o) const
    {
        if (auto c = kind <=> o.kind; c != 0)
            return c;
        if (auto c = from <=> o.from; c != 0)
            return c;
        return to <=> o.to;
    }
};

inline Edge superposition(const MessageId& bottom, const MessageId& top)
{
    return {bottom, top, EdgeKind::Superposition};
}
inline Edge binning(const MessageId& victim, const MessageId& binner)
{
    return {victim, binner, EdgeKind::Binning};
}

using NodeList = std::vector<MessageId>;

class Cgras {
public:
    const NetworkSpec& network() const { return network_; }
    const NodeList& nodes() const { return network_.messages; }
    const std::vector<Edge>& edges() const { return edges_; }
    /// Partition of all nodes into joint-binning classes, each sorted,
    /// ordered by their smallest member.
    const std::vector<NodeList>& joint_bins() const { return classes_; }

    bool has_edge(const MessageId& from, const MessageId& to, EdgeKind k) const
    {
        return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to, k});
    }
    bool mutually_binned(const MessageId& a, const MessageId& b) const
    {
        return has_edge(a, b, EdgeKind::Binning) && has_edge(b, a, EdgeKind::Binning);
    }
    std::size_t class_of(const MessageId& m) const
    {
        for (std::size_t i = 0; i < classes_.size(); ++i)
            if (std::find(classes_[i].begin(), classes_[i].end(), m) != classes_[i].end())
                return i;
        throw Error("chain-graph", "unknown node " + m.str());
    }

    /// Nodes reachable from m through superposition edges (tops stacked on m).
    NodeList superposition_descendants(const MessageId& m) const
    {
        std::set<MessageId> seen;
        std::deque<MessageId> todo{m};
        while (!todo.empty()) {
            auto cur = todo.front();
            todo.pop_front();
            for (const auto& e : edges_)
                if (e.kind == EdgeKind::Superposition && e.from == cur && seen.insert(e.to).second)
                    todo.push_back(e.to);
        }
        return {seen.begin(), seen.end()};
    }

    NodeList superposition_ancestors(const MessageId& m) const
    {
        std::set<MessageId> seen;
        std::deque<MessageId> todo{m};
        while (!todo.empty()) {
            auto cur = todo.front();
            todo.pop_front();
            for (const auto& e : edges_)
                if (e.kind == EdgeKind::Superposition && e.to == cur && seen.insert(e.from).second)
                    todo.push_back(e.from);
        }
        return {seen.begin(), seen.end()};
    }

private:
    friend Cgras build(const NetworkSpec&, std::vector<Edge>);
    NetworkSpec network_;
    std::vector<Edge> edges_;
    std::vector<NodeList> classes_;
};

/// Builds the graph over the (post-split) network, rejecting edges that
/// break the superposition or binning side conditions.
inline Cgras build(const NetworkSpec& network, std::vector<Edge> edges)
{
    Cgras g;
    g.network_ = network;
    g.network_.normalize();
    const auto& nodes = g.network_.messages;
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (nodes[i] == nodes[i - 1])
            throw Error("build", "duplicate node " + nodes[i].str());

    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        std::string tag = std::string(to_string(e.kind)) + " edge " + e.from.str() + " => " + e.to.str();
        if (!g.network_.has(e.from) || !g.network_.has(e.to))
            throw Error("build", tag + ": endpoint is not a node of the network");
        if (e.from == e.to)
            throw Error("build", tag + ": self edge");
        if (i > 0 && edges[i - 1] == e)
            throw Error("build", tag + ": declared twice");
        if (e.kind == EdgeKind::Superposition) {
            if (!e.to.tx.subset_of(e.from.tx))
                throw Error("build", tag + ": top transmitter set {" + e.to.tx.str() +
                                         "} is not a subset of bottom transmitter set {" +
                                         e.from.tx.str() + "}");
            if (!e.to.rx.subset_of(e.from.rx))
                throw Error("build", tag + ": top receiver set {" + e.to.rx.str() +
                                         "} is not a subset of bottom receiver set {" +
                                         e.from.rx.str() + "}");
        } else if (!e.to.tx.subset_of(e.from.tx)) {
            throw Error("build", tag + ": binner transmitter set {" + e.to.tx.str() +
                                     "} is not a subset of victim transmitter set {" +
                                     e.from.tx.str() + "}");
        }
    }
    g.edges_ = std::move(edges);

    // joint-binning classes: components of the mutual binning relation
    auto index = [&](const MessageId& m) {
        return static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), m) - nodes.begin());
    };
    std::vector<std::size_t> root(nodes.size());
    for (std::size_t i = 0; i < root.size(); ++i)
        root[i] = i;
    auto find = [&](std::size_t i) {
        while (root[i] != i)
            i = root[i] = root[root[i]];
        return i;
    };
    for (const auto& e : g.edges_)
        if (e.kind == EdgeKind::Binning && g.mutually_binned(e.from, e.to)) {
            auto a = find(index(e.from)), b = find(index(e.to));
            if (a != b)
                root[std::max(a, b)] = std::min(a, b);
        }
    std::map<std::size_t, NodeList> groups;
    for (const auto& m : nodes)
        groups[find(index(m))].push_back(m);
    for (auto& [_, members] : groups)
        g.classes_.push_back(std::move(members));
    return g;
}

namespace detail {

// Directed parents of m in the chain graph: superposition bottoms plus
// one-directional binning victims. Mutual binning partners are excluded.
inline NodeList directed_parents(const Cgras& g, const MessageId& m)
{
    NodeList out;
    for (const auto& e : g.edges())
        if (e.to == m && !(e.kind == EdgeKind::Binning && g.mutually_binned(e.from, e.to)))
            out.push_back(e.from);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::string join(const NodeList& l)
{
    std::string s;
    for (const auto& m : l)
        s += (s.empty() ? "" : ", ") + std::string("U[") + m.str() + "]";
    return s;
}

} // namespace detail

/// Assumption 1 (classes complete), Assumption 2 (equal outside parents
/// within a class) and the chain-graph condition (no semi-directed cycle).
inline Report check_assumptions(const Cgras& g)
{
    Report r;
    const auto& classes = g.joint_bins();
    for (const auto& cls : classes)
        for (std::size_t i = 0; i < cls.size(); ++i)
            for (std::size_t j = i + 1; j < cls.size(); ++j)
                if (!g.mutually_binned(cls[i], cls[j]))
                    r.push_back({"A1", "joint-binning class {" + detail::join(cls) +
                                           "} is not fully connected: U[" + cls[i].str() +
                                           "] and U[" + cls[j].str() + "] are not jointly binned"});

    for (const auto& cls : classes) {
        if (cls.size() < 2)
            continue;
        auto outside = [&](const MessageId& m) {
            NodeList ps;
            for (const auto& p : detail::directed_parents(g, m))
                if (std::find(cls.begin(), cls.end(), p) == cls.end())
                    ps.push_back(p);
            return ps;
        };
        auto ref = outside(cls.front());
        for (std::size_t i = 1; i < cls.size(); ++i) {
            auto ps = outside(cls[i]);
            if (ps != ref)
                r.push_back({"A2", "joint-binning class {" + detail::join(cls) + "}: U[" +
                                       cls.front().str() + "] has parents {" + detail::join(ref) +
                                       "} but U[" + cls[i].str() + "] has parents {" +
                                       detail::join(ps) + "}"});
        }
    }

    // Directed edge inside a class closes a cycle with the undirected path.
    for (const auto& m : g.nodes())
        for (const auto& p : detail::directed_parents(g, m))
            if (g.class_of(p) == g.class_of(m))
                r.push_back({"A3", "semi-directed cycle: directed edge U[" + p.str() + "] -> U[" +
                                       m.str() + "] inside joint-binning class {" +
                                       detail::join(classes[g.class_of(m)]) + "}"});

    // Contract classes and look for a directed cycle between them.
    std::size_t k = classes.size();
    std::vector<std::set<std::size_t>> succ(k);
    for (const auto& m : g.nodes())
        for (const auto& p : detail::directed_parents(g, m)) {
            auto a = g.class_of(p), b = g.class_of(m);
            if (a != b)
                succ[a].insert(b);
        }
    std::vector<int> color(k, 0);
    std::vector<std::size_t> stack;
    std::optional<std::vector<std::size_t>> cycle;
    auto dfs = [&](auto&& self, std::size_t v) -> void {
        color[v] = 1;
        stack.push_back(v);
        for (auto w : succ[v]) {
            if (cycle)
                return;
            if (color[w] == 1) {
                auto it = std::find(stack.begin(), stack.end(), w);
                cycle = std::vector<std::size_t>(it, stack.end());
                cycle->push_back(w);
                return;
            }
            if (color[w] == 0)
                self(self, w);
        }
        stack.pop_back();
        color[v] = 2;
    };
    for (std::size_t v = 0; v < k && !cycle; ++v)
        if (color[v] == 0)
            dfs(dfs, v);
    if (cycle) {
        std::string path;
        for (auto c : *cycle)
            path += (path.empty() ? "" : " -> ") + std::string("{") + detail::join(classes[c]) + "}";
        r.push_back({"A3", "semi-directed cycle: " + path});
    }
    return r;
}

/// The equivalent acyclic directed graph. Parents are split into
/// superposition parents and binning parents (B-minus: one-directional
/// binning victims plus class members earlier in canonical order).
class Adg {
public:
    const NetworkSpec& network() const { return network_; }
    const NodeList& nodes() const { return network_.messages; }
    const NodeList& topological_order() const { return order_; }
    const std::vector<NodeList>& joint_bins() const { return classes_; }

    const NodeList& superposition_parents(const MessageId& m) const { return at(sup_, m); }
    const NodeList& binning_parents(const MessageId& m) const { return at(bin_, m); }
    /// Nodes whose B-minus parent list contains m.
    NodeList binning_children(const MessageId& m) const
    {
        NodeList out;
        for (const auto& [n, ps] : bin_)
            if (std::find(ps.begin(), ps.end(), m) != ps.end())
                out.push_back(n);
        return out;
    }
    NodeList parents(const MessageId& m) const
    {
        NodeList out = superposition_parents(m);
        for (const auto& p : binning_parents(m))
            if (std::find(out.begin(), out.end(), p) == out.end())
                out.push_back(p);
        std::sort(out.begin(), out.end());
        return out;
    }
    /// Nodes carrying a bin index: binned against at least one codeword.
    const NodeList& binned() const { return binned_; }
    const NodeList& superposition_descendants(const MessageId& m) const { return at(desc_, m); }
    const NodeList& superposition_ancestors(const MessageId& m) const { return at(anc_, m); }

    bool operator==(const Adg&) const = default;

private:
    friend Adg orient(const Cgras&);
    static const NodeList& at(const std::map<MessageId, NodeList>& mp, const MessageId& m)
    {
        auto it = mp.find(m);
        if (it == mp.end())
            throw Error("adg", "unknown node " + m.str());
        return it->second;
    }

    NetworkSpec network_;
    NodeList order_;
    std::vector<NodeList> classes_;
    std::map<MessageId, NodeList> sup_, bin_, desc_, anc_;
    NodeList binned_;
};

inline Adg orient(const Cgras& g)
{
    if (auto r = check_assumptions(g); !r.empty())
        throw Error("orient", "assumptions violated: " + r.front().message);
    Adg a;
    a.network_ = g.network();
    a.classes_ = g.joint_bins();
    std::set<MessageId> binned;
    for (const auto& m : g.nodes()) {
        a.sup_[m];
        a.bin_[m];
    }
    for (const auto& e : g.edges()) {
        if (e.kind == EdgeKind::Superposition) {
            a.sup_[e.to].push_back(e.from);
            continue;
        }
        binned.insert(e.to);
        // mutual pairs are oriented low -> high in canonical order
        if (g.mutually_binned(e.from, e.to) && !(e.from < e.to))
            continue;
        a.bin_[e.to].push_back(e.from);
    }
    for (auto* mp : {&a.sup_, &a.bin_})
        for (auto& [_, ps] : *mp) {
            std::sort(ps.begin(), ps.end());
            ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        }
    a.binned_.assign(binned.begin(), binned.end());
    for (const auto& m : g.nodes()) {
        a.desc_[m] = g.superposition_descendants(m);
        a.anc_[m] = g.superposition_ancestors(m);
    }

    // Kahn's algorithm, always taking the smallest ready node
    std::map<MessageId, int> indeg;
    for (const auto& m : g.nodes())
        indeg[m] = static_cast<int>(a.parents(m).size());
    std::set<MessageId> ready;
    for (const auto& [m, d] : indeg)
        if (d == 0)
            ready.insert(m);
    while (!ready.empty()) {
        auto m = *ready.begin();
        ready.erase(ready.begin());
        a.order_.push_back(m);
        for (const auto& n : g.nodes()) {
            auto ps = a.parents(n);
            if (std::find(ps.begin(), ps.end(), m) != ps.end() && --indeg[n] == 0)
                ready.insert(n);
        }
    }
    if (a.order_.size() != g.nodes().size())
        throw Error("orient", "orientation produced a directed cycle");
    return a;
}

struct Factor {
    MessageId node;
    std::vector<RvId> given; // parent codewords in canonical order, then Q

    bool operator==(const Factor&) const = default;
};

using Factorization = std::vector<Factor>;

/// One conditional per node, in topological order.
inline Factorization factorize(const Adg& a)
{
    Factorization f;
    for (const auto& m : a.topological_order()) {
        Factor fac{m, {}};
        for (const auto& p : a.parents(m))
            fac.given.push_back(RvId::u(p));
        fac.given.push_back(RvId::q());
        f.push_back(std::move(fac));
    }
    return f;
}

inline std::string to_string(const Factor& f)
{
    std::string s = "P(U[" + f.node.str() + "]|";
    for (std::size_t i = 0; i < f.given.size(); ++i)
        s += (i ? "," : "") + f.given[i].str();
    return s + ")";
}

namespace detail {

// Parents of every variable in the full model: Q is a root; U nodes hang off
// the Adg and Q; X_k depends on Q and the codewords transmitter k knows;
// Y_z depends on all inputs and on the earlier outputs (arbitrary channel).
inline std::map<RvId, RvSet> full_parents(const Adg& a)
{
    std::map<RvId, RvSet> pa;
    pa[RvId::q()] = {};
    for (const auto& m : a.nodes()) {
        RvSet s{RvId::q()};
        for (const auto& p : a.parents(m))
            s.insert(RvId::u(p));
        pa[RvId::u(m)] = s;
    }
    const auto& net = a.network();
    for (int k = 1; k <= net.n_tx; ++k) {
        RvSet s{RvId::q()};
        for (const auto& m : a.nodes())
            if (m.tx.contains(k))
                s.insert(RvId::u(m));
        pa[RvId::x(k)] = s;
    }
    for (int z = 1; z <= net.n_rx; ++z) {
        RvSet s;
        for (int k = 1; k <= net.n_tx; ++k)
            s.insert(RvId::x(k));
        for (int w = 1; w < z; ++w)
            s.insert(RvId::y(w));
        pa[RvId::y(z)] = s;
    }
    return pa;
}

} // namespace detail

/// True iff every variable in `lhs` is d-separated from every variable in
/// `rhs` given `given` in the full model (Q, codewords, inputs, outputs).
inline bool d_separated(const Adg& a, const RvSet& lhs, const RvSet& rhs, const RvSet& given)
{
    if (intersects(lhs, rhs) || intersects(lhs, given) || intersects(rhs, given))
        throw Error("d_separated", "query sets must be pairwise disjoint");
    auto pa = detail::full_parents(a);
    std::map<RvId, RvSet> ch;
    for (const auto& [v, ps] : pa)
        for (const auto& p : ps)
            ch[p].insert(v);
    for (const auto* s : {&lhs, &rhs, &given})
        for (const auto& v : *s)
            if (!pa.count(v))
                throw Error("d_separated", "unknown random variable " + v.str());

    // ancestors of the conditioning set (for v-structures)
    RvSet anc;
    std::deque<RvId> todo(given.begin(), given.end());
    while (!todo.empty()) {
        auto v = todo.front();
        todo.pop_front();
        if (!anc.insert(v).second)
            continue;
        for (const auto& p : pa[v])
            todo.push_back(p);
    }

    // reachability over (variable, arrived-from-child) states
    std::set<std::pair<RvId, bool>> visited;
    std::deque<std::pair<RvId, bool>> q;
    for (const auto& v : lhs)
        q.push_back({v, true});
    while (!q.empty()) {
        auto [v, up] = q.front();
        q.pop_front();
        if (!visited.insert({v, up}).second)
            continue;
        if (!given.count(v) && rhs.count(v))
            return false;
        if (up && !given.count(v)) {
            for (const auto& p : pa[v])
                q.push_back({p, true});
            for (const auto& c : ch[v])
                q.push_back({c, false});
        } else if (!up) {
            if (!given.count(v))
                for (const auto& c : ch[v])
                    q.push_back({c, false});
            if (anc.count(v))
                for (const auto& p : pa[v])
                    q.push_back({p, true});
        }
    }
    return true;
}

} // namespace cgras
