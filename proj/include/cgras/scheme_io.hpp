#pragma once

// JSON scheme and pmf files (strict: unknown keys are errors) and the
// versioned JSON export of derived systems.

#include "cgras/numeric.hpp"
#include "cgras/pipeline.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cgras {

inline constexpr int kSchemaVersion = 1;

namespace io_detail {

using Json = nlohmann::json;
using OJson = nlohmann::ordered_json;

[[noreturn]] inline void fail(const std::string& stage, const std::string& path, const std::string& what)
{
    throw Error(stage, path + ": " + what);
}

inline Json parse_text(const std::string& stage, const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // byte is 1-based and points at the offending character
        std::size_t upto = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < upto; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        if (auto p = msg.find(", column "); p != std::string::npos)
            if (auto q = msg.find(": ", p); q != std::string::npos)
                msg = msg.substr(q + 2);
        throw Error(stage, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }
}

inline void only_keys(const std::string& stage, const Json& j, const std::string& path,
                      std::initializer_list<const char*> allowed)
{
    if (!j.is_object())
        fail(stage, path, "expected an object");
    for (const auto& [k, _] : j.items())
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
            fail(stage, path, "unknown key \"" + k + "\"");
}

inline const Json& need(const std::string& stage, const Json& j, const std::string& path, const char* key)
{
    if (!j.contains(key))
        fail(stage, path, std::string("missing key \"") + key + "\"");
    return j.at(key);
}

inline const Json& array(const std::string& stage, const Json& j, const std::string& path)
{
    if (!j.is_array())
        fail(stage, path, "expected an array");
    return j;
}

inline int integer(const std::string& stage, const Json& j, const std::string& path)
{
    if (!j.is_number_integer())
        fail(stage, path, "expected an integer");
    return j.get<int>();
}

inline MessageId message(const std::string& stage, const Json& j, const std::string& path)
{
    if (!j.is_string())
        fail(stage, path, "expected a message such as \"1->1,2\"");
    try {
        return parse_message_id(j.get<std::string>());
    } catch (const std::exception& e) {
        fail(stage, path, e.what());
    }
}

inline std::pair<MessageId, MessageId> message_pair(const std::string& stage, const Json& j, const std::string& path)
{
    if (!j.is_array() || j.size() != 2)
        fail(stage, path, "expected a pair of messages");
    return {message(stage, j[0], path + "[0]"), message(stage, j[1], path + "[1]")};
}

inline double probability(const std::string& stage, const Json& j, const std::string& path)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string()) {
        try {
            return to_double(parse_rational(j.get<std::string>()));
        } catch (const std::exception& e) {
            fail(stage, path, e.what());
        }
    }
    fail(stage, path, "expected a number or a rational string such as \"1/3\"");
}

inline std::vector<double> table(const std::string& stage, const Json& j, const std::string& path)
{
    std::vector<double> out;
    std::size_t i = 0;
    for (const auto& v : array(stage, j, path)) {
        out.push_back(probability(stage, v, path + "[" + std::to_string(i) + "]"));
        ++i;
    }
    return out;
}

inline std::vector<int> cards(const std::string& stage, const Json& j, const std::string& path)
{
    std::vector<int> out;
    std::size_t i = 0;
    for (const auto& v : array(stage, j, path)) {
        out.push_back(integer(stage, v, path + "[" + std::to_string(i) + "]"));
        ++i;
    }
    return out;
}

inline std::string read_file(const std::string& stage, const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(stage, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace io_detail

/// Parses a scheme document. Network validity and edge side conditions
/// are checked later by the pipeline stages.
inline Scheme parse_scheme_text(const std::string& text)
{
    using namespace io_detail;
    const std::string st = "parse_scheme";
    Json j = parse_text(st, text);
    only_keys(st, j, "$", {"network", "splits", "edges", "options"});
    Scheme s;

    const Json& net = need(st, j, "$", "network");
    only_keys(st, net, "$.network", {"n_tx", "n_rx", "messages"});
    s.network.n_tx = integer(st, need(st, net, "$.network", "n_tx"), "$.network.n_tx");
    s.network.n_rx = integer(st, need(st, net, "$.network", "n_rx"), "$.network.n_rx");
    const Json& msgs = array(st, need(st, net, "$.network", "messages"), "$.network.messages");
    for (std::size_t i = 0; i < msgs.size(); ++i)
        s.network.messages.push_back(message(st, msgs[i], "$.network.messages[" + std::to_string(i) + "]"));

    if (j.contains("splits")) {
        const Json& sp = array(st, j["splits"], "$.splits");
        for (std::size_t i = 0; i < sp.size(); ++i) {
            const std::string p = "$.splits[" + std::to_string(i) + "]";
            only_keys(st, sp[i], p, {"parent", "parts"});
            SplitDecl d;
            d.parent = message(st, need(st, sp[i], p, "parent"), p + ".parent");
            const Json& parts = array(st, need(st, sp[i], p, "parts"), p + ".parts");
            for (std::size_t k = 0; k < parts.size(); ++k)
                d.parts.push_back(message(st, parts[k], p + ".parts[" + std::to_string(k) + "]"));
            s.splits.push_back(std::move(d));
        }
    }

    if (j.contains("edges")) {
        const Json& e = j["edges"];
        only_keys(st, e, "$.edges", {"superposition", "binning", "joint_binning"});
        auto pairs = [&](const char* key, auto& out) {
            if (!e.contains(key))
                return;
            const std::string p = std::string("$.edges.") + key;
            const Json& a = array(st, e[key], p);
            for (std::size_t i = 0; i < a.size(); ++i)
                out.push_back(message_pair(st, a[i], p + "[" + std::to_string(i) + "]"));
        };
        pairs("superposition", s.superposition);
        pairs("binning", s.binning);
        if (e.contains("joint_binning")) {
            const Json& classes = array(st, e["joint_binning"], "$.edges.joint_binning");
            for (std::size_t i = 0; i < classes.size(); ++i) {
                const std::string p = "$.edges.joint_binning[" + std::to_string(i) + "]";
                NodeList cls;
                const Json& c = array(st, classes[i], p);
                if (c.size() < 2)
                    fail(st, p, "a joint-binning class needs at least two members");
                for (std::size_t k = 0; k < c.size(); ++k)
                    cls.push_back(message(st, c[k], p + "[" + std::to_string(k) + "]"));
                s.joint_binning.push_back(std::move(cls));
            }
        }
    }

    if (j.contains("options")) {
        const Json& o = j["options"];
        only_keys(st, o, "$.options", {"q_cardinality", "svo_mode"});
        if (o.contains("q_cardinality")) {
            s.q_cardinality = integer(st, o["q_cardinality"], "$.options.q_cardinality");
            if (s.q_cardinality < 1)
                fail(st, "$.options.q_cardinality", "must be positive");
        }
        if (o.contains("svo_mode")) {
            if (!o["svo_mode"].is_string())
                fail(st, "$.options.svo_mode", "expected \"subset\" or \"complement\"");
            try {
                s.svo = parse_svo_mode(o["svo_mode"].get<std::string>());
            } catch (const Error& err) {
                fail(st, "$.options.svo_mode", err.what());
            }
        }
    }
    return s;
}

inline Scheme parse_scheme(const std::string& path)
{
    return parse_scheme_text(io_detail::read_file("parse_scheme", path));
}

/// Canonical text: fixed key order, two-space indentation, trailing newline.
inline std::string serialize_scheme(const Scheme& s)
{
    using io_detail::OJson;
    OJson j;
    OJson msgs = OJson::array();
    for (const auto& m : s.network.messages)
        msgs.push_back(m.str());
    j["network"] = {{"n_tx", s.network.n_tx}, {"n_rx", s.network.n_rx}, {"messages", msgs}};
    OJson splits = OJson::array();
    for (const auto& d : s.splits) {
        OJson parts = OJson::array();
        for (const auto& p : d.parts)
            parts.push_back(p.str());
        OJson sd;
        sd["parent"] = d.parent.str();
        sd["parts"] = parts;
        splits.push_back(sd);
    }
    j["splits"] = splits;
    auto pairs = [](const auto& v) {
        OJson a = OJson::array();
        for (const auto& [x, y] : v)
            a.push_back(OJson::array({x.str(), y.str()}));
        return a;
    };
    OJson classes = OJson::array();
    for (const auto& c : s.joint_binning) {
        OJson a = OJson::array();
        for (const auto& m : c)
            a.push_back(m.str());
        classes.push_back(a);
    }
    OJson edges;
    edges["superposition"] = pairs(s.superposition);
    edges["binning"] = pairs(s.binning);
    edges["joint_binning"] = classes;
    j["edges"] = edges;
    OJson opts;
    opts["q_cardinality"] = s.q_cardinality;
    if (s.svo)
        opts["svo_mode"] = to_string(*s.svo);
    j["options"] = opts;
    return j.dump(2) + "\n";
}

/// A pmf file: declared axes, the dense joint table (row-major over the
/// axes) and the channel law.
struct PmfFile {
    JointPmf pmf;
    DmcSpec channel;
};

inline PmfFile parse_pmf_text(const std::string& text)
{
    using namespace io_detail;
    const std::string st = "parse_pmf";
    Json j = parse_text(st, text);
    only_keys(st, j, "$", {"axes", "table", "channel"});
    std::vector<Axis> axes;
    const Json& ax = array(st, need(st, j, "$", "axes"), "$.axes");
    for (std::size_t i = 0; i < ax.size(); ++i) {
        const std::string p = "$.axes[" + std::to_string(i) + "]";
        only_keys(st, ax[i], p, {"rv", "card"});
        const Json& rv = need(st, ax[i], p, "rv");
        if (!rv.is_string())
            fail(st, p + ".rv", "expected a variable name such as \"U[1->1]\"");
        Axis a{RvId::q(), 0};
        try {
            a.rv = parse_rv(rv.get<std::string>());
        } catch (const Error& e) {
            fail(st, p + ".rv", e.what());
        }
        a.card = integer(st, need(st, ax[i], p, "card"), p + ".card");
        if (a.card < 1)
            fail(st, p + ".card", "must be positive");
        axes.push_back(a);
    }
    PmfFile out;
    auto t = table(st, need(st, j, "$", "table"), "$.table");
    out.pmf = JointPmf(std::move(axes), std::move(t));
    if (out.pmf.table().size() != out.pmf.size())
        fail(st, "$.table", "has " + std::to_string(out.pmf.table().size()) + " entries, expected " +
                                std::to_string(out.pmf.size()));
    for (std::size_t i = 0; i < out.pmf.table().size(); ++i)
        if (!(out.pmf.table()[i] >= 0))
            fail(st, "$.table[" + std::to_string(i) + "]", "negative probability");

    const Json& ch = need(st, j, "$", "channel");
    only_keys(st, ch, "$.channel", {"inputs", "outputs", "table"});
    out.channel.inputs = cards(st, need(st, ch, "$.channel", "inputs"), "$.channel.inputs");
    out.channel.outputs = cards(st, need(st, ch, "$.channel", "outputs"), "$.channel.outputs");
    out.channel.table = table(st, need(st, ch, "$.channel", "table"), "$.channel.table");
    if (auto r = validate_dmc(out.channel); !r.empty())
        fail(st, "$.channel", r.front().message);
    return out;
}

inline PmfFile parse_pmf(const std::string& path) { return parse_pmf_text(io_detail::read_file("parse_pmf", path)); }

inline std::string serialize_pmf(const PmfFile& f)
{
    using io_detail::OJson;
    OJson j;
    OJson axes = OJson::array();
    for (const auto& a : f.pmf.axes())
        axes.push_back(OJson{{"rv", a.rv.str()}, {"card", a.card}});
    j["axes"] = axes;
    j["table"] = f.pmf.table();
    j["channel"] = OJson{{"inputs", f.channel.inputs}, {"outputs", f.channel.outputs}, {"table", f.channel.table}};
    return j.dump(2) + "\n";
}

// ---- export ---------------------------------------------------------------

inline io_detail::OJson to_json(const InfoSum& s)
{
    using io_detail::OJson;
    OJson terms = OJson::array();
    for (const auto& [t, c] : s.terms())
        terms.push_back(OJson{{"coef", to_string(c)}, {"mi", t.str()}});
    OJson atoms = OJson::array();
    for (const auto& [set, c] : s.expr().atoms())
        atoms.push_back(OJson{{"coef", to_string(c)}, {"entropy", str(set)}});
    return OJson{{"text", s.str()}, {"terms", terms}, {"entropies", atoms}};
}

inline io_detail::OJson to_json(const RateIneq& r)
{
    using io_detail::OJson;
    OJson lhs = OJson::array();
    for (const auto& [v, c] : r.lhs)
        lhs.push_back(OJson{{"symbol", v.str()}, {"coef", to_string(c)}});
    return OJson{{"text", r.str()}, {"lhs", lhs}, {"sense", to_string(r.sense)}, {"rhs", to_json(r.rhs)}};
}

inline io_detail::OJson to_json(const RateSystem& s)
{
    using io_detail::OJson;
    OJson vars = OJson::array();
    for (const auto& v : s.variables())
        vars.push_back(v.str());
    OJson rows = OJson::array();
    for (const auto& r : s.rows())
        rows.push_back(to_json(r));
    return OJson{{"variables", vars}, {"inequalities", rows}};
}

inline io_detail::OJson to_json(const Report& r)
{
    using io_detail::OJson;
    OJson a = OJson::array();
    for (const auto& i : r)
        a.push_back(OJson{{"code", i.code}, {"message", i.message}});
    return a;
}

inline io_detail::OJson to_json(const NumericRegion& n)
{
    using io_detail::OJson;
    OJson vars = OJson::array();
    for (const auto& v : n.variables)
        vars.push_back(v.str());
    OJson rows = OJson::array();
    for (const auto& r : n.rows)
        rows.push_back(OJson{{"coef", r.coef}, {"sense", to_string(r.sense)}, {"rhs", r.rhs}});
    return OJson{{"variables", vars}, {"inequalities", rows}, {"vertices", n.vertices}};
}

/// Top-level export envelope.
inline io_detail::OJson envelope(const std::string& command)
{
    return io_detail::OJson{{"schema_version", kSchemaVersion}, {"command", command}};
}

} // namespace cgras
