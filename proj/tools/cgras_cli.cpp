// Command-line front end: validate, factorize, bounds, region, eval, fixtures.

#include "cgras.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace cgras;
using OJson = nlohmann::ordered_json;

namespace {

struct Globals {
    std::string format = "text";
    std::string svo;
    std::string subsets = "closed";
    std::size_t max_inequalities = kDefaultMaxInequalities;
};

PipelineOptions options_for(const Globals& g, const Scheme& s)
{
    PipelineOptions o;
    o.bounds.svo = !g.svo.empty() ? parse_svo_mode(g.svo) : s.svo.value_or(kDefaultSvoMode);
    o.bounds.subsets = parse_subset_policy(g.subsets);
    o.max_inequalities = g.max_inequalities;
    return o;
}

bool json(const Globals& g) { return g.format == "json"; }

void print_report(const std::string& title, const Report& r)
{
    std::cout << title << ": " << (r.empty() ? "ok" : std::to_string(r.size()) + " issue(s)") << "\n";
    for (const auto& i : r)
        std::cout << "  [" << i.code << "] " << i.message << "\n";
}

int cmd_validate(const Globals& g, const std::string& path)
{
    auto s = parse_scheme(path);
    OJson out = envelope("validate");
    Report net = validate_network(s.network);
    Report structural, assumptions;
    if (net.empty()) {
        try {
            auto [split, graph] = prepare(s);
            assumptions = check_assumptions(graph);
        } catch (const Error& e) {
            structural.push_back({e.stage(), e.what()});
        }
    }
    bool ok = net.empty() && structural.empty() && assumptions.empty();
    if (json(g)) {
        out["valid"] = ok;
        out["network"] = to_json(net);
        out["structure"] = to_json(structural);
        out["assumptions"] = to_json(assumptions);
        std::cout << out.dump(2) << "\n";
    } else {
        print_report("network", net);
        if (net.empty()) {
            print_report("structure", structural);
            if (structural.empty())
                print_report("assumptions", assumptions);
        }
        std::cout << (ok ? "valid" : "invalid") << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_factorize(const Globals& g, const std::string& path)
{
    auto s = parse_scheme(path);
    auto d = derive(s, options_for(g, s));
    if (json(g)) {
        OJson out = envelope("factorize");
        OJson order = OJson::array();
        for (const auto& m : d.adg.topological_order())
            order.push_back(m.str());
        OJson factors = OJson::array();
        for (const auto& f : d.factors) {
            OJson given = OJson::array();
            for (const auto& v : f.given)
                given.push_back(v.str());
            factors.push_back(OJson{{"node", f.node.str()}, {"given", given}, {"text", to_string(f)}});
        }
        out["order"] = order;
        out["factors"] = factors;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "P(Q)";
        for (const auto& f : d.factors)
            std::cout << " " << to_string(f);
        std::cout << "\n";
    }
    return 0;
}

int cmd_bounds(const Globals& g, const std::string& path)
{
    auto s = parse_scheme(path);
    auto opt = options_for(g, s);
    auto d = derive(s, opt);
    if (json(g)) {
        OJson out = envelope("bounds");
        out["svo_mode"] = to_string(opt.bounds.svo);
        OJson enc = OJson::array();
        for (const auto& b : d.encoding.bounds)
            enc.push_back(to_json(b));
        out["encoding"] = enc;
        OJson dec = OJson::array();
        for (std::size_t z = 0; z < d.decoding.size(); ++z) {
            OJson rows = OJson::array();
            for (const auto& b : d.decoding[z].bounds)
                rows.push_back(to_json(b));
            dec.push_back(OJson{{"receiver", z + 1}, {"bounds", rows}});
        }
        out["decoding"] = dec;
        out["warnings"] = d.warnings;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "# encoding (svo mode " << to_string(opt.bounds.svo) << ")\n";
        for (const auto& b : d.encoding.bounds)
            std::cout << b.str() << "\n";
        for (std::size_t z = 0; z < d.decoding.size(); ++z) {
            std::cout << "# decoding at receiver " << z + 1 << "\n";
            for (const auto& b : d.decoding[z].bounds)
                std::cout << b.str() << "\n";
        }
        for (const auto& w : d.warnings)
            std::cerr << "warning: " << w << "\n";
    }
    return 0;
}

int cmd_region(const Globals& g, const std::string& path)
{
    auto s = parse_scheme(path);
    auto opt = options_for(g, s);
    auto reg = region(s, opt);
    if (json(g)) {
        OJson out = envelope("region");
        out["svo_mode"] = to_string(opt.bounds.svo);
        out["region"] = to_json(reg);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << reg.str();
    }
    return 0;
}

int cmd_eval(const Globals& g, const std::string& path, const std::string& pmf_path, bool prune)
{
    auto s = parse_scheme(path);
    auto opt = options_for(g, s);
    auto d = derive(s, opt);
    auto file = parse_pmf(pmf_path);
    Report r = validate_pmf(file.pmf, d.factors, file.channel);
    if (auto q = file.pmf.axis_of(RvId::q()); q && file.pmf.axes()[*q].card != s.q_cardinality)
        r.push_back({"q-card", "Q has alphabet " + std::to_string(file.pmf.axes()[*q].card) +
                                   " but the scheme declares " + std::to_string(s.q_cardinality)});
    if (!r.empty()) {
        if (json(g)) {
            OJson out = envelope("eval");
            out["pmf_issues"] = to_json(r);
            std::cout << out.dump(2) << "\n";
        } else {
            print_report("pmf", r);
        }
        return 1;
    }
    auto reg = region(d, opt);
    if (prune)
        reg = prune_numeric(reg, file.pmf);
    auto num = eval_region(reg, file.pmf);
    if (json(g)) {
        OJson out = envelope("eval");
        out["region"] = to_json(reg);
        out["numeric"] = to_json(num);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout.precision(12);
        for (std::size_t i = 0; i < num.rows.size(); ++i)
            std::cout << reg.rows()[i].str() << "    [" << num.rows[i].rhs << "]\n";
        if (!num.vertices.empty()) {
            std::cout << "# vertices (";
            for (std::size_t i = 0; i < num.variables.size(); ++i)
                std::cout << (i ? ", " : "") << num.variables[i].str();
            std::cout << ")\n";
            for (const auto& v : num.vertices) {
                for (std::size_t i = 0; i < v.size(); ++i)
                    std::cout << (i ? " " : "") << v[i];
                std::cout << "\n";
            }
        }
    }
    return 0;
}

void export_fixture(const Fixture& f, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir / "schemes");
    std::ofstream(dir / "schemes" / (f.name + ".json")) << serialize_scheme(f.scheme);
    if (!f.model)
        return;
    auto d = derive(f.scheme);
    PmfFile pf{compose_pmf(d.factors, *f.model), f.model->channel};
    std::filesystem::create_directories(dir / "pmf");
    std::ofstream(dir / "pmf" / (f.name + ".json")) << serialize_pmf(pf);
}

int cmd_fixtures(const Globals& g, const std::string& export_dir)
{
    SvoMode mode = g.svo.empty() ? kDefaultSvoMode : parse_svo_mode(g.svo);
    bool all = true;
    OJson out = envelope("fixtures");
    OJson list = OJson::array();
    for (const auto& f : all_fixtures()) {
        if (!export_dir.empty())
            export_fixture(f, export_dir);
        auto rep = run_fixture(f, mode);
        all = all && rep.passed();
        if (json(g)) {
            list.push_back(OJson{{"name", rep.name},
                                 {"passed", rep.passed()},
                                 {"error", rep.error},
                                 {"symbolic_checked", rep.symbolic_checked},
                                 {"symbolic_match", rep.symbolic_match},
                                 {"missing", rep.missing},
                                 {"extra", rep.extra},
                                 {"points", rep.points},
                                 {"disagreements", rep.disagreements},
                                 {"max_deviation", rep.max_deviation}});
        } else {
            std::cout << (rep.passed() ? "PASS " : "FAIL ") << rep.name;
            if (rep.symbolic_checked)
                std::cout << "  symbolic=" << (rep.symbolic_match ? "match" : "differ");
            if (rep.numeric_checked)
                std::cout << "  sampled=" << rep.points << " disagreements=" << rep.disagreements;
            std::cout << "\n";
            if (!rep.error.empty())
                std::cout << "  error: " << rep.error << "\n";
            for (const auto& m : rep.missing)
                std::cout << "  - " << m << "\n";
            for (const auto& x : rep.extra)
                std::cout << "  + " << x << "\n";
        }
    }
    if (json(g)) {
        out["svo_mode"] = to_string(mode);
        out["fixtures"] = list;
        std::cout << out.dump(2) << "\n";
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rate regions of chain-graph coding schemes"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--svo-mode", g.svo, "Index set of the covering bounds (default: complement)")
        ->check(CLI::IsMember({"subset", "complement"}));
    app.add_option("--subsets", g.subsets, "Subset enumeration policy")->check(CLI::IsMember({"closed", "class-atomic"}));
    app.add_option("--max-inequalities", g.max_inequalities, "Fourier-Motzkin row cap")->check(CLI::PositiveNumber);

    std::string scheme, pmf, export_dir;
    bool prune = false;
    auto* validate = app.add_subcommand("validate", "Check the network, edges and assumptions");
    auto* factorize = app.add_subcommand("factorize", "Print the factorization of the joint distribution");
    auto* bounds = app.add_subcommand("bounds", "Print the raw encoding and decoding bounds");
    auto* region_cmd = app.add_subcommand("region", "Print the region over message rates");
    auto* eval = app.add_subcommand("eval", "Evaluate the region under a pmf");
    auto* fixtures = app.add_subcommand("fixtures", "Run the calibration fixtures");
    for (auto* c : {validate, factorize, bounds, region_cmd, eval})
        c->add_option("scheme", scheme, "Scheme file")->required()->check(CLI::ExistingFile);
    eval->add_option("--pmf", pmf, "Pmf file")->required()->check(CLI::ExistingFile);
    eval->add_flag("--prune", prune, "Drop rows made redundant under this pmf");
    fixtures->add_option("--export", export_dir, "Write scheme and pmf files of every fixture here");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*validate)
            return cmd_validate(g, scheme);
        if (*factorize)
            return cmd_factorize(g, scheme);
        if (*bounds)
            return cmd_bounds(g, scheme);
        if (*region_cmd)
            return cmd_region(g, scheme);
        if (*eval)
            return cmd_eval(g, scheme, pmf, prune);
        if (*fixtures)
            return cmd_fixtures(g, export_dir);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
