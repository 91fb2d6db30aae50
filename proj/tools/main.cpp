#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "wcg/catalog.hpp"
#include "wcg/disagreement.hpp"
#include "wcg/enumeration.hpp"
#include "wcg/equivalence.hpp"
#include "wcg/geometry.hpp"
#include "wcg/solver.hpp"

using namespace wcg;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json envelope(const std::string& command)
{
    ordered_json j;
    j["schemaVersion"] = 1;
    j["command"] = command;
    return j;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content))
        throw Error("cannot write " + path);
}

std::string rule_name(const RuleId& r)
{
    return r.name();
}

std::string profile_text(const ProfileSpace& space, ProfileIndex j)
{
    return space.decode(j).to_string();
}

struct Common {
    std::string rule = "plurality";
    std::string weights;
    int m = 3;
    bool json = false;
};

void add_rule(CLI::App* cmd, Common& c)
{
    cmd->add_option("--rule", c.rule, "antiplurality, borda, copeland, plurality, black, kemeny, maximin or scoring:s1,s2,...")
        ->capture_default_str();
}

void add_weights(CLI::App* cmd, Common& c, bool required = true)
{
    auto* opt = cmd->add_option("--w,--weights", c.weights, "weights, e.g. 5,3,2,2");
    if (required)
        opt->required();
}

void add_m(CLI::App* cmd, Common& c)
{
    cmd->add_option("--m", c.m, "number of alternatives")->capture_default_str()->check(CLI::Range(2, 8));
}

void add_json(CLI::App* cmd, Common& c)
{
    cmd->add_flag("--json", c.json, "machine-readable output");
}

// ---------------------------------------------------------------------------

int run_winner(const Common& c, const std::string& profile_arg, bool m_given)
{
    const RuleId rule = RuleId::parse(c.rule);
    const WeightVector w = WeightVector::parse(c.weights);
    const Profile p = Profile::parse(profile_arg);
    if (m_given && p.alternatives() != c.m)
        throw ParseError("profile has " + std::to_string(p.alternatives()) + " alternatives but --m is " +
                         std::to_string(c.m));
    if (p.players() != w.size())
        throw ParseError("profile has " + std::to_string(p.players()) + " players but " + std::to_string(w.size()) +
                         " weights were given");
    const Alternative win = apply_rule(rule, w, p);
    if (c.json) {
        auto j = envelope("winner");
        j["rule"] = rule_name(rule);
        j["weights"] = w.to_std();
        j["profile"] = p.to_string();
        j["winner"] = std::string(1, win.letter());
        if (rule.is_scoring() && !w.is_zero()) {
            const auto s = rule.scoring_vector(p.alternatives());
            const IntVector scores = weighted_scores(p, s, w);
            ordered_json sj;
            for (int a = 0; a < p.alternatives(); ++a) {
                const Rational v(scores[a], s.scale());
                sj[std::string(1, Alternative{a}.letter())] =
                    v.denominator() == 1 ? std::to_string(v.numerator())
                                         : std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
            }
            j["scores"] = sj;
        }
        std::cout << j.dump() << "\n";
    } else {
        std::cout << win.letter() << "\n";
    }
    return 0;
}

int run_equivalent(const Common& c, const std::string& w2_arg, bool inequalities)
{
    const RuleId rule = RuleId::parse(c.rule);
    const WeightVector w = WeightVector::parse(c.weights);
    if (inequalities) {
        if (!rule.is_scoring())
            throw Error("class inequalities are available for scoring rules only");
        const auto sys = class_inequalities(rule.scoring_vector(c.m), w, c.m);
        if (c.json) {
            auto j = envelope("equivalent");
            j["rule"] = rule_name(rule);
            j["m"] = c.m;
            j["weights"] = w.sorted().to_std();
            j["inequalities"] = sys.to_text();
            std::cout << j.dump() << "\n";
        } else {
            std::cout << sys.to_text();
        }
        return 0;
    }
    if (w2_arg.empty())
        throw ParseError("--w2 is required unless --inequalities is given");
    const WeightVector w2 = WeightVector::parse(w2_arg);
    const auto res = games_equivalent(rule, w, w2, c.m);
    const ProfileSpace space(w.size(), c.m);
    if (c.json) {
        auto j = envelope("equivalent");
        j["rule"] = rule_name(rule);
        j["m"] = c.m;
        j["w"] = w.to_std();
        j["w2"] = w2.to_std();
        j["equivalent"] = res.equivalent;
        if (res.witness) {
            j["witnessIndex"] = *res.witness;
            j["witnessProfile"] = profile_text(space, *res.witness);
            const Profile p = space.decode(*res.witness);
            j["winners"] = {std::string(1, apply_rule(rule, w.sorted(), p).letter()),
                            std::string(1, apply_rule(rule, w2.sorted(), p).letter())};
        }
        std::cout << j.dump() << "\n";
    } else if (res.equivalent) {
        std::cout << "equivalent\n";
    } else {
        const Profile p = space.decode(*res.witness);
        std::cout << "not equivalent\nwitness profile " << *res.witness << ": " << p.to_string() << " ("
                  << apply_rule(rule, w.sorted(), p).letter() << " vs " << apply_rule(rule, w2.sorted(), p).letter()
                  << " with sorted weights)\n";
    }
    return 0;
}

int run_minrep(const Common& c, const std::string& map_path)
{
    const RuleId rule = RuleId::parse(c.rule);
    if (!map_path.empty()) {
        const WinnerMap map = WinnerMap::parse(read_file(map_path));
        const auto res = is_r_weighted(map, rule.scoring_vector(map.alternatives));
        if (c.json) {
            auto j = envelope("minrep");
            j["rule"] = rule_name(rule);
            j["weighted"] = res.feasible;
            if (res.weights)
                j["weights"] = res.weights->to_std();
            if (res.witness)
                j["witnessIndex"] = *res.witness;
            std::cout << j.dump() << "\n";
        } else if (res.feasible) {
            std::cout << "weighted: " << res.weights->to_string() << "\n";
        } else {
            std::cout << "not weighted";
            if (res.witness)
                std::cout << " (conflict at profile " << *res.witness << ")";
            std::cout << "\n";
        }
        return res.feasible ? 0 : 1;
    }
    if (c.weights.empty())
        throw ParseError("--w is required");
    const WeightVector w = WeightVector::parse(c.weights);
    const auto res = minimal_representation_detail(rule, w, c.m);
    if (c.json) {
        auto j = envelope("minrep");
        j["rule"] = rule_name(rule);
        j["m"] = c.m;
        j["weights"] = w.to_std();
        j["representative"] = res.weights.to_std();
        j["multiple"] = res.multiple;
        if (rule.kind() == RuleKind::copeland)
            j["validForAllMGe"] = 2;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << res.weights.to_string() << "\n";
    }
    return 0;
}

struct EnumerateArgs {
    int n = 3;
    std::string method = "exact";
    std::int64_t max_sum = 0;
    double time_limit = 0;
    std::uint64_t max_nodes = 0;
    std::string resume;
    std::string state_out;
    std::string catalog_out;
    bool no_compact = false;
};

int run_enumerate(const Common& c, const EnumerateArgs& a)
{
    const RuleId rule = RuleId::parse(c.rule);
    EnumerationResult res;
    if (a.method == "heuristic") {
        const std::int64_t bound = a.max_sum > 0 ? a.max_sum : 10;
        res = heuristic_enumerate(a.n, c.m, rule, bound);
    } else if (a.method == "exact") {
        EnumerationOptions opt;
        opt.compact = !a.no_compact;
        if (a.time_limit > 0)
            opt.time_limit = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(a.time_limit));
        if (a.max_nodes > 0)
            opt.max_nodes = a.max_nodes;
        if (!a.resume.empty())
            opt.resume_state = read_file(a.resume);
        res = enumerate_classes(a.n, c.m, rule, opt);
    } else {
        throw ParseError("--method must be exact or heuristic");
    }
    if (!res.resume_state.empty() && !a.state_out.empty())
        write_file(a.state_out, res.resume_state);
    if (!a.catalog_out.empty())
        write_file(a.catalog_out, write_catalog(records_from_enumeration(res)));

    if (c.json) {
        auto j = envelope("enumerate");
        j["rule"] = rule_name(rule);
        j["n"] = a.n;
        j["m"] = c.m;
        j["method"] = res.method;
        j["exhaustive"] = res.exhaustive;
        if (res.valid_for_all_m_ge > 0)
            j["validForAllMGe"] = res.valid_for_all_m_ge;
        else
            j["validForAllMGe"] = nullptr;
        if (res.search_bound > 0)
            j["searchBound"] = res.search_bound;
        j["count"] = res.representatives.size();
        j["representatives"] = ordered_json::array();
        for (const auto& w : res.representatives)
            j["representatives"].push_back(w.to_std());
        j["nonUnique"] = ordered_json::array();
        for (const auto& w : res.non_unique)
            j["nonUnique"].push_back(w.to_std());
        j["nodes"] = res.nodes;
        j["lpCalls"] = res.lp_calls;
        j["interrupted"] = !res.resume_state.empty();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << rule_name(rule) << " n=" << a.n << " m=" << c.m << ": " << res.representatives.size()
                  << (res.exhaustive ? " classes" : " classes found (lower bound)");
        if (res.valid_for_all_m_ge > 0)
            std::cout << ", same for all m >= " << res.valid_for_all_m_ge;
        std::cout << " [" << res.method << "]\n";
        int i = 0;
        for (const auto& w : res.representatives)
            std::cout << ++i << ". (" << w.to_string() << ")\n";
        if (!res.resume_state.empty())
            std::cout << "stopped early; " << (a.state_out.empty() ? "pass --state-out to keep the resume state"
                                                                    : "resume state written to " + a.state_out)
                      << "\n";
    }
    return 0;
}

struct GeometryArgs {
    std::int64_t max_sum = 0;
    int width = 640;
    int height = 600;
    int cell = 3;
    std::uint64_t seed = 1;
    std::string out;
    std::string csv;
};

int run_geometry(const Common& c, const GeometryArgs& g)
{
    const RuleId rule = RuleId::parse(c.rule);
    const std::int64_t max_sum = g.max_sum > 0 ? g.max_sum : default_max_sum(rule, c.m);
    const ClassMap map = sample_simplex(rule, c.m, max_sum);
    if (!g.out.empty())
        write_file(g.out, render_svg(map, {g.width, g.height, g.cell, g.seed}));
    if (!g.csv.empty())
        write_file(g.csv, export_csv(map));
    if (c.json) {
        auto j = envelope("geometry");
        j["rule"] = rule_name(rule);
        j["m"] = c.m;
        j["maxSum"] = max_sum;
        j["points"] = map.points.size();
        j["classes"] = map.representatives.size();
        j["representatives"] = ordered_json::array();
        for (const auto& w : map.representatives)
            j["representatives"].push_back(w.to_std());
        std::cout << j.dump() << "\n";
    } else {
        std::cout << rule_name(rule) << " m=" << c.m << ", weight sums 1.." << max_sum << ": "
                  << map.representatives.size() << " classes over " << map.points.size() << " points\n";
        for (const auto& w : map.representatives)
            std::cout << "  (" << w.to_string() << ")\n";
        if (g.out.empty() && g.csv.empty())
            std::cout << "(use --out for SVG and --csv for the point table)\n";
    }
    return 0;
}

struct DisagreeArgs {
    std::string rule2;
    std::string w2;
    std::string mode = "exact";
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

int run_disagree(const Common& c, const DisagreeArgs& d)
{
    const RuleSpec a{RuleId::parse(c.rule), WeightVector::parse(c.weights)};
    const RuleSpec b{RuleId::parse(d.rule2.empty() ? c.rule : d.rule2),
                     d.w2.empty() ? a.weights : WeightVector::parse(d.w2)};
    DisagreementReport r;
    if (d.mode == "exact")
        r = disagreement_exact(a, b, c.m);
    else if (d.mode == "montecarlo")
        r = disagreement_montecarlo(a, b, c.m, d.samples, d.seed, d.threads);
    else
        throw ParseError("--mode must be exact or montecarlo");

    char est[64];
    std::snprintf(est, sizeof est, "%.6f", r.estimate);
    char se[64];
    std::snprintf(se, sizeof se, "%.6f", r.standard_error);
    if (c.json) {
        auto j = envelope("disagree");
        j["first"] = {{"rule", rule_name(a.rule)}, {"weights", a.weights.to_std()}};
        j["second"] = {{"rule", rule_name(b.rule)}, {"weights", b.weights.to_std()}};
        j["m"] = c.m;
        j["mode"] = r.exact ? "exact" : "montecarlo";
        j["profiles"] = r.total;
        j["disagreements"] = r.disagreements;
        if (r.exact) {
            j["fraction"] = r.fraction();
            if (r.witness) {
                j["witnessIndex"] = *r.witness;
                j["witnessProfile"] = profile_text(ProfileSpace(a.weights.size(), c.m), *r.witness);
            }
        } else {
            j["seed"] = r.seed;
            j["standardError"] = se;
        }
        j["estimate"] = est;
        std::cout << j.dump() << "\n";
    } else if (r.exact) {
        std::cout << "disagreement " << r.disagreements << "/" << r.total << " = " << r.fraction() << " (" << est
                  << ")\n";
        if (r.witness)
            std::cout << "first witness " << *r.witness << ": "
                      << profile_text(ProfileSpace(a.weights.size(), c.m), *r.witness) << "\n";
    } else {
        std::cout << "disagreement estimate " << est << " +- " << se << " (" << r.disagreements << " of " << r.total
                  << " samples, seed " << r.seed << ")\n";
    }
    return 0;
}

int run_catalog_export(const Common& c, const std::string& out)
{
    const auto records = golden_catalog();
    const std::string text = write_catalog(records);
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
    if (c.json && !out.empty()) {
        auto j = envelope("catalog export");
        j["records"] = records.size();
        j["path"] = out;
        std::cout << j.dump() << "\n";
    }
    return 0;
}

int run_catalog_verify(const Common& c, const std::string& path, bool no_minimality)
{
    const auto records = read_catalog(read_file(path));
    const auto report = catalog_verify(records, {!no_minimality});
    if (c.json) {
        auto j = envelope("catalog verify");
        j["records"] = report.records;
        j["groups"] = report.groups;
        j["ok"] = report.ok();
        j["mismatches"] = report.mismatches;
        j["warnings"] = report.warnings;
        std::cout << j.dump() << "\n";
    } else {
        for (const auto& w : report.warnings)
            std::cout << "warning: " << w << "\n";
        for (const auto& m : report.mismatches)
            std::cout << "mismatch: " << m << "\n";
        std::cout << (report.ok() ? "ok" : "FAILED") << ": " << report.records << " records in " << report.groups
                  << " groups\n";
    }
    return report.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weighted committee games: winners, equivalence, minimal weights and class enumeration"};
    app.require_subcommand(1);
    Common c;

    std::string profile_arg;
    auto* winner = app.add_subcommand("winner", "winner of a weighted profile");
    add_rule(winner, c);
    add_weights(winner, c);
    auto* m_opt = winner->add_option("--m", c.m, "number of alternatives (checked against the profile)");
    winner->add_option("--profile", profile_arg, "comma-separated rankings, e.g. debac,bcead")->required();
    add_json(winner, c);

    std::string w2_arg;
    bool inequalities = false;
    auto* equivalent = app.add_subcommand("equivalent", "compare the games of two weight vectors");
    add_rule(equivalent, c);
    add_weights(equivalent, c);
    add_m(equivalent, c);
    equivalent->add_option("--w2", w2_arg, "second weight vector");
    equivalent->add_flag("--inequalities", inequalities, "print the linear rows describing the class of --w");
    add_json(equivalent, c);

    std::string map_path;
    auto* minrep = app.add_subcommand("minrep", "minimum-sum weights inducing the same game");
    add_rule(minrep, c);
    add_weights(minrep, c, false);
    add_m(minrep, c);
    minrep->add_option("--winner-map", map_path, "decide whether a winner-map file is weighted for --rule");
    add_json(minrep, c);

    EnumerateArgs ea;
    auto* enumerate = app.add_subcommand("enumerate", "list all classes of weighted committees");
    add_rule(enumerate, c);
    add_m(enumerate, c);
    enumerate->add_option("--n", ea.n, "number of players")->capture_default_str()->check(CLI::Range(1, 12));
    enumerate->add_option("--method", ea.method, "exact or heuristic")->capture_default_str();
    enumerate->add_option("--max-sum", ea.max_sum, "largest weight sum for the heuristic");
    enumerate->add_option("--time-limit", ea.time_limit, "seconds before an exact run stops with a resume state");
    enumerate->add_option("--max-nodes", ea.max_nodes, "search nodes before an exact run stops");
    enumerate->add_option("--resume", ea.resume, "resume state file from an interrupted run");
    enumerate->add_option("--state-out", ea.state_out, "where to write the resume state if the run stops early");
    enumerate->add_option("--catalog-out", ea.catalog_out, "write the classes as a JSON-lines catalog");
    enumerate->add_flag("--no-compact", ea.no_compact, "search profile by profile instead of by score matrix");
    add_json(enumerate, c);

    GeometryArgs ga;
    auto* geometry = app.add_subcommand("geometry", "three-player simplex partition as SVG and CSV");
    add_rule(geometry, c);
    add_m(geometry, c);
    geometry->add_option("--max-sum", ga.max_sum, "largest weight sum sampled (default 28 for Borda m=3, else 7)");
    geometry->add_option("--width", ga.width, "SVG width")->capture_default_str();
    geometry->add_option("--height", ga.height, "SVG height")->capture_default_str();
    geometry->add_option("--cell", ga.cell, "raster cell size in pixels")->capture_default_str();
    geometry->add_option("--palette-seed", ga.seed, "color palette seed")->capture_default_str();
    geometry->add_option("--out", ga.out, "SVG output path");
    geometry->add_option("--csv", ga.csv, "CSV output path");
    add_json(geometry, c);

    DisagreeArgs da;
    auto* disagree = app.add_subcommand("disagree", "share of profiles where two weighted rules disagree");
    add_rule(disagree, c);
    add_weights(disagree, c);
    add_m(disagree, c);
    disagree->add_option("--rule2", da.rule2, "second rule (default: --rule)");
    disagree->add_option("--w2", da.w2, "second weights (default: --w)");
    disagree->add_option("--mode", da.mode, "exact or montecarlo")->capture_default_str();
    disagree->add_option("--samples", da.samples, "Monte Carlo samples")->capture_default_str();
    disagree->add_option("--seed", da.seed, "Monte Carlo seed")->capture_default_str();
    disagree->add_option("--threads", da.threads, "worker threads")->capture_default_str();
    add_json(disagree, c);

    auto* catalog = app.add_subcommand("catalog", "built-in class lists");
    catalog->require_subcommand(1);
    std::string export_out;
    auto* cat_export = catalog->add_subcommand("export", "write the built-in catalog");
    cat_export->add_option("--out", export_out, "output path (default: stdout)");
    add_json(cat_export, c);
    std::string verify_path;
    bool no_minimality = false;
    auto* cat_verify = catalog->add_subcommand("verify", "recompute and check a catalog file");
    cat_verify->add_option("path", verify_path, "JSON-lines catalog")->required();
    cat_verify->add_flag("--no-minimality", no_minimality, "skip the minimum-sum check");
    add_json(cat_verify, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*winner)
            return run_winner(c, profile_arg, m_opt->count() > 0);
        if (*equivalent)
            return run_equivalent(c, w2_arg, inequalities);
        if (*minrep)
            return run_minrep(c, map_path);
        if (*enumerate)
            return run_enumerate(c, ea);
        if (*geometry)
            return run_geometry(c, ga);
        if (*disagree)
            return run_disagree(c, da);
        if (*cat_export)
            return run_catalog_export(c, export_out);
        if (*cat_verify)
            return run_catalog_verify(c, verify_path, no_minimality);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
