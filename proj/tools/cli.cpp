#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "groupcausal/discovery.hpp"
#include "groupcausal/error.hpp"
#include "groupcausal/faithfulness.hpp"
#include "groupcausal/grouping.hpp"
#include "groupcausal/scc.hpp"
#include "groupcausal/separation.hpp"
#include "groupcausal/text_format.hpp"
#include "groupcausal/timeseries.hpp"

namespace groupcausal::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kExplainPathLimit = 50;

struct Options {
    std::string graph, partition, templ, kind = "sigma", a, b, given, dot, out, window, level = "grouped-summary";
    std::string from, to;
    std::optional<std::string> json;  // "" for stdout
    bool explain = false, sigma_aware = false, relaxed = false, no_self_pairs = false;
    std::size_t max_cond = 1, jobs = 1, max_nodes = 10, groups = 4, attempts = 20000;
    std::uint64_t seed = 1;
};

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SeparationKind parse_kind(const std::string& k) {
    if (k == "sigma") return SeparationKind::Sigma;
    if (k == "m") return SeparationKind::M;
    throw InputError("--kind must be 'sigma' or 'm', got '" + k + "'");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string item; std::getline(in, item, ',');) {
        const auto b = item.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(item.substr(b, item.find_last_not_of(" \t") - b + 1));
    }
    return out;
}

ParsedGraph load_graph(const Options& o) {
    if (o.graph.empty()) throw InputError("--graph is required");
    return parse_graph(read_file(o.graph), o.graph);
}

Partition load_partition(const Options& o, const ParsedGraph& pg) {
    GroupSpec spec = pg.groups;
    if (!o.partition.empty()) {
        const std::string text = read_file(o.partition);
        // A partition file may be a full graph file or group lines only.
        spec = text.find("node ") == std::string::npos ? parse_groups(text, o.partition)
                                                        : parse_graph(text, o.partition).groups;
    }
    if (spec.empty()) throw InputError("no groups given: pass --partition or add group lines to the graph file");
    return Partition::from_labels(pg.graph, spec);
}

ParsedTemplate load_template(const Options& o) {
    if (o.templ.empty()) throw InputError("--template is required");
    return parse_template(read_file(o.templ), o.templ);
}

Partition process_partition(const ParsedTemplate& pt) {
    const MixedGraph summary = summary_graph(pt.templ);
    if (pt.groups.empty()) return Partition::singletons(summary);
    return Partition::from_labels(summary, pt.groups);
}

Window parse_window(const Options& o, const TsTemplate& t, std::ostream& err) {
    if (o.window.empty()) return Window{0, static_cast<int>(t.max_lag()) + 1};
    const auto colon = o.window.find(':');
    if (colon == std::string::npos) throw InputError("--window expects a:b, got '" + o.window + "'");
    Window w;
    try {
        w.start = std::stoi(o.window.substr(0, colon));
        w.end = std::stoi(o.window.substr(colon + 1));
    } catch (const std::exception&) {
        throw InputError("--window expects integers a:b, got '" + o.window + "'");
    }
    if (w.start <= w.end && w.end - w.start < static_cast<int>(t.max_lag()))
        err << "warning: window " << o.window << " is shorter than the maximal lag " << t.max_lag() << "\n";
    return w;
}

json graph_json(const MixedGraph& g) {
    json edges = json::array();
    for (const Edge& e : g.edges())
        edges.push_back({{"from", g.label(e.from)}, {"kind", std::string(to_string(e.kind))}, {"to", g.label(e.to)}});
    return {{"nodes", g.labels()}, {"edges", edges}};
}

json group_list(const Partition& p, const NodeSet& groups) {
    json out = json::array();
    for (NodeId y : groups) out.push_back(p.label(y));
    return out;
}

json report_json(const Partition& p, const FaithfulnessReport& r) {
    json vs = json::array();
    for (const Violation& v : r.violations)
        vs.push_back({{"pair", {p.label(v.y), p.label(v.z)}},
                      {"conditioning", group_list(p, v.conditioning)},
                      {"kind", std::string(to_string(v.kind))},
                      {"class", std::string(to_string(v.cls))}});
    return vs;
}

std::string macro_edge_text(const Partition& p, const MacroEdge& e) {
    return p.label(e.from) + " " + std::string(to_string(e.kind)) + " " + p.label(e.to);
}

json criterion_json(const Partition& p, const MixedGraph& g, const CriterionReport& r) {
    json j{{"passed", r.passed}, {"coarse_acyclic", r.coarse_acyclic}};
    if (r.failure) {
        json f{{"condition", std::string(to_string(r.failure->condition))}, {"group", p.label(r.failure->group)}};
        if (r.failure->e) f["edge"] = macro_edge_text(p, *r.failure->e);
        if (r.failure->e2) f["other_edge"] = macro_edge_text(p, *r.failure->e2);
        if (r.failure->node) f["node"] = g.label(*r.failure->node);
        j["failure"] = f;
    }
    return j;
}

std::string criterion_text(const Partition& p, const MixedGraph& g, const CriterionReport& r) {
    if (r.passed) return std::string("passed") + (r.coarse_acyclic ? " (coarse graph acyclic)" : " (coarse graph cyclic)");
    std::string s = "failed at (" + std::string(to_string(r.failure->condition)) + ") in group " + p.label(r.failure->group);
    if (r.failure->e) s += ", edges " + macro_edge_text(p, *r.failure->e) + " / " + macro_edge_text(p, *r.failure->e2);
    if (r.failure->node) s += ", node " + g.label(*r.failure->node);
    return s;
}

std::string walk_json_text(const MixedGraph& g, const Walk& w) { return format_walk(g, w); }

void emit_json(const Options& o, const std::string& command, json body, std::ostream& out) {
    body["schema_version"] = kSchemaVersion;
    body["command"] = command;
    if (o.json->empty() || *o.json == "-") {
        out << body.dump(2) << "\n";
        return;
    }
    std::ofstream f(*o.json);
    if (!f) throw InputError("cannot write '" + *o.json + "'");
    f << body.dump(2) << "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
}

// ---- commands ----

int cmd_separate(const Options& o, std::ostream& out) {
    const ParsedGraph pg = load_graph(o);
    const MixedGraph& g = pg.graph;
    const SeparationKind kind = parse_kind(o.kind);
    const NodeId a = g.id(o.a), b = g.id(o.b);
    if (a == b) throw InputError("--a and --b must name different nodes");
    const NodeSet s = g.ids(split_list(o.given));
    const bool sep = separated(g, a, b, s, kind);
    json j{{"separated", sep}, {"kind", std::string(to_string(kind))}, {"a", o.a}, {"b", o.b},
           {"given", split_list(o.given)}};
    if (!o.json) out << (sep ? "separated" : "connected") << "\n";
    if (o.explain) {
        if (g.size() > kDefaultPathBudget) {
            if (!o.json) out << "explanation needs at most " << kDefaultPathBudget << " nodes\n";
        } else if (!sep) {
            const auto path = open_path(g, a, b, s, kind);
            if (path) {
                if (!o.json) out << "open path: " << format_walk(g, *path) << "\n";
                j["open_path"] = walk_json_text(g, *path);
            }
        } else {
            json reports = json::array();
            std::size_t shown = 0;
            for_each_path(g, a, b, [&](const Walk& w) {
                const BlockReport r = is_blocked(g, w, s, kind);
                const std::string reason = std::string(to_string(r.witness->reason));
                const std::string at = g.label(w.nodes[r.witness->index]);
                if (!o.json) out << "blocked: " << format_walk(g, w) << " at " << at << " (" << reason << ")\n";
                reports.push_back({{"path", format_walk(g, w)}, {"node", at}, {"reason", reason}});
                return ++shown < kExplainPathLimit;
            });
            j["blocked_paths"] = reports;
        }
    }
    if (o.json) emit_json(o, "separate", j, out);
    return sep ? 0 : 1;
}

int cmd_coarsen(const Options& o, std::ostream& out) {
    const ParsedGraph pg = load_graph(o);
    const Partition p = load_partition(o, pg);
    const MixedGraph c = coarsen(pg.graph, p);
    if (!o.dot.empty()) write_text_file(o.dot, export_dot(c));
    if (o.json)
        emit_json(o, "coarsen", {{"graph", graph_json(c)}}, out);
    else
        out << write_graph(c);
    return 0;
}

int cmd_acyclify(const Options& o, std::ostream& out) {
    const ParsedGraph pg = load_graph(o);
    const MixedGraph acy = acyclify(pg.graph);
    if (!o.dot.empty()) write_text_file(o.dot, export_dot(acy));
    if (o.json)
        emit_json(o, "acyclify", {{"graph", graph_json(acy)}}, out);
    else
        out << write_graph(acy);
    return 0;
}

int cmd_check_commute(const Options& o, std::ostream& out) {
    const ParsedGraph pg = load_graph(o);
    const Partition p = load_partition(o, pg);
    const CommuteReport r = check_commute(pg.graph, p);
    const bool acyclic = is_acyclic_partition(pg.graph, p);
    if (o.json) {
        emit_json(o, "check-commute",
                  {{"commutes", r.commutes}, {"acyclic_partition", acyclic}, {"coarse", graph_json(r.coarse)},
                   {"coarse_of_acyclified", graph_json(r.coarse_of_acyclic)}},
                  out);
    } else {
        out << (r.commutes ? "commutes" : "does not commute") << "\n";
        out << "acyclic partition: " << (acyclic ? "yes" : "no") << "\n";
        if (!r.commutes) {
            out << "# coarsen(g)\n" << write_graph(r.coarse);
            out << "# coarsen(acyclify(g))\n" << write_graph(r.coarse_of_acyclic);
        }
    }
    return r.commutes ? 0 : 1;
}

int cmd_partition_scc(const Options& o, std::ostream& out) {
    const ParsedGraph pg = load_graph(o);
    const Partition p = maximally_acyclic_partition(pg.graph);
    if (o.json) {
        json blocks = json::array();
        for (GroupId y = 0; y < p.size(); ++y) {
            json members = json::array();
            for (NodeId v : p.block(y)) members.push_back(pg.graph.label(v));
            blocks.push_back({{"label", p.label(y)}, {"members", members}});
        }
        emit_json(o, "partition-scc", {{"groups", blocks}}, out);
        return 0;
    }
    for (GroupId y = 0; y < p.size(); ++y) {
        out << "group " << p.label(y) << " =";
        bool first = true;
        for (NodeId v : p.block(y)) {
            out << (first ? " " : ", ") << pg.graph.label(v);
            first = false;
        }
        out << "\n";
    }
    return 0;
}

void print_report(const Partition& p, const FaithfulnessReport& r, std::ostream& out) {
    if (r.empty()) {
        out << "no violations\n";
        return;
    }
    for (const Violation& v : r.violations) {
        out << to_string(v.cls) << " " << p.label(v.y) << " , " << p.label(v.z) << " | {";
        bool first = true;
        for (NodeId s : v.conditioning) {
            out << (first ? "" : ", ") << p.label(s);
            first = false;
        }
        out << "}\n";
    }
}

std::size_t capped_cond(const Options& o, const Partition& p) {
    const std::size_t avail = p.size() < 2 ? 0 : p.size() - 2;
    return std::min(o.max_cond, avail);
}

int cmd_faithfulness(const Options& o, std::ostream& out) {
    const ParsedGraph pg = load_graph(o);
    const Partition p = load_partition(o, pg);
    const SeparationKind kind = parse_kind(o.kind);
    const FaithfulnessReport r =
        find_faithfulness_violations(pg.graph, p, kind, capped_cond(o, p), static_cast<unsigned>(o.jobs));
    if (o.json)
        emit_json(o, "faithfulness",
                  {{"kind", std::string(to_string(kind))}, {"max_cond", capped_cond(o, p)},
                   {"violations", report_json(p, r)}},
                  out);
    else
        print_report(p, r, out);
    return r.empty() ? 0 : 1;
}

int cmd_criteria(const Options& o, std::ostream& out) {
    const ParsedGraph pg = load_graph(o);
    const Partition p = load_partition(o, pg);
    const CriterionReport c1 = check_criterion1(pg.graph, p);
    const CriterionReport c2 = check_criterion2(pg.graph, p);
    if (o.json) {
        emit_json(o, "criteria",
                  {{"criterion1", criterion_json(p, pg.graph, c1)}, {"criterion2", criterion_json(p, pg.graph, c2)}},
                  out);
    } else {
        out << "criterion 1: " << criterion_text(p, pg.graph, c1) << "\n";
        out << "criterion 2: " << criterion_text(p, pg.graph, c2) << "\n";
    }
    return c1.passed || c2.passed ? 0 : 1;
}

int cmd_causes(const Options& o, std::ostream& out) {
    const ParsedGraph pg = load_graph(o);
    const Partition p = load_partition(o, pg);
    const MixedGraph coarse = coarsen(pg.graph, p);
    std::vector<std::pair<GroupId, GroupId>> pairs;
    if (!o.from.empty() || !o.to.empty()) {
        if (o.from.empty() || o.to.empty()) throw InputError("--from and --to go together");
        pairs.emplace_back(p.id(o.from), p.id(o.to));
    } else {
        for (GroupId y = 0; y < p.size(); ++y)
            for (GroupId z = 0; z < p.size(); ++z)
                if (y != z) pairs.emplace_back(y, z);
    }
    json rows = json::array();
    bool all_true = true;
    for (const auto& [y, z] : pairs) {
        const bool app = apparent_cause(coarse, y, z);
        const bool tru = true_cause(pg.graph, p, y, z);
        if (app && !tru) all_true = false;
        if (o.json)
            rows.push_back({{"from", p.label(y)}, {"to", p.label(z)}, {"apparent", app}, {"true", tru}});
        else if (app || tru || pairs.size() == 1)
            out << p.label(y) << " -> " << p.label(z) << ": apparent=" << (app ? "yes" : "no")
                << " true=" << (tru ? "yes" : "no") << "\n";
    }
    if (o.json) emit_json(o, "causes", {{"causes", rows}}, out);
    return all_true ? 0 : 1;
}

int cmd_export_dot(const Options& o, std::ostream& out) {
    const ParsedGraph pg = load_graph(o);
    std::optional<Partition> p;
    if (!o.partition.empty() || !pg.groups.empty()) p = load_partition(o, pg);
    const std::string dot = export_dot(pg.graph, p ? &*p : nullptr);
    if (o.out.empty())
        out << dot;
    else
        write_text_file(o.out, dot);
    return 0;
}

int cmd_discover(const Options& o, std::ostream& out) {
    const ParsedGraph pg = load_graph(o);
    Partition p = load_partition(o, pg);
    const MixedGraph truth = coarsen(pg.graph, p);
    const GroupCiOracle oracle(pg.graph, p, parse_kind(o.kind));
    const DiscoveryResult r = discover(oracle, o.sigma_aware);
    const PartiallyOrientedGraph& pog = r.pattern;
    const bool inconsistent = r.sigma_aware && !r.sigma_aware->consistent;
    const DiffReport d = compare_to_truth(pog, p, truth);

    auto pair_text = [&](GroupPair e) { return p.label(e.first) + " " + p.label(e.second); };
    auto edge_text = [&](GroupPair e) {
        if (pog.oriented(e.first, e.second)) return p.label(e.first) + " -> " + p.label(e.second);
        if (pog.oriented(e.second, e.first)) return p.label(e.second) + " -> " + p.label(e.first);
        return p.label(e.first) + " -- " + p.label(e.second);
    };
    auto triple_text = [&](const Triple& t) {
        return "(" + p.label(t.x) + ", " + p.label(t.y) + ", " + p.label(t.z) + ")";
    };

    if (o.json) {
        json edges = json::array(), amb = json::array(), col = json::array(), wrong = json::array(),
             fp = json::array(), fn = json::array();
        for (const auto& e : pog.skeleton.edges()) edges.push_back(edge_text(e));
        for (const auto& t : pog.ambiguous) amb.push_back(triple_text(t));
        for (const auto& t : pog.colliders) col.push_back(triple_text(t));
        for (const auto& e : d.wrong_orientations) wrong.push_back(p.label(e.first) + " -> " + p.label(e.second));
        for (const auto& e : d.false_positives) fp.push_back(pair_text(e));
        for (const auto& e : d.false_negatives) fn.push_back(pair_text(e));
        json j{{"edges", edges},
               {"colliders", col},
               {"ambiguous_triples", amb},
               {"diff", {{"false_positives", fp}, {"false_negatives", fn}, {"wrong_orientations", wrong}}}};
        if (r.sigma_aware) j["dag_consistent"] = r.sigma_aware->consistent;
        emit_json(o, "discover", j, out);
    } else {
        out << "skeleton and orientations:\n";
        for (const auto& e : pog.skeleton.edges()) out << "  " << edge_text(e) << "\n";
        for (const auto& t : pog.colliders) out << "collider " << triple_text(t) << "\n";
        for (const auto& t : pog.ambiguous) out << "ambiguous " << triple_text(t) << "\n";
        for (const auto& t : pog.conflicts) out << "conflict " << triple_text(t) << "\n";
        if (inconsistent) out << "no DAG-consistent orientation; Meek rule 1 not applied\n";
        out << "diff against the coarse graph:\n";
        for (const auto& e : d.false_positives) out << "  extra adjacency " << pair_text(e) << "\n";
        for (const auto& e : d.false_negatives) out << "  missing adjacency " << pair_text(e) << "\n";
        for (const auto& e : d.wrong_orientations)
            out << "  wrong orientation " << p.label(e.first) << " -> " << p.label(e.second) << "\n";
        for (const auto& t : d.ambiguous) out << "  ambiguous " << triple_text(t) << "\n";
        if (d.empty()) out << "  none\n";
    }
    return inconsistent ? 1 : 0;
}

int cmd_search_nonlocal(const Options& o, std::ostream& out) {
    NonlocalSearchBounds bounds;
    bounds.max_nodes = o.max_nodes;
    bounds.groups = o.groups;
    bounds.max_cond = o.max_cond;
    bounds.attempts = o.attempts;
    const auto found = search_nonlocal_instance(o.seed, bounds);
    if (!found) {
        if (o.json)
            emit_json(o, "search-nonlocal", {{"found", false}}, out);
        else
            out << "no instance found\n";
        return 1;
    }
    const std::string text = write_graph(found->graph, &found->partition);
    if (!o.out.empty()) write_text_file(o.out, text);
    if (o.json) {
        emit_json(o, "search-nonlocal",
                  {{"found", true}, {"attempt", found->attempt}, {"graph", graph_json(found->graph)},
                   {"violations", report_json(found->partition, found->report)}},
                  out);
    } else {
        out << "# seed " << o.seed << ", attempt " << found->attempt << "\n" << text;
        print_report(found->partition, found->report, out);
    }
    return 0;
}

int cmd_ts(const std::string& action, const Options& o, std::ostream& out, std::ostream& err) {
    const ParsedTemplate pt = load_template(o);
    const TsTemplate& t = pt.templ;
    const Partition q = process_partition(pt);
    const MixingOptions mopt{!o.relaxed, !o.no_self_pairs};

    auto print_graph = [&](const std::string& name, const MixedGraph& g) {
        if (!o.dot.empty()) write_text_file(o.dot, export_dot(g));
        if (o.json)
            emit_json(o, "ts " + name, {{"graph", graph_json(g)}}, out);
        else
            out << write_graph(g);
        return 0;
    };

    if (action == "unroll") {
        const Window w = parse_window(o, t, err);
        return print_graph(action, unroll(t, w).graph);
    }
    if (action == "summary") return print_graph(action, summary_graph(t));
    if (action == "grouped-summary") return print_graph(action, grouped_summary(t, q));
    if (action == "grouped-ts") return print_graph(action, grouped_ts_dmg(t, q, parse_window(o, t, err)));
    if (action == "mixing") {
        const MixingReport r = is_causally_mixing(t, q, mopt);
        if (o.json) {
            json groups = json::object();
            for (GroupId y = 0; y < q.size(); ++y) groups[q.label(y)] = static_cast<bool>(r.per_group[y]);
            emit_json(o, "ts mixing", {{"mixing", r.overall}, {"groups", groups}, {"strict", mopt.strict}}, out);
        } else {
            for (GroupId y = 0; y < q.size(); ++y)
                out << q.label(y) << ": " << (r.per_group[y] ? "mixing" : "not mixing") << "\n";
            out << (r.overall ? "causally mixing" : "not causally mixing") << "\n";
        }
        return r.overall ? 0 : 1;
    }
    if (action == "causation") {
        const auto witnesses = check_mixing_causation(t, q, mopt);
        bool ok = true;
        json rows = json::array();
        for (const auto& w : witnesses) {
            ok = ok && w.true_cause;
            const Unrolled u = unroll(t, w.window);
            std::string path;
            for (GroupId y : w.coarse_path) path += (path.empty() ? "" : " -> ") + q.label(y);
            if (o.json)
                rows.push_back({{"coarse_path", path}, {"true_cause", w.true_cause},
                                {"witness", format_walk(u.graph, w.micro_path)}});
            else
                out << path << ": " << (w.true_cause ? "true cause via " : "NOT realised: ")
                    << format_walk(u.graph, w.micro_path) << "\n";
        }
        if (o.json) emit_json(o, "ts causation", {{"paths", rows}}, out);
        return ok ? 0 : 1;
    }
    if (action == "faithfulness") {
        const Window w = parse_window(o, t, err);
        TsLevel level;
        if (o.level == "grouped-summary")
            level = TsLevel::GroupedSummary;
        else if (o.level == "grouped-ts")
            level = TsLevel::GroupedTs;
        else
            throw InputError("--level must be 'grouped-summary' or 'grouped-ts', got '" + o.level + "'");
        const TsFaithfulness r =
            ts_faithfulness_check(t, q, level, w, o.max_cond, parse_kind(o.kind), static_cast<unsigned>(o.jobs));
        if (o.json)
            emit_json(o, "ts faithfulness",
                      {{"window", {w.start, w.end}}, {"level", o.level}, {"violations", report_json(r.partition, r.report)}},
                      out);
        else {
            out << "# relative to window " << w.start << ":" << w.end << "\n";
            print_report(r.partition, r.report, out);
        }
        return r.report.empty() ? 0 : 1;
    }
    throw InputError("unknown ts action '" + action + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Causal reasoning over groups of variables on mixed graphs", "groupcausal"};
    app.require_subcommand(1);
    Options o;
    std::function<int()> action;

    auto graph_opt = [&](CLI::App* c) { c->add_option("--graph", o.graph, "graph file")->required(); };
    auto partition_opt = [&](CLI::App* c) { c->add_option("--partition", o.partition, "group file"); };
    auto json_opt = [&](CLI::App* c) {
        c->add_option("--json", o.json, "JSON output, to stdout or the given file")->expected(0, 1);
    };
    auto kind_opt = [&](CLI::App* c) { c->add_option("--kind", o.kind, "sigma or m")->capture_default_str(); };

    auto* sep = app.add_subcommand("separate", "test separation between two nodes");
    graph_opt(sep);
    kind_opt(sep);
    sep->add_option("--a", o.a)->required();
    sep->add_option("--b", o.b)->required();
    sep->add_option("--given", o.given, "comma-separated conditioning nodes");
    sep->add_flag("--explain", o.explain, "show an open path or why each path is blocked");
    json_opt(sep);
    sep->callback([&] { action = [&] { return cmd_separate(o, out); }; });

    auto* co = app.add_subcommand("coarsen", "quotient graph of a partition");
    graph_opt(co);
    partition_opt(co);
    co->add_option("--dot", o.dot, "also write DOT here");
    json_opt(co);
    co->callback([&] { action = [&] { return cmd_coarsen(o, out); }; });

    auto* acy = app.add_subcommand("acyclify", "acyclification of a graph");
    graph_opt(acy);
    acy->add_option("--dot", o.dot, "also write DOT here");
    json_opt(acy);
    acy->callback([&] { action = [&] { return cmd_acyclify(o, out); }; });

    auto* com = app.add_subcommand("check-commute", "compare coarsen(acyclify(g)) with coarsen(g)");
    graph_opt(com);
    partition_opt(com);
    json_opt(com);
    com->callback([&] { action = [&] { return cmd_check_commute(o, out); }; });

    auto* scc = app.add_subcommand("partition-scc", "partition into strongly connected components");
    graph_opt(scc);
    json_opt(scc);
    scc->callback([&] { action = [&] { return cmd_partition_scc(o, out); }; });

    auto* fa = app.add_subcommand("faithfulness", "search group-level faithfulness violations");
    graph_opt(fa);
    partition_opt(fa);
    kind_opt(fa);
    fa->add_option("--max-cond", o.max_cond, "largest conditioning set, in groups")->capture_default_str();
    fa->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    json_opt(fa);
    fa->callback([&] { action = [&] { return cmd_faithfulness(o, out); }; });

    auto* cr = app.add_subcommand("criteria", "check faithfulness criteria 1 and 2");
    graph_opt(cr);
    partition_opt(cr);
    json_opt(cr);
    cr->callback([&] { action = [&] { return cmd_criteria(o, out); }; });

    auto* ca = app.add_subcommand("causes", "apparent and true causes between groups");
    graph_opt(ca);
    partition_opt(ca);
    ca->add_option("--from", o.from);
    ca->add_option("--to", o.to);
    json_opt(ca);
    ca->callback([&] { action = [&] { return cmd_causes(o, out); }; });

    auto* dot = app.add_subcommand("export-dot", "write a graph as DOT");
    graph_opt(dot);
    partition_opt(dot);
    dot->add_option("--out", o.out, "output file (default stdout)");
    dot->callback([&] { action = [&] { return cmd_export_dot(o, out); }; });

    auto* dis = app.add_subcommand("discover", "oracle-driven conservative PC over groups");
    graph_opt(dis);
    partition_opt(dis);
    kind_opt(dis);
    dis->add_flag("--sigma-aware", o.sigma_aware, "report when no DAG fits instead of applying Meek rule 1");
    json_opt(dis);
    dis->callback([&] { action = [&] { return cmd_discover(o, out); }; });

    auto* nl = app.add_subcommand("search-nonlocal", "random search for a non-local violation");
    nl->add_option("--seed", o.seed)->capture_default_str();
    nl->add_option("--max-nodes", o.max_nodes)->capture_default_str();
    nl->add_option("--groups", o.groups)->capture_default_str();
    nl->add_option("--max-cond", o.max_cond, "largest conditioning set, in groups")->default_str("2");
    nl->add_option("--attempts", o.attempts)->capture_default_str();
    nl->add_option("--out", o.out, "write the instance here");
    json_opt(nl);
    nl->callback([&] {
        if (nl->count("--max-cond") == 0) o.max_cond = 2;
        action = [&] { return cmd_search_nonlocal(o, out); };
    });

    auto* ts = app.add_subcommand("ts", "time-series templates");
    std::string ts_action;
    ts->add_option("action", ts_action, "unroll | summary | grouped-summary | grouped-ts | mixing | causation | faithfulness")
        ->required()
        ->check(CLI::IsMember({"unroll", "summary", "grouped-summary", "grouped-ts", "mixing", "causation", "faithfulness"}));
    ts->add_option("--template", o.templ, "template file")->required();
    ts->add_option("--window", o.window, "a:b, inclusive");
    ts->add_option("--level", o.level, "grouped-summary or grouped-ts")->capture_default_str();
    ts->add_option("--max-cond", o.max_cond)->capture_default_str();
    ts->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber)->capture_default_str();
    kind_opt(ts);
    ts->add_flag("--relaxed", o.relaxed, "within-group walks may use any lag");
    ts->add_flag("--no-self-pairs", o.no_self_pairs, "skip the (i, i) pairs in the mixing test");
    ts->add_option("--dot", o.dot, "also write DOT here");
    json_opt(ts);
    ts->callback([&] { action = [&] { return cmd_ts(ts_action, o, out, err); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace groupcausal::cli
