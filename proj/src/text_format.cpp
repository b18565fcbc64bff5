#include "groupcausal/text_format.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "groupcausal/error.hpp"

namespace groupcausal {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
    std::string raw;  // comment stripped
};

std::vector<Line> split_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::istringstream words(raw);
        Line line{number, {}, raw};
        for (std::string w; words >> w;) line.tokens.push_back(w);
        if (!line.tokens.empty()) out.push_back(std::move(line));
    }
    return out;
}

[[noreturn]] void fail(const std::string& source, const Line& line, const std::string& what, const std::string& token) {
    throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line.number) + ": " + what + " '" + token + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool valid_label(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c == ',' || c == '=' || c == '#' || c == '"' || std::isspace(static_cast<unsigned char>(c))) return false;
    return s != "->" && s != "<->" && s != "--";
}

std::optional<EdgeKind> edge_kind(const std::string& op) {
    if (op == "->") return EdgeKind::Directed;
    if (op == "<->") return EdgeKind::Bidirected;
    if (op == "--") return EdgeKind::Undirected;
    return std::nullopt;
}

std::pair<std::string, std::vector<std::string>> parse_group_line(const std::string& source, const Line& line) {
    const auto eq = line.raw.find('=');
    if (eq == std::string::npos) fail(source, line, "expected '=' in group line", line.tokens.back());
    const std::string head = trim(line.raw.substr(0, eq));
    const std::string label = trim(head.substr(head.find("group") + 5));
    if (!valid_label(label)) fail(source, line, "bad group label", label);
    std::vector<std::string> members;
    std::istringstream rest(line.raw.substr(eq + 1));
    for (std::string item; std::getline(rest, item, ',');) {
        const std::string m = trim(item);
        if (!valid_label(m)) fail(source, line, "bad group member", m);
        members.push_back(m);
    }
    if (members.empty()) fail(source, line, "group has no members", label);
    return {label, members};
}

}  // namespace

ParsedGraph parse_graph(const std::string& text, const std::string& source) {
    GraphBuilder b;
    GroupSpec groups;
    for (const Line& line : split_lines(text)) {
        const std::string& kw = line.tokens[0];
        if (kw == "node") {
            if (line.tokens.size() != 2) fail(source, line, "expected 'node <label>'", line.tokens.back());
            if (!valid_label(line.tokens[1])) fail(source, line, "bad node label", line.tokens[1]);
            if (b.find(line.tokens[1])) fail(source, line, "duplicate node", line.tokens[1]);
            b.add_node(line.tokens[1]);
        } else if (kw == "edge") {
            if (line.tokens.size() != 4) fail(source, line, "expected 'edge <a> <op> <b>'", line.tokens.back());
            const auto kind = edge_kind(line.tokens[2]);
            if (!kind) fail(source, line, "unknown edge operator", line.tokens[2]);
            for (int i : {1, 3})
                if (!b.find(line.tokens[i])) fail(source, line, "undeclared node", line.tokens[i]);
            if (line.tokens[1] == line.tokens[3]) fail(source, line, "self edge", line.tokens[1]);
            if (!b.add_edge(line.tokens[1], *kind, line.tokens[3])) fail(source, line, "duplicate edge", line.tokens[2]);
        } else if (kw == "group") {
            groups.push_back(parse_group_line(source, line));
        } else {
            fail(source, line, "unknown keyword", kw);
        }
    }
    return ParsedGraph{std::move(b).build(), std::move(groups)};
}

GroupSpec parse_groups(const std::string& text, const std::string& source) {
    GroupSpec groups;
    for (const Line& line : split_lines(text)) {
        if (line.tokens[0] != "group") fail(source, line, "expected a group line", line.tokens[0]);
        groups.push_back(parse_group_line(source, line));
    }
    return groups;
}

ParsedTemplate parse_template(const std::string& text, const std::string& source) {
    std::vector<std::string> processes;
    std::vector<LagEdge> edges;
    std::set<LagEdge> seen;
    GroupSpec groups;
    auto index = [&](const Line& line, const std::string& p) {
        for (std::size_t i = 0; i < processes.size(); ++i)
            if (processes[i] == p) return i;
        fail(source, line, "undeclared process", p);
    };
    for (const Line& line : split_lines(text)) {
        const std::string& kw = line.tokens[0];
        if (kw == "process") {
            if (line.tokens.size() != 2) fail(source, line, "expected 'process <label>'", line.tokens.back());
            if (!valid_label(line.tokens[1])) fail(source, line, "bad process label", line.tokens[1]);
            for (const auto& p : processes)
                if (p == line.tokens[1]) fail(source, line, "duplicate process", p);
            processes.push_back(line.tokens[1]);
        } else if (kw == "tsedge") {
            if (line.tokens.size() != 6 || line.tokens[4] != "lag")
                fail(source, line, "expected 'tsedge <a> <op> <b> lag <n>'", line.tokens.back());
            const auto kind = edge_kind(line.tokens[2]);
            if (!kind || *kind == EdgeKind::Undirected) fail(source, line, "lag edges take -> or <->", line.tokens[2]);
            unsigned lag = 0;
            try {
                std::size_t used = 0;
                const long v = std::stol(line.tokens[5], &used);
                if (used != line.tokens[5].size() || v < 0) throw std::invalid_argument("lag");
                lag = static_cast<unsigned>(v);
            } catch (const std::exception&) {
                fail(source, line, "lag must be a non-negative integer", line.tokens[5]);
            }
            const std::size_t a = index(line, line.tokens[1]);
            const std::size_t c = index(line, line.tokens[3]);
            if (a == c && lag == 0) fail(source, line, "lag-0 self edge", line.tokens[1]);
            LagEdge e{a, c, lag, *kind};
            if (e.kind == EdgeKind::Bidirected && e.lag == 0 && e.target < e.source) std::swap(e.source, e.target);
            if (!seen.insert(e).second) fail(source, line, "duplicate lag edge", line.tokens[2]);
            edges.push_back(e);
        } else if (kw == "group") {
            groups.push_back(parse_group_line(source, line));
        } else {
            fail(source, line, "unknown keyword", kw);
        }
    }
    try {
        return ParsedTemplate{TsTemplate::make(processes, edges), std::move(groups)};
    } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, source + ": " + e.what());
    }
}

std::string write_graph(const MixedGraph& g, const Partition* p) {
    std::ostringstream out;
    for (const auto& l : g.labels()) out << "node " << l << "\n";
    for (const Edge& e : g.edges())
        out << "edge " << g.label(e.from) << " " << to_string(e.kind) << " " << g.label(e.to) << "\n";
    if (p) {
        for (GroupId y = 0; y < p->size(); ++y) {
            out << "group " << p->label(y) << " =";
            bool first = true;
            for (NodeId v : p->block(y)) {
                out << (first ? " " : ", ") << g.label(v);
                first = false;
            }
            out << "\n";
        }
    }
    return out.str();
}

std::string write_template(const TsTemplate& t, const Partition* q) {
    std::ostringstream out;
    for (const auto& p : t.processes()) out << "process " << p << "\n";
    for (const LagEdge& e : t.edges())
        out << "tsedge " << t.processes()[e.source] << " " << to_string(e.kind) << " " << t.processes()[e.target]
            << " lag " << e.lag << "\n";
    if (q) {
        for (GroupId y = 0; y < q->size(); ++y) {
            out << "group " << q->label(y) << " =";
            bool first = true;
            for (NodeId v : q->block(y)) {
                out << (first ? " " : ", ") << t.processes()[v];
                first = false;
            }
            out << "\n";
        }
    }
    return out.str();
}

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string export_dot(const MixedGraph& g, const Partition* p) {
    std::ostringstream out;
    out << "digraph G {\n";
    if (p) {
        for (GroupId y = 0; y < p->size(); ++y) {
            out << "  subgraph " << quoted("cluster_" + p->label(y)) << " {\n    label=" << quoted(p->label(y)) << ";\n";
            for (NodeId v : p->block(y)) out << "    " << quoted(g.label(v)) << ";\n";
            out << "  }\n";
        }
    } else {
        for (const auto& l : g.labels()) out << "  " << quoted(l) << ";\n";
    }
    for (const Edge& e : g.edges()) {
        const char* dir = e.kind == EdgeKind::Directed ? "forward" : e.kind == EdgeKind::Bidirected ? "both" : "none";
        out << "  " << quoted(g.label(e.from)) << " -> " << quoted(g.label(e.to)) << " [dir=" << dir << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace groupcausal
