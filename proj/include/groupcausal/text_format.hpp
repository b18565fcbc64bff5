#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupcausal/grouping.hpp"
#include "groupcausal/mixed_graph.hpp"
#include "groupcausal/timeseries.hpp"

namespace groupcausal {

using GroupSpec = std::vector<std::pair<std::string, std::vector<std::string>>>;

struct ParsedGraph {
    MixedGraph graph;
    GroupSpec groups;  // empty when the text declares none
};

struct ParsedTemplate {
    TsTemplate templ;
    GroupSpec groups;
};

/// Line-based format:
///   node <label>
///   edge <label> -> <label>   (also <-> and --)
///   group <label> = <member>, <member>, ...
/// '#' starts a comment. Failures throw Error(ParseError) with "<source>:<line>: <what> '<token>'".
ParsedGraph parse_graph(const std::string& text, const std::string& source = "<input>");

/// Only group lines are accepted.
GroupSpec parse_groups(const std::string& text, const std::string& source = "<input>");

///   process <label>
///   tsedge <label> -> <label> lag <n>   (also <->)
///   group <label> = <process>, ...
ParsedTemplate parse_template(const std::string& text, const std::string& source = "<input>");

std::string write_graph(const MixedGraph& g, const Partition* p = nullptr);
std::string write_template(const TsTemplate& t, const Partition* q = nullptr);

/// Directed edges [dir=forward], bidirected [dir=both], undirected [dir=none]; blocks become clusters.
std::string export_dot(const MixedGraph& g, const Partition* p = nullptr);

/// Throws Error(ParseError) naming the path if it cannot be read.
std::string read_file(const std::string& path);

}  // namespace groupcausal
