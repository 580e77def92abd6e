#pragma once

#include <iosfwd>
#include <string>

#include "sg/core.hpp"
#include "sg/cover.hpp"

namespace sg {

// Graph text format, one record per line:
//   v <id>                   (optional; for isolated vertices)
//   e <edge-id> <u> <v> <+|->
// Lines starting with '#' and blank lines are ignored.
SignedGraph parse_graph(std::istream& in);
SignedGraph parse_graph_file(const std::string& path);
void emit_graph(std::ostream& out, const SignedGraph& g);
std::string graph_to_string(const SignedGraph& g);

// Orientation format: o <edge-id> <+1|-1> <+1|-1>   (slot 0, slot 1)
Orientation parse_orientation(std::istream& in, const SignedGraph& g);
Orientation parse_orientation_file(const std::string& path, const SignedGraph& g);
void emit_orientation(std::ostream& out, const SignedGraph& g, const Orientation& o);
std::string orientation_to_string(const SignedGraph& g, const Orientation& o);

// Flow format: f <edge-id> <integer>; omitted edges are zero.
EdgeFn parse_flow(std::istream& in, const SignedGraph& g);
EdgeFn parse_flow_file(const std::string& path, const SignedGraph& g);
void emit_flow(std::ostream& out, const SignedGraph& g, const EdgeFn& f);
std::string flow_to_string(const SignedGraph& g, const EdgeFn& f);

// Cover mapping: <cover-edge-id> -> <base-edge-id> <+|->
void emit_cover_mapping(std::ostream& out, const SignedGraph& g, const CoverGraph& cover);

}  // namespace sg
