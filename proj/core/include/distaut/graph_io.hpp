#pragma once

#include <string>
#include <string_view>

#include "distaut/graph.hpp"

namespace distaut {

// {"alphabet":[...],"nodes":[{"id":..,"label":..}],"edges":[[u,v],...]}
// Errors carry a JSON-pointer location such as "/edges/2".
LabeledGraph parse_graph_json(std::string_view text);
std::string serialize_graph_json(const LabeledGraph& g);

// Nodes in declaration order, one "a -- b;" line per edge.
std::string export_dot(const LabeledGraph& g);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace distaut
