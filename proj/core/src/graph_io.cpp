#include "distaut/graph_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "distaut/errors.hpp"

namespace distaut {

using nlohmann::json;

namespace {

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where, std::string("missing \"") + key + "\"");
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where, "expected a string");
  return j.get<std::string>();
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

LabeledGraph parse_graph_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  if (!doc.is_object()) throw ParseError("/", "graph must be a JSON object");

  std::vector<std::string> alphabet;
  const auto& alpha = member(doc, "alphabet", "/");
  if (!alpha.is_array()) throw ParseError("/alphabet", "expected an array");
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    alphabet.push_back(as_string(alpha[i], "/alphabet/" + std::to_string(i)));
  }
  std::set<std::string> alpha_set(alphabet.begin(), alphabet.end());

  std::vector<std::string> ids;
  std::vector<std::string> labels;
  std::map<std::string, NodeIndex> index;
  const auto& nodes = member(doc, "nodes", "/");
  if (!nodes.is_array()) throw ParseError("/nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto where = "/nodes/" + std::to_string(i);
    if (!nodes[i].is_object()) throw ParseError(where, "expected an object");
    auto id = as_string(member(nodes[i], "id", where), where + "/id");
    auto label = as_string(member(nodes[i], "label", where), where + "/label");
    if (!alpha_set.count(label)) throw ParseError(where + "/label", "label not in alphabet");
    if (!index.emplace(id, static_cast<NodeIndex>(ids.size())).second) {
      throw ParseError(where + "/id", "duplicate node id '" + id + "'");
    }
    ids.push_back(std::move(id));
    labels.push_back(std::move(label));
  }

  std::vector<Edge> edges;
  std::set<Edge> seen;
  const auto& edge_list = member(doc, "edges", "/");
  if (!edge_list.is_array()) throw ParseError("/edges", "expected an array");
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    const auto where = "/edges/" + std::to_string(i);
    const auto& e = edge_list[i];
    if (!e.is_array() || e.size() != 2) throw ParseError(where, "edge must be a pair of ids");
    NodeIndex ends[2];
    for (int k = 0; k < 2; ++k) {
      auto id = as_string(e[k], where + "/" + std::to_string(k));
      auto it = index.find(id);
      if (it == index.end()) throw ParseError(where, "unknown node '" + id + "'");
      ends[k] = it->second;
    }
    Edge key{std::min(ends[0], ends[1]), std::max(ends[0], ends[1])};
    if (!seen.insert(key).second) throw ParseError(where, "duplicate edge");
    edges.emplace_back(ends[0], ends[1]);
  }
  return LabeledGraph(std::move(alphabet), std::move(ids), std::move(labels), std::move(edges));
}

std::string serialize_graph_json(const LabeledGraph& g) {
  json doc;
  doc["alphabet"] = g.alphabet();
  doc["nodes"] = json::array();
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    doc["nodes"].push_back({{"id", g.id(v)}, {"label", g.label(v)}});
  }
  doc["edges"] = json::array();
  for (const auto& [u, v] : g.edges()) doc["edges"].push_back({g.id(u), g.id(v)});
  return doc.dump(2) + "\n";
}

std::string export_dot(const LabeledGraph& g) {
  std::ostringstream out;
  out << "graph G {\n";
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    out << "  " << dot_quote(g.id(v)) << " [label=" << dot_quote(g.id(v) + ":" + g.label(v))
        << "];\n";
  }
  for (const auto& [u, v] : g.edges()) {
    out << "  " << dot_quote(g.id(u)) << " -- " << dot_quote(g.id(v)) << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << text;
}

}  // namespace distaut
