#include "distaut/machine_io.hpp"

#include <algorithm>

#include <json.hpp>

#include "distaut/errors.hpp"
#include "distaut/rule_table.hpp"
#include "distaut/transforms.hpp"
#include "distaut/zoo.hpp"

namespace distaut {

using nlohmann::json;

namespace {

json parse_doc(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
}

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where, std::string("missing \"") + key + "\"");
  return *it;
}

std::string str(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> str_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], where + "/" + std::to_string(i)));
  return out;
}

std::vector<std::string> optional_list(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) return {};
  return str_list(*it, where + key);
}

std::map<std::string, std::int64_t> params_of(const json& obj, const std::string& where) {
  std::map<std::string, std::int64_t> out;
  auto it = obj.find("params");
  if (it == obj.end()) return out;
  if (!it->is_object()) throw ParseError(where + "params", "expected an object");
  for (const auto& [k, v] : it->items()) {
    if (v.is_number_integer()) {
      out[k] = v.get<std::int64_t>();
    } else if (k == "combinator" && v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "and") out[k] = 0;
      else if (s == "or") out[k] = 1;
      else if (s == "left") out[k] = 2;
      else throw ParseError(where + "params/" + k, "combinator must be and, or or left");
    } else {
      throw ParseError(where + "params/" + k, "expected an integer");
    }
  }
  return out;
}

Comparator parse_op(const std::string& op, const std::string& where) {
  if (op == "=" || op == "==") return Comparator::Eq;
  if (op == ">=") return Comparator::Ge;
  if (op == "<=") return Comparator::Le;
  throw ParseError(where, "unknown comparator '" + op + "'");
}

const char* op_text(Comparator c) {
  switch (c) {
    case Comparator::Eq: return "=";
    case Comparator::Ge: return ">=";
    case Comparator::Le: return "<=";
  }
  return "=";
}

PopulationProtocol protocol_from(const json& doc, const std::string& where);
Machine machine_from(const json& doc, const std::string& where);

Machine rule_table_from(const json& doc, const std::string& where) {
  MachineHeader h;
  h.name = doc.contains("name") ? str(doc["name"], where + "name") : "machine";
  h.states = str_list(member(doc, "states", where), where + "states");
  h.alphabet = str_list(member(doc, "alphabet", where), where + "alphabet");
  const auto& beta = member(doc, "beta", where);
  if (!beta.is_number_integer() || beta.get<int>() < 1 || beta.get<int>() > 255) {
    throw ParseError(where + "beta", "beta must be an integer in 1..255");
  }
  h.beta = beta.get<int>();
  const auto& init = member(doc, "init", where);
  if (!init.is_object()) throw ParseError(where + "init", "expected an object label -> state");
  for (const auto& [k, v] : init.items()) h.init[k] = str(v, where + "init/" + k);
  h.accepting = optional_list(doc, "accepting", where);
  h.rejecting = optional_list(doc, "rejecting", where);
  RuleTable rt;
  if (doc.contains("rules")) {
    const auto& rules = doc["rules"];
    if (!rules.is_array()) throw ParseError(where + "rules", "expected an array");
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const auto at = where + "rules/" + std::to_string(i);
      const auto& r = rules[i];
      if (!r.is_object()) throw ParseError(at, "expected an object");
      Rule rule;
      rule.from = str(member(r, "from", at), at + "/from");
      rule.to = str(member(r, "to", at), at + "/to");
      if (r.contains("guards")) {
        const auto& guards = r["guards"];
        if (!guards.is_array()) throw ParseError(at + "/guards", "expected an array");
        for (std::size_t j = 0; j < guards.size(); ++j) {
          const auto gat = at + "/guards/" + std::to_string(j);
          const auto& g = guards[j];
          if (!g.is_object()) throw ParseError(gat, "expected an object");
          Guard guard;
          guard.state = str(member(g, "state", gat), gat + "/state");
          guard.op = parse_op(str(member(g, "op", gat), gat + "/op"), gat + "/op");
          const auto& n = member(g, "n", gat);
          if (!n.is_number_integer()) throw ParseError(gat + "/n", "expected an integer");
          guard.threshold = n.get<int>();
          rule.guards.push_back(std::move(guard));
        }
      }
      rt.rules.push_back(std::move(rule));
    }
  }
  return compile_rule_table(rt, h);
}

Machine machine_from(const json& doc, const std::string& where) {
  if (!doc.is_object()) throw ParseError(where.empty() ? "/" : where, "machine must be a JSON object");
  if (doc.contains("builtin")) {
    const auto name = str(doc["builtin"], where + "builtin");
    const auto alphabet = optional_list(doc, "alphabet", where);
    try {
      return builtin_machine(name, params_of(doc, where), alphabet);
    } catch (const DomainError& e) {
      throw ParseError(where + "builtin", e.what());
    }
  }
  if (doc.contains("transform")) {
    const auto name = str(doc["transform"], where + "transform");
    if (name == "from-popproto") {
      return popproto_to_automaton(protocol_from(member(doc, "protocol", where), where + "protocol/"));
    }
    std::vector<Machine> inputs;
    const auto& in = member(doc, "inputs", where);
    if (!in.is_array()) throw ParseError(where + "inputs", "expected an array");
    for (std::size_t i = 0; i < in.size(); ++i) {
      inputs.push_back(machine_from(in[i], where + "inputs/" + std::to_string(i) + "/"));
    }
    try {
      return apply_transform(name, inputs, params_of(doc, where));
    } catch (const DomainError& e) {
      throw ParseError(where + "transform", e.what());
    }
  }
  return rule_table_from(doc, where);
}

json rule_table_json(const Machine& m, const RuleTable& rt) {
  const auto h = header_of(m);
  json doc;
  doc["name"] = h.name;
  doc["states"] = h.states;
  doc["alphabet"] = h.alphabet;
  doc["beta"] = h.beta;
  json init = json::object();
  for (const auto& [k, v] : h.init) init[k] = v;
  doc["init"] = init;
  doc["accepting"] = h.accepting;
  doc["rejecting"] = h.rejecting;
  json rules = json::array();
  for (const auto& r : rt.rules) {
    json guards = json::array();
    for (const auto& g : r.guards) guards.push_back({{"state", g.state}, {"op", op_text(g.op)}, {"n", g.threshold}});
    rules.push_back({{"from", r.from}, {"guards", guards}, {"to", r.to}});
  }
  doc["rules"] = rules;
  return doc;
}

json machine_json(const Machine& m);

json ref_json(const MachineRef& ref) {
  if (ref.kind == "inline") return machine_json(*ref.machine);
  json doc;
  if (ref.kind == "builtin") {
    doc["builtin"] = ref.name;
    if (!ref.params.empty()) doc["params"] = ref.params;
    if (!ref.alphabet.empty()) doc["alphabet"] = ref.alphabet;
    return doc;
  }
  if (ref.kind == "transform") {
    doc["transform"] = ref.name;
    if (ref.name == "from-popproto") {
      doc["protocol"] = json{{"builtin", ref.inputs.at(0)->name}};
      return doc;
    }
    if (!ref.params.empty()) doc["params"] = ref.params;
    json inputs = json::array();
    for (const auto& in : ref.inputs) inputs.push_back(ref_json(*in));
    doc["inputs"] = inputs;
    return doc;
  }
  throw Error("cannot serialize machine reference of kind '" + ref.kind + "'");
}

json machine_json(const Machine& m) {
  if (m.origin()) return ref_json(*m.origin());
  if (const auto* rt = rule_table_of(m)) return rule_table_json(m, *rt);
  if (table_enumerable(m)) return rule_table_json(m, to_rule_table(m, export_table(m)));
  throw TooLarge("machine '" + m.name() + "' has no recipe and is too large to tabulate");
}

PopulationProtocol protocol_from(const json& doc, const std::string& where) {
  if (!doc.is_object()) throw ParseError(where.empty() ? "/" : where, "protocol must be a JSON object");
  if (doc.contains("builtin")) {
    try {
      return builtin_protocol(str(doc["builtin"], where + "builtin"));
    } catch (const DomainError& e) {
      throw ParseError(where + "builtin", e.what());
    }
  }
  const auto name = doc.contains("name") ? str(doc["name"], where + "name") : "protocol";
  const auto states = str_list(member(doc, "states", where), where + "states");
  const auto alphabet = str_list(member(doc, "alphabet", where), where + "alphabet");
  auto index = [&](const std::string& s, const std::string& at) {
    auto it = std::find(states.begin(), states.end(), s);
    if (it == states.end()) throw ParseError(at, "unknown state '" + s + "'");
    return static_cast<StateId>(it - states.begin());
  };
  const auto& init = member(doc, "init", where);
  if (!init.is_object()) throw ParseError(where + "init", "expected an object label -> state");
  std::vector<StateId> init_states;
  for (const auto& a : alphabet) {
    if (!init.contains(a)) throw ParseError(where + "init", "no initial state for label '" + a + "'");
    init_states.push_back(index(str(init[a], where + "init/" + a), where + "init/" + a));
  }
  std::vector<StateId> acc;
  std::vector<StateId> rej;
  for (const auto& s : optional_list(doc, "accepting", where)) acc.push_back(index(s, where + "accepting"));
  for (const auto& s : optional_list(doc, "rejecting", where)) rej.push_back(index(s, where + "rejecting"));
  std::vector<PopulationProtocol::PairRule> rules;
  if (doc.contains("pair_rules")) {
    const auto& pr = doc["pair_rules"];
    if (!pr.is_array()) throw ParseError(where + "pair_rules", "expected an array");
    for (std::size_t i = 0; i < pr.size(); ++i) {
      const auto at = where + "pair_rules/" + std::to_string(i);
      const auto lhs = str_list(member(pr[i], "lhs", at), at + "/lhs");
      const auto rhs = str_list(member(pr[i], "rhs", at), at + "/rhs");
      if (lhs.size() != 2 || rhs.size() != 2) throw ParseError(at, "lhs and rhs must be pairs");
      rules.push_back({index(lhs[0], at), index(lhs[1], at), index(rhs[0], at), index(rhs[1], at)});
    }
  }
  return PopulationProtocol(name, states, alphabet, init_states, acc, rej, rules);
}

}  // namespace

Machine parse_machine_json(std::string_view text) { return machine_from(parse_doc(text), "/"); }

std::string serialize_machine_json(const Machine& m, bool prefer_table) {
  if (prefer_table) {
    if (const auto* rt = rule_table_of(m)) return rule_table_json(m, *rt).dump(2);
    if (table_enumerable(m, 100'000)) return rule_table_json(m, to_rule_table(m, export_table(m))).dump(2);
  }
  return machine_json(m).dump(2);
}

PopulationProtocol parse_protocol_json(std::string_view text) {
  return protocol_from(parse_doc(text), "/");
}

std::string serialize_protocol_json(const PopulationProtocol& p) {
  json doc;
  doc["name"] = p.name();
  doc["states"] = p.states();
  doc["alphabet"] = p.alphabet();
  json init = json::object();
  for (std::size_t i = 0; i < p.alphabet().size(); ++i) init[p.alphabet()[i]] = p.state_name(p.init()[i]);
  doc["init"] = init;
  json acc = json::array();
  json rej = json::array();
  for (auto q : p.accepting()) acc.push_back(p.state_name(q));
  for (auto q : p.rejecting()) rej.push_back(p.state_name(q));
  doc["accepting"] = acc;
  doc["rejecting"] = rej;
  json rules = json::array();
  for (const auto& r : p.rules()) {
    rules.push_back({{"lhs", {p.state_name(r.lhs_initiator), p.state_name(r.lhs_responder)}},
                     {"rhs", {p.state_name(r.rhs_initiator), p.state_name(r.rhs_responder)}}});
  }
  doc["pair_rules"] = rules;
  return doc.dump(2);
}

PopulationProtocol builtin_protocol(const std::string& name) {
  if (name == "parity") return parity_protocol();
  if (name == "identity") return identity_protocol();
  if (name.rfind("threshold-", 0) == 0) {
    const auto tail = name.substr(10);
    if (tail.size() == 1 && tail[0] >= '1' && tail[0] <= '4') return threshold_protocol(tail[0] - '0');
  }
  throw DomainError("unknown protocol '" + name + "' (parity, identity, threshold-1..4)");
}

std::vector<std::string> transform_names() {
  return {"synchronize", "lib2excl-strong", "excl2lib-strong", "exclweak2sync", "product", "decount",
          "from-popproto"};
}

Machine apply_transform(const std::string& name, const std::vector<Machine>& inputs,
                        const std::map<std::string, std::int64_t>& params) {
  auto need = [&](std::size_t n) {
    if (inputs.size() != n) {
      throw DomainError("transform " + name + " takes " + std::to_string(n) + " input machine(s)");
    }
  };
  auto param = [&](const std::string& key, std::int64_t fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "synchronize") {
    need(1);
    return synchronize(inputs[0]);
  }
  if (name == "lib2excl-strong") {
    need(1);
    return liberal_strong_to_exclusive_strong(inputs[0]);
  }
  if (name == "excl2lib-strong") {
    need(1);
    return exclusive_strong_to_liberal_strong(inputs[0]);
  }
  if (name == "exclweak2sync") {
    need(1);
    return exclusive_weak_to_synchronous_weak(inputs[0]);
  }
  if (name == "product") {
    need(2);
    const auto c = param("combinator", 0);
    if (c < 0 || c > 2) throw DomainError("product: combinator must be 0 (and), 1 (or) or 2 (left)");
    return product(inputs[0], inputs[1], static_cast<Combinator>(c));
  }
  if (name == "decount") {
    need(1);
    const auto k = param("k", 2);
    if (k < 1 || k > 8) throw DomainError("decount: k must be in 1..8");
    return decount_bounded_degree(inputs[0], static_cast<std::size_t>(k));
  }
  throw DomainError("unknown transform '" + name + "'");
}

}  // namespace distaut
