#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "distaut/machine.hpp"
#include "distaut/popproto.hpp"

namespace distaut {

// Three accepted shapes:
//   rule table  {"states","alphabet","beta","init","accepting","rejecting","rules"}
//   builtin     {"builtin":"<zoo name>","params":{...},"alphabet":[...]}
//   transform   {"transform":"<name>","params":{...},"inputs":[<machine>...]}
//               {"transform":"from-popproto","protocol":<protocol>}
Machine parse_machine_json(std::string_view text);

// Builtins and transform results are written as recipes; other machines as
// their rule table, or as an explicit table when small enough. With
// prefer_table, a rule table is written whenever one is available.
std::string serialize_machine_json(const Machine& m, bool prefer_table = false);

// {"states","alphabet","init","accepting","rejecting",
//  "pair_rules":[{"lhs":[q1,q2],"rhs":[q1',q2']}]} or {"builtin":"parity"}.
PopulationProtocol parse_protocol_json(std::string_view text);
std::string serialize_protocol_json(const PopulationProtocol& p);

// "parity", "identity", "threshold-<c>".
PopulationProtocol builtin_protocol(const std::string& name);

std::vector<std::string> transform_names();

// Dispatch by name: synchronize, lib2excl-strong, excl2lib-strong,
// exclweak2sync, product (param combinator: 0 and, 1 or, 2 left), decount
// (param k). Throws DomainError for an unknown name or arity.
Machine apply_transform(const std::string& name, const std::vector<Machine>& inputs,
                        const std::map<std::string, std::int64_t>& params = {});

}  // namespace distaut
