#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "distaut/engine.hpp"
#include "distaut/errors.hpp"
#include "distaut/graph.hpp"
#include "distaut/graph_io.hpp"
#include "distaut/machine_io.hpp"
#include "distaut/popproto.hpp"
#include "distaut/table.hpp"
#include "distaut/verdict.hpp"
#include "distaut/zoo.hpp"

using namespace distaut;
using nlohmann::json;

namespace {

// Exit codes. Verdicts use 0/3/4/5; everything else is an error.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitReject = 3;
constexpr int kExitInconsistent = 4;
constexpr int kExitTooLarge = 5;

struct UsageError : Error {
  using Error::Error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::size_t parse_count(const std::string& s, const std::string& what) {
  if (!all_digits(s)) throw UsageError(what + ": expected a number, got '" + s + "'");
  return static_cast<std::size_t>(std::stoull(s));
}

// `star 4`, `cycle 5`, `cycle 0,1,2`, `path a,b,b`, `complete 3`.
LabeledGraph generate(const std::string& kind, const std::string& arg) {
  if (kind == "star") {
    auto parts = split(arg, ',');
    if (parts.size() == 1) return generate_star(parse_count(parts[0], "star"));
    if (parts.size() == 2) return generate_star(parse_count(parts[0], "star"), parts[1]);
    throw UsageError("star: expected <leaves>[,<label>]");
  }
  const bool counted = all_digits(arg);
  const auto labels = split(arg, ',');
  if (kind == "cycle") return counted ? generate_cycle(parse_count(arg, "cycle")) : generate_cycle(labels);
  if (kind == "path") return counted ? generate_path(parse_count(arg, "path")) : generate_path(labels);
  if (kind == "complete") {
    return counted ? generate_complete(parse_count(arg, "complete")) : generate_complete(labels);
  }
  throw UsageError("unknown graph kind '" + kind + "' (star, cycle, path, complete)");
}

// A path to graph JSON, or an inline generator such as `cycle:0,1,2`.
LabeledGraph load_graph(const std::string& spec) {
  if (std::filesystem::exists(spec)) return parse_graph_json(read_text_file(spec));
  const auto colon = spec.find(':');
  if (colon != std::string::npos) return generate(spec.substr(0, colon), spec.substr(colon + 1));
  throw UsageError("graph '" + spec + "': no such file");
}

// A path to machine JSON, or a zoo name.
Machine load_machine(const std::string& spec) {
  if (std::filesystem::exists(spec)) return parse_machine_json(read_text_file(spec));
  const auto names = zoo_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) return zoo_entry(spec).machine;
  throw UsageError("machine '" + spec + "': no such file or zoo entry");
}

PopulationProtocol load_protocol(const std::string& spec) {
  if (std::filesystem::exists(spec)) return parse_protocol_json(read_text_file(spec));
  return builtin_protocol(spec);
}

Edge parse_anchor(const LabeledGraph& g, const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw UsageError("anchor must be <id>,<id>");
  NodeIndex ends[2];
  for (int i = 0; i < 2; ++i) {
    const auto v = g.find(parts[i]);
    if (!v) throw UsageError("anchor: unknown node '" + parts[i] + "'");
    ends[i] = *v;
  }
  return {ends[0], ends[1]};
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(out, text);
  }
}

std::string graph_text(const LabeledGraph& g, bool dot) {
  return dot ? export_dot(g) : serialize_graph_json(g);
}

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::Accept: return kExitOk;
    case Outcome::Reject: return kExitReject;
    case Outcome::Inconsistent: return kExitInconsistent;
    case Outcome::TooLarge: return kExitTooLarge;
  }
  return kExitUsage;
}

SelectionKind kind_of(const SchedulePolicy& p) {
  switch (p.kind) {
    case SchedulePolicy::Kind::Synchronous: return SelectionKind::Synchronous;
    case SchedulePolicy::Kind::ExclusiveUniform: return SelectionKind::Exclusive;
    default: return SelectionKind::Liberal;
  }
}

// {"schedule":[["u","v"],...],"repeat":true} or a bare array of selections.
// Nodes are given by id or by index.
SchedulePolicy load_schedule(const std::string& path, const LabeledGraph& g) {
  const auto doc = json::parse(read_text_file(path), nullptr, false);
  if (doc.is_discarded()) throw ParseError(path, "schedule is not valid JSON");
  const json& list = doc.is_object() ? doc.value("schedule", json::array()) : doc;
  if (!list.is_array()) throw ParseError(path + "#/schedule", "expected an array of selections");
  std::vector<Selection> schedule;
  for (std::size_t i = 0; i < list.size(); ++i) {
    Selection s;
    for (const auto& node : list[i]) {
      if (node.is_number_unsigned() && node.get<std::size_t>() < g.node_count()) {
        s.push_back(node.get<NodeIndex>());
      } else if (node.is_string() && g.find(node.get<std::string>())) {
        s.push_back(*g.find(node.get<std::string>()));
      } else {
        throw ParseError(path + "#/schedule/" + std::to_string(i), "unknown node " + node.dump());
      }
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    schedule.push_back(std::move(s));
  }
  const bool repeat = doc.is_object() && doc.value("repeat", false);
  return SchedulePolicy::explicit_schedule(std::move(schedule), repeat);
}

std::vector<ModelClass> parse_classes(const std::string& text) {
  if (text.empty() || text == "all") return all_model_classes();
  std::vector<ModelClass> out;
  for (const auto& part : split(text, ',')) out.push_back(ModelClass::parse(part));
  return out;
}

json machine_info(const Machine& m) {
  json doc;
  doc["name"] = m.name();
  doc["state_count"] = m.state_count();
  doc["beta"] = m.beta();
  doc["alphabet"] = m.alphabet();
  doc["states"] = m.states();
  json acc = json::array(), rej = json::array();
  for (auto q : m.accepting()) acc.push_back(m.state_name(q));
  for (auto q : m.rejecting()) rej.push_back(m.state_name(q));
  doc["accepting"] = acc;
  doc["rejecting"] = rej;
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed automata on labeled graphs: decide, simulate, transform."};
  app.require_subcommand(1);

  // ---- graph
  auto* graph = app.add_subcommand("graph", "Generate and transform graphs");
  graph->require_subcommand(1);
  std::string out_path;
  bool as_dot = false;

  std::string gen_kind, gen_arg;
  auto* gen = graph->add_subcommand("gen", "star N | cycle N|labels | path N|labels | complete N|labels");
  gen->add_option("kind", gen_kind, "star, cycle, path or complete")->required();
  gen->add_option("arg", gen_arg, "node count or comma-separated labels")->required();

  std::string cover_in;
  auto* cover = graph->add_subcommand("cover", "Kronecker (bipartite double) cover");
  cover->add_option("input", cover_in, "graph JSON")->required();

  std::string chain_g, chain_h, g_anchor, h_anchor;
  std::size_t chain_t = 1;
  auto* chain = graph->add_subcommand("chain", "Join t copies of G and H along anchor edges");
  chain->add_option("first", chain_g, "graph JSON for G")->required();
  chain->add_option("second", chain_h, "graph JSON for H")->required();
  chain->add_option("--t", chain_t, "copies of each graph")->check(CLI::PositiveNumber);
  chain->add_option("--g-anchor", g_anchor, "adjacent node ids u,v in G")->required();
  chain->add_option("--h-anchor", h_anchor, "adjacent node ids x,y in H")->required();

  std::size_t enum_max = 4, enum_min = 2;
  auto* enumerate = graph->add_subcommand("enumerate", "Connected graphs up to isomorphism, as a JSON array");
  enumerate->add_option("--max-nodes", enum_max, "at most 6")->check(CLI::Range(1, 6));
  enumerate->add_option("--min-nodes", enum_min);

  for (auto* sub : {gen, cover, chain, enumerate}) {
    sub->add_option("-o,--out", out_path, "write to a file instead of stdout");
  }
  for (auto* sub : {gen, cover, chain}) sub->add_flag("--dot", as_dot, "DOT instead of JSON");

  // ---- decide
  std::string machine_spec, graph_spec, class_text;
  DecideOptions decide_options;
  bool json_out = false;
  std::string dot_out;
  auto* decide_cmd = app.add_subcommand("decide", "Exact verdict of a machine on a graph");
  decide_cmd->add_option("--machine", machine_spec, "machine JSON or zoo name")->required();
  decide_cmd->add_option("--graph", graph_spec, "graph JSON or kind:arg, e.g. cycle:0,1,2")->required();
  decide_cmd->add_option("--class", class_text, "detection.acceptance.selection.fairness")->required();
  decide_cmd->add_flag("--witness", decide_options.witness, "attach lasso evidence");
  decide_cmd->add_option("--max-configs", decide_options.max_configs, "exploration cap")
      ->capture_default_str();
  decide_cmd->add_option("--max-product", decide_options.max_product, "cap for the weak product check")
      ->capture_default_str();
  decide_cmd->add_flag("--json", json_out, "print the verdict as JSON");
  decide_cmd->add_option("--dot", dot_out, "also write the configuration graph as DOT");

  // ---- run
  std::string policy_text = "sync";
  long long steps = 0;
  std::uint64_t seed = 0;
  std::string dot_config_graph;
  std::size_t run_max_configs = DecideOptions{}.max_configs;
  auto* run = app.add_subcommand("run", "Simulate one run and print its trace");
  run->add_option("--machine", machine_spec, "machine JSON or zoo name")->required();
  run->add_option("--graph", graph_spec, "graph JSON or kind:arg")->required();
  run->add_option("--policy", policy_text,
                  "sync | exclusive-uniform | liberal-bernoulli:p | file:<schedule.json>")
      ->capture_default_str();
  run->add_option("--steps", steps, "step budget, at least 1")->required();
  run->add_option("--seed", seed)->capture_default_str();
  run->add_option("--dot-config-graph", dot_config_graph, "write the explored configuration graph as DOT");
  run->add_option("--max-configs", run_max_configs, "cap for --dot-config-graph")->capture_default_str();

  // ---- transform
  std::string transform_name;
  std::vector<std::string> transform_inputs;
  std::int64_t decount_k = 2;
  std::string combinator = "and";
  bool info = false, prefer_table = false;
  auto* transform = app.add_subcommand("transform", "Apply a machine transformation");
  transform->add_option("name", transform_name,
                        "synchronize | lib2excl-strong | excl2lib-strong | exclweak2sync | product | "
                        "decount | from-popproto")
      ->required();
  transform->add_option("inputs", transform_inputs, "machine JSON or zoo names (protocol for from-popproto)")
      ->required();
  transform->add_option("--k", decount_k, "degree bound for decount")->capture_default_str();
  transform->add_option("--combinator", combinator, "and | or | left (product)")->capture_default_str();
  transform->add_flag("--info", info, "print a state summary instead of the machine JSON");
  transform->add_option("-o,--out", out_path);

  // ---- zoo
  auto* zoo = app.add_subcommand("zoo", "Built-in machines");
  zoo->require_subcommand(1);
  auto* zoo_list = zoo->add_subcommand("list", "Names, classes and languages");
  std::string zoo_name;
  auto* zoo_get = zoo->add_subcommand("get", "Machine JSON of a zoo entry");
  zoo_get->add_option("name", zoo_name)->required();
  zoo_get->add_flag("--table", prefer_table, "rule-table form where one exists");
  zoo_get->add_flag("--info", info, "print a state summary instead");

  // ---- table
  std::size_t table_max = 4, table_labeled_max = 3, threads = std::max(1u, std::thread::hardware_concurrency());
  std::string table_zoo, table_classes, corpus_dir, cache_dir;
  std::size_t table_max_configs = 500'000;
  auto* table = app.add_subcommand("table", "Which classes recognize which zoo language on a corpus");
  table->add_option("--max-nodes", table_max, "unlabeled corpus size")->check(CLI::Range(2, 6))
      ->capture_default_str();
  table->add_option("--labeled-max-nodes", table_labeled_max, "size for all-labelings corpora")
      ->check(CLI::Range(2, 6))->capture_default_str();
  table->add_option("--zoo", table_zoo, "comma-separated entries (default all)");
  table->add_option("--classes", table_classes, "comma-separated classes (default all 24)");
  table->add_option("--corpus-dir", corpus_dir, "use every *.json graph here instead of the default corpus");
  table->add_option("--cache-dir", cache_dir, "memoize enumerations (else $AUTOMATA_CACHE_DIR)");
  table->add_option("--threads", threads)->check(CLI::PositiveNumber);
  table->add_option("--max-configs", table_max_configs)->capture_default_str();
  table->add_flag("--json", json_out, "print cells as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      emit(graph_text(generate(gen_kind, gen_arg), as_dot), out_path);
      return kExitOk;
    }
    if (cover->parsed()) {
      const auto g = parse_graph_json(read_text_file(cover_in));
      const auto c = kronecker_cover(g);
      if (!is_connected(c)) std::cerr << "warning: disconnected cover (the input graph is bipartite)\n";
      emit(graph_text(c, as_dot), out_path);
      return kExitOk;
    }
    if (chain->parsed()) {
      const auto g = parse_graph_json(read_text_file(chain_g));
      const auto h = parse_graph_json(read_text_file(chain_h));
      const auto joined = chain_construction(g, h, chain_t, parse_anchor(g, g_anchor), parse_anchor(h, h_anchor));
      emit(graph_text(joined, as_dot), out_path);
      return kExitOk;
    }
    if (enumerate->parsed()) {
      auto doc = json::array();
      for (const auto& g : enumerate_connected_graphs(enum_max, enum_min)) {
        doc.push_back(json::parse(serialize_graph_json(g)));
      }
      emit(doc.dump(2), out_path);
      return kExitOk;
    }

    if (decide_cmd->parsed()) {
      const auto m = load_machine(machine_spec);
      const auto g = load_graph(graph_spec);
      const auto mc = ModelClass::parse(class_text);
      const auto v = decide(m, g, mc, decide_options);
      if (json_out) {
        std::cout << verdict_to_json(v, m, g);
      } else {
        std::cout << to_string(v.outcome) << "  (" << v.configurations << " configurations)";
        if (!v.note.empty()) std::cout << "  " << v.note;
        std::cout << "\n";
        for (const auto& w : v.witnesses) {
          std::cout << "  lasso: stem " << w.stem.size() << ", loop " << w.loop.size() << ", " << w.outcome
                    << "\n";
        }
      }
      if (!dot_out.empty()) {
        write_text_file(dot_out, config_graph_to_dot(build_config_graph(m, g, mc.selection, decide_options.max_configs), m, g));
      }
      return exit_for(v.outcome);
    }

    if (run->parsed()) {
      if (steps <= 0) throw UsageError("--steps must be at least 1");
      const auto m = load_machine(machine_spec);
      const auto g = load_graph(graph_spec);
      require_valid(g);
      const auto policy = policy_text.rfind("file:", 0) == 0 ? load_schedule(policy_text.substr(5), g)
                                                              : SchedulePolicy::parse(policy_text);
      const auto trace = simulate(m, g, policy, steps, seed);
      std::cout << trace_to_json(trace, m, g);
      if (!dot_config_graph.empty()) {
        write_text_file(dot_config_graph,
                        config_graph_to_dot(build_config_graph(m, g, kind_of(policy), run_max_configs), m, g));
      }
      return kExitOk;
    }

    if (transform->parsed()) {
      std::optional<Machine> result;
      if (transform_name == "from-popproto") {
        if (transform_inputs.size() != 1) throw UsageError("from-popproto takes one protocol");
        result = popproto_to_automaton(load_protocol(transform_inputs[0]));
      } else {
        const auto names = transform_names();
        if (std::find(names.begin(), names.end(), transform_name) == names.end()) {
          throw UsageError("unknown transform '" + transform_name + "'");
        }
        std::vector<Machine> inputs;
        for (const auto& spec : transform_inputs) inputs.push_back(load_machine(spec));
        std::map<std::string, std::int64_t> params{{"k", decount_k}};
        if (combinator == "and") params["combinator"] = 0;
        else if (combinator == "or") params["combinator"] = 1;
        else if (combinator == "left") params["combinator"] = 2;
        else throw UsageError("--combinator must be and, or or left");
        result = apply_transform(transform_name, inputs, params);
      }
      emit(info ? machine_info(*result).dump(2) : serialize_machine_json(*result), out_path);
      return kExitOk;
    }

    if (zoo_list->parsed()) {
      for (const auto& name : zoo_names()) {
        const auto e = zoo_entry(name);
        std::cout << name << "  " << e.model_class.to_string() << "  |Q|=" << e.machine.state_count()
                  << "  " << e.summary << "\n";
      }
      return kExitOk;
    }
    if (zoo_get->parsed()) {
      const auto e = zoo_entry(zoo_name);
      std::cout << (info ? machine_info(e.machine).dump(2) : serialize_machine_json(e.machine, prefer_table))
                << "\n";
      return kExitOk;
    }

    if (table->parsed()) {
      std::vector<std::string> names = table_zoo.empty() ? zoo_names() : split(table_zoo, ',');
      std::vector<LabeledGraph> shared;
      if (!corpus_dir.empty()) {
        std::vector<std::filesystem::path> files;
        for (const auto& f : std::filesystem::directory_iterator(corpus_dir)) {
          if (f.path().extension() == ".json") files.push_back(f.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& f : files) shared.push_back(parse_graph_json(read_text_file(f.string())));
      }
      std::vector<TableRow> rows;
      for (const auto& name : names) {
        auto e = zoo_entry(name);
        std::vector<LabeledGraph> corpus;
        if (corpus_dir.empty()) {
          corpus = row_corpus(e, table_max, table_labeled_max, cache_dir);
        } else {
          // graphs whose labels the machine can read
          for (const auto& g : shared) {
            bool readable = true;
            for (const auto& l : g.labels()) readable = readable && e.machine.try_init_state(l).has_value();
            if (readable) corpus.push_back(g);
          }
        }
        rows.push_back({std::move(e), std::move(corpus)});
      }
      const auto classes = parse_classes(table_classes);
      DecideOptions options;
      options.max_configs = table_max_configs;
      const auto cells = recognition_table(rows, classes, threads, options);
      if (json_out) {
        auto doc = json::array();
        for (const auto& c : cells) {
          doc.push_back({{"entry", c.entry},
                         {"class", c.model_class.to_string()},
                         {"mark", to_string(c.mark)},
                         {"agree", c.agree},
                         {"disagree", c.disagree},
                         {"inconsistent", c.inconsistent},
                         {"too_large", c.too_large},
                         {"violations", c.violations}});
        }
        std::cout << doc.dump(2) << "\n";
      } else {
        std::cout << format_table(cells, classes);
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "validation failed:\n";
    for (const auto& v : e.violations()) std::cerr << "  " << v << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.location() << ": " << e.what() << "\n";
    return kExitValidation;
  } catch (const EvaluationError& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const TooLarge& e) {
    std::cerr << "too large: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
