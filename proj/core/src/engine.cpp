#include "distaut/engine.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include <json.hpp>

#include "distaut/errors.hpp"

namespace distaut {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::string to_string(SelectionKind kind) {
  switch (kind) {
    case SelectionKind::Liberal: return "liberal";
    case SelectionKind::Exclusive: return "exclusive";
    case SelectionKind::Synchronous: return "synchronous";
  }
  return "?";
}

SelectionKind parse_selection_kind(std::string_view text) {
  if (text == "liberal") return SelectionKind::Liberal;
  if (text == "exclusive") return SelectionKind::Exclusive;
  if (text == "synchronous") return SelectionKind::Synchronous;
  throw ParseError("selection", "unknown selection kind '" + std::string(text) + "'");
}

std::string ModelClass::to_string() const {
  std::string s = detection == Detection::Set ? "set" : "multiset";
  s += acceptance == Acceptance::Halting ? ".halting" : ".stabilizing";
  s += "." + distaut::to_string(selection);
  s += fairness == Fairness::Weak ? ".weak" : ".strong";
  return s;
}

ModelClass ModelClass::parse(std::string_view text) {
  auto parts = split(text, '.');
  if (parts.size() != 4) {
    throw ParseError("class", "expected detection.acceptance.selection.fairness, got '" +
                                  std::string(text) + "'");
  }
  ModelClass mc;
  if (parts[0] == "set") mc.detection = Detection::Set;
  else if (parts[0] == "multiset") mc.detection = Detection::Multiset;
  else throw ParseError("class", "unknown detection '" + std::string(parts[0]) + "'");
  if (parts[1] == "halting") mc.acceptance = Acceptance::Halting;
  else if (parts[1] == "stabilizing") mc.acceptance = Acceptance::Stabilizing;
  else throw ParseError("class", "unknown acceptance '" + std::string(parts[1]) + "'");
  mc.selection = parse_selection_kind(parts[2]);
  if (parts[3] == "weak") mc.fairness = Fairness::Weak;
  else if (parts[3] == "strong") mc.fairness = Fairness::Strong;
  else throw ParseError("class", "unknown fairness '" + std::string(parts[3]) + "'");
  return mc;
}

std::vector<ModelClass> all_model_classes() {
  std::vector<ModelClass> out;
  for (auto d : {Detection::Set, Detection::Multiset}) {
    for (auto a : {Acceptance::Halting, Acceptance::Stabilizing}) {
      for (auto s : {SelectionKind::Liberal, SelectionKind::Exclusive, SelectionKind::Synchronous}) {
        for (auto f : {Fairness::Weak, Fairness::Strong}) out.push_back({d, a, s, f});
      }
    }
  }
  return out;
}

PermittedSelections::PermittedSelections(SelectionKind kind, std::size_t node_count)
    : kind_(kind), n_(node_count) {}

bool PermittedSelections::contains(const Selection& s) const {
  if (!std::is_sorted(s.begin(), s.end()) ||
      std::adjacent_find(s.begin(), s.end()) != s.end()) {
    return false;
  }
  if (!s.empty() && s.back() >= n_) return false;
  switch (kind_) {
    case SelectionKind::Liberal: return true;
    case SelectionKind::Exclusive: return s.size() == 1;
    case SelectionKind::Synchronous: return s.size() == n_;
  }
  return false;
}

std::vector<Selection> PermittedSelections::enumerate(std::size_t max_nodes) const {
  std::vector<Selection> out;
  switch (kind_) {
    case SelectionKind::Exclusive:
      for (NodeIndex v = 0; v < n_; ++v) out.push_back({v});
      break;
    case SelectionKind::Synchronous: {
      Selection all(n_);
      for (NodeIndex v = 0; v < n_; ++v) all[v] = v;
      out.push_back(std::move(all));
      break;
    }
    case SelectionKind::Liberal: {
      if (n_ > max_nodes) {
        throw TooLarge("liberal selection enumeration limited to " + std::to_string(max_nodes) +
                       " nodes");
      }
      for (std::uint64_t mask = 0; mask < (1ull << n_); ++mask) {
        Selection s;
        for (NodeIndex v = 0; v < n_; ++v) {
          if (mask >> v & 1u) s.push_back(v);
        }
        out.push_back(std::move(s));
      }
      break;
    }
  }
  return out;
}

SchedulePolicy SchedulePolicy::for_kind(SelectionKind kind) {
  switch (kind) {
    case SelectionKind::Liberal: return liberal_bernoulli(0.5);
    case SelectionKind::Exclusive: return exclusive_uniform();
    case SelectionKind::Synchronous: return synchronous();
  }
  return synchronous();
}

SchedulePolicy SchedulePolicy::parse(std::string_view text) {
  if (text == "sync" || text == "synchronous") return synchronous();
  if (text == "exclusive-uniform") return exclusive_uniform();
  if (text == "liberal-bernoulli") return liberal_bernoulli(0.5);
  constexpr std::string_view prefix = "liberal-bernoulli:";
  if (text.substr(0, prefix.size()) == prefix) {
    auto rest = std::string(text.substr(prefix.size()));
    double p = 0;
    try {
      std::size_t used = 0;
      p = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(rest);
    } catch (const std::exception&) {
      throw ParseError("policy", "bad probability '" + rest + "'");
    }
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("selection probability must be in (0, 1]");
    return liberal_bernoulli(p);
  }
  throw ParseError("policy", "unknown policy '" + std::string(text) + "'");
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw DomainError("uniform_below(0)");
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

StepStatus classify(const Configuration& c, const Machine& m) {
  if (is_accepting_configuration(c, m)) return StepStatus::Accepting;
  if (is_rejecting_configuration(c, m)) return StepStatus::Rejecting;
  return StepStatus::Neither;
}

RunTrace simulate(const Machine& m, const LabeledGraph& g, const SchedulePolicy& policy,
                  long long budget, std::uint64_t seed, const SimulateOptions& options) {
  if (budget <= 0) throw DomainError("simulation budget must be positive");
  require_valid(g);
  const auto n = g.node_count();
  std::mt19937_64 rng(seed);

  RunTrace trace;
  Configuration current = initial_configuration(m, g);
  auto record = [&](const Configuration& c) {
    if (options.keep_configurations || trace.configurations.empty()) {
      trace.configurations.push_back(c);
    } else {
      trace.configurations.back() = c;
    }
    trace.status.push_back(classify(c, m));
  };
  record(current);

  std::unordered_map<Configuration, std::size_t, ConfigurationHash> seen;
  const bool sync = policy.kind == SchedulePolicy::Kind::Synchronous;
  if (sync) seen.emplace(current, 0);

  BoundedMultiset p(m.beta());
  std::vector<StateId> upd(n);
  for (long long step = 0; step < budget; ++step) {
    Selection sel;
    switch (policy.kind) {
      case SchedulePolicy::Kind::Synchronous:
        sel.resize(n);
        for (NodeIndex v = 0; v < n; ++v) sel[v] = v;
        break;
      case SchedulePolicy::Kind::ExclusiveUniform:
        sel.push_back(static_cast<NodeIndex>(uniform_below(rng, n)));
        break;
      case SchedulePolicy::Kind::LiberalBernoulli:
        for (NodeIndex v = 0; v < n; ++v) {
          if (uniform01(rng) < policy.p) sel.push_back(v);
        }
        break;
      case SchedulePolicy::Kind::Explicit: {
        const auto k = static_cast<std::size_t>(step);
        if (policy.schedule.empty() || (!policy.repeat && k >= policy.schedule.size())) {
          trace.terminal.kind = TerminalNote::Kind::ScheduleExhausted;
          return trace;
        }
        sel = policy.schedule[k % policy.schedule.size()];
        for (auto v : sel) {
          if (v >= n) throw DomainError("schedule selects a node outside the graph");
        }
        break;
      }
    }

    bool fixpoint = true;
    for (NodeIndex v = 0; v < n; ++v) {
      bounded_multiset(current.span(), v, g, p);
      upd[v] = m.next(current[v], p);
      if (upd[v] != current[v]) fixpoint = false;
    }
    if (fixpoint && policy.kind != SchedulePolicy::Kind::Explicit) {
      trace.terminal.kind = TerminalNote::Kind::Fixpoint;
      return trace;
    }
    Configuration next = current;
    for (auto v : sel) {
      if (options.assert_halting && upd[v] != current[v] &&
          (m.is_accepting(current[v]) || m.is_rejecting(current[v]))) {
        throw EvaluationError("node '" + g.id(v) + "' left terminal state '" +
                              m.state_name(current[v]) + "'");
      }
      next[v] = upd[v];
    }
    trace.selections.push_back(std::move(sel));
    current = std::move(next);
    record(current);

    if (sync) {
      auto [it, inserted] = seen.emplace(current, trace.status.size() - 1);
      if (!inserted) {
        trace.terminal.kind = TerminalNote::Kind::CycleDetected;
        trace.terminal.cycle_start = it->second;
        trace.terminal.period = trace.status.size() - 1 - it->second;
        return trace;
      }
    }
  }
  trace.terminal.kind = TerminalNote::Kind::BudgetExhausted;
  return trace;
}

std::vector<std::string> check_model_class(const Machine& m, const ModelClass& mc,
                                           std::size_t halting_cap) {
  std::vector<std::string> out;
  if (mc.detection == Detection::Set && m.beta() != 1) {
    out.push_back("counting bound exceeds 1 (beta = " + std::to_string(m.beta()) +
                  ") but the class uses set detection");
  }
  if (mc.acceptance == Acceptance::Halting) {
    auto report = check_halting(m, halting_cap);
    if (report.status == HaltingStatus::NotHalting) {
      out.push_back("machine is not halting: " + report.detail);
    } else if (report.status == HaltingStatus::TooLarge) {
      out.push_back("cannot verify halting: " + report.detail);
    }
  }
  return out;
}

std::vector<std::size_t> weakly_fair_prefix_deficit(const RunTrace& trace,
                                                    const LabeledGraph& g) {
  const auto steps = trace.selections.size();
  std::vector<std::size_t> deficit(g.node_count(), steps);
  for (std::size_t k = 0; k < steps; ++k) {
    for (auto v : trace.selections[k]) {
      if (v < deficit.size()) deficit[v] = steps - (k + 1);
    }
  }
  return deficit;
}

std::string trace_to_json(const RunTrace& trace, const Machine& m, const LabeledGraph& g) {
  using nlohmann::json;
  json doc;
  doc["machine"] = m.name();
  doc["nodes"] = g.ids();
  auto status_text = [](StepStatus s) {
    switch (s) {
      case StepStatus::Accepting: return "accepting";
      case StepStatus::Rejecting: return "rejecting";
      case StepStatus::Neither: return "neither";
    }
    return "?";
  };
  doc["steps"] = json::array();
  for (std::size_t k = 0; k < trace.status.size(); ++k) {
    json step;
    if (k > 0) {
      json sel = json::array();
      for (auto v : trace.selections[k - 1]) sel.push_back(g.id(v));
      step["selection"] = sel;
    }
    const Configuration* c = nullptr;
    if (trace.configurations.size() == trace.status.size()) {
      c = &trace.configurations[k];
    } else if (k + 1 == trace.status.size() && !trace.configurations.empty()) {
      c = &trace.configurations.back();
    }
    if (c) {
      json conf = json::array();
      for (auto q : c->states()) conf.push_back(m.state_name(q));
      step["configuration"] = conf;
    }
    step["status"] = status_text(trace.status[k]);
    doc["steps"].push_back(step);
  }
  json term;
  switch (trace.terminal.kind) {
    case TerminalNote::Kind::BudgetExhausted: term["kind"] = "budget-exhausted"; break;
    case TerminalNote::Kind::CycleDetected:
      term["kind"] = "cycle-detected";
      term["period"] = trace.terminal.period;
      term["cycle_start"] = trace.terminal.cycle_start;
      term["summary"] = "cycle-detected(period=" + std::to_string(trace.terminal.period) + ")";
      break;
    case TerminalNote::Kind::Fixpoint: term["kind"] = "fixpoint"; break;
    case TerminalNote::Kind::ScheduleExhausted: term["kind"] = "schedule-exhausted"; break;
  }
  doc["terminal"] = term;
  return doc.dump(2) + "\n";
}

}  // namespace distaut
