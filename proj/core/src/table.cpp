#include "distaut/table.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "distaut/errors.hpp"
#include "distaut/graph_io.hpp"

namespace distaut {

std::string to_string(CellMark m) {
  switch (m) {
    case CellMark::Recognizes: return "yes";
    case CellMark::Fails: return "no";
    case CellMark::Inconsistent: return "inconsistent";
    case CellMark::Undecided: return "too-large";
  }
  return "?";
}

std::string symbol(CellMark m) {
  switch (m) {
    case CellMark::Recognizes: return "✓";
    case CellMark::Fails: return "✗";
    case CellMark::Inconsistent: return "!";
    case CellMark::Undecided: return "?";
  }
  return "?";
}

std::vector<TableCell> recognition_table(const std::vector<TableRow>& rows,
                                         const std::vector<ModelClass>& classes, std::size_t threads,
                                         const DecideOptions& options) {
  std::vector<TableCell> cells;
  struct Task {
    std::size_t cell;
    const TableRow* row;
    const LabeledGraph* graph;
  };
  std::vector<Task> tasks;
  for (const auto& row : rows) {
    for (const auto& mc : classes) {
      TableCell cell;
      cell.entry = row.entry.name;
      cell.model_class = mc;
      cell.violations = check_model_class(row.entry.machine, mc);
      const auto index = cells.size();
      if (cell.violations.empty()) {
        for (const auto& g : row.corpus) tasks.push_back({index, &row, &g});
      }
      cells.push_back(std::move(cell));
    }
  }

  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    while (true) {
      const auto i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const auto& t = tasks[i];
      const auto& mc = cells[t.cell].model_class;
      const auto v = decide(t.row->entry.machine, *t.graph, mc, options);
      const bool expected = t.row->entry.oracle(*t.graph);
      std::lock_guard<std::mutex> lock(mu);
      auto& cell = cells[t.cell];
      switch (v.outcome) {
        case Outcome::Accept:
        case Outcome::Reject:
          if ((v.outcome == Outcome::Accept) == expected) ++cell.agree;
          else ++cell.disagree;
          break;
        case Outcome::Inconsistent: ++cell.inconsistent; break;
        case Outcome::TooLarge: ++cell.too_large; break;
      }
    }
  };
  const auto n = std::max<std::size_t>(1, std::min(threads, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (auto& cell : cells) {
    if (!cell.violations.empty() || cell.disagree > 0) cell.mark = CellMark::Fails;
    else if (cell.inconsistent > 0) cell.mark = CellMark::Inconsistent;
    else if (cell.too_large > 0) cell.mark = CellMark::Undecided;
    else cell.mark = CellMark::Recognizes;
  }
  return cells;
}

std::string format_table(const std::vector<TableCell>& cells, const std::vector<ModelClass>& classes) {
  std::ostringstream out;
  std::size_t width = 5;
  for (const auto& c : cells) width = std::max(width, c.entry.size());
  for (std::size_t i = 0; i < cells.size(); i += classes.size()) {
    if (i == 0) {
      out << std::string(width, ' ');
      for (std::size_t j = 0; j < classes.size(); ++j) out << "  [" << j << "]";
      out << "\n";
    }
    out << cells[i].entry << std::string(width - cells[i].entry.size(), ' ');
    for (std::size_t j = 0; j < classes.size(); ++j) {
      const auto label = "[" + std::to_string(j) + "]";
      out << "  " << symbol(cells[i + j].mark) << std::string(label.size() - 1, ' ');
    }
    out << "\n";
  }
  for (std::size_t j = 0; j < classes.size(); ++j) out << "[" << j << "] " << classes[j].to_string() << "\n";
  out << "✓ recognizes on the corpus  ✗ does not  ! inconsistent on some graph  ? too large\n";
  return out.str();
}

std::vector<LabeledGraph> connected_corpus(std::size_t max_nodes, std::size_t min_nodes,
                                           const std::string& cache_dir) {
  std::string dir = cache_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("AUTOMATA_CACHE_DIR")) dir = env;
  }
  if (dir.empty()) return enumerate_connected_graphs(max_nodes, min_nodes);

  namespace fs = std::filesystem;
  const auto path = fs::path(dir) / ("connected-" + std::to_string(min_nodes) + "-" +
                                     std::to_string(max_nodes) + ".json");
  if (fs::exists(path)) {
    try {
      const auto doc = nlohmann::json::parse(read_text_file(path.string()));
      std::vector<LabeledGraph> out;
      for (const auto& g : doc) out.push_back(parse_graph_json(g.dump()));
      return out;
    } catch (const std::exception&) {
      // unreadable cache: rebuild it below
    }
  }
  auto graphs = enumerate_connected_graphs(max_nodes, min_nodes);
  std::error_code ec;
  fs::create_directories(dir, ec);
  auto doc = nlohmann::json::array();
  for (const auto& g : graphs) doc.push_back(nlohmann::json::parse(serialize_graph_json(g)));
  try {
    write_text_file(path.string(), doc.dump());
  } catch (const Error&) {
    // the cache is an optimization only
  }
  return graphs;
}

std::vector<LabeledGraph> row_corpus(const ZooEntry& entry, std::size_t max_nodes,
                                     std::size_t labeled_max_nodes, const std::string& cache_dir) {
  const auto& alphabet = entry.machine.alphabet();
  std::vector<LabeledGraph> out;
  if (alphabet.size() == 1) {
    for (const auto& g : connected_corpus(max_nodes, 2, cache_dir)) {
      out.push_back(relabel(g, std::vector<std::string>(g.node_count(), alphabet[0]), alphabet));
    }
    return out;
  }
  for (const auto& g : connected_corpus(std::min(max_nodes, labeled_max_nodes), 2, cache_dir)) {
    for (auto& h : all_labelings(g, alphabet)) out.push_back(std::move(h));
  }
  return out;
}

}  // namespace distaut
