#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "distaut/engine.hpp"
#include "distaut/verdict.hpp"
#include "distaut/zoo.hpp"

namespace distaut {

enum class CellMark {
  Recognizes,    // class checks pass and every verdict matches the oracle
  Fails,         // a class violation or a verdict that disagrees with the oracle
  Inconsistent,  // some graph got Inconsistent
  Undecided,     // some graph was too large, nothing else went wrong
};

std::string to_string(CellMark m);  // "yes", "no", "inconsistent", "too-large"
std::string symbol(CellMark m);     // ✓ ✗ ! ?

struct TableCell {
  std::string entry;
  ModelClass model_class;
  CellMark mark = CellMark::Recognizes;
  std::vector<std::string> violations;  // class check failures
  std::size_t agree = 0, disagree = 0, inconsistent = 0, too_large = 0;
};

struct TableRow {
  ZooEntry entry;
  std::vector<LabeledGraph> corpus;
};

// Decides every (row, class, graph) triple on `threads` workers. Cells come
// back in row-major order.
std::vector<TableCell> recognition_table(const std::vector<TableRow>& rows,
                                         const std::vector<ModelClass>& classes,
                                         std::size_t threads = 1,
                                         const DecideOptions& options = {});

std::string format_table(const std::vector<TableCell>& cells, const std::vector<ModelClass>& classes);

// Connected unlabeled graphs with min..max nodes. With a cache directory
// (argument, else $AUTOMATA_CACHE_DIR), results are memoized there as JSON.
std::vector<LabeledGraph> connected_corpus(std::size_t max_nodes, std::size_t min_nodes = 2,
                                           const std::string& cache_dir = "");

// Default corpus for a row: connected graphs with up to max_nodes nodes.
// Entries over a single letter use it on every node; larger alphabets get
// every labeling of the graphs with up to labeled_max_nodes nodes.
std::vector<LabeledGraph> row_corpus(const ZooEntry& entry, std::size_t max_nodes,
                                     std::size_t labeled_max_nodes, const std::string& cache_dir = "");

}  // namespace distaut
