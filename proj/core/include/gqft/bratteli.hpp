#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gqft/irreps.hpp"

namespace gqft {

// Out-edge of a node: the child at the next level and which of the child's
// in-slots (entries of AdaptedRep::parents) this edge fills.
struct BratteliEdge {
  int child = 0;
  int slot = 0;
};

// Branching of a node onto the level below: distinct parent, multiplicity,
// and the row offsets of each copy's block.
struct BranchEntry {
  int parent = 0;
  int multiplicity = 0;
  std::vector<int> offsets;
};

// A path is the sequence of 1-based out-edge indices taken from the root.
using GTPath = std::vector<int>;

struct PathSlot {
  int node = 0;
  int row = 0;
};

// Leveled multigraph of irreducibles. Out-edges of a node are ordered by
// child node order then slot, and edge index e (1-based) names the e-th of
// them. Rows of a node are laid out block by block in in-slot order, each
// block holding the parent's rows in the parent's own order.
class BratteliDiagram {
 public:
  explicit BratteliDiagram(const RepresentationTable& table);

  int levels() const { return static_cast<int>(labels_.size()) - 1; }
  int node_count(int level) const { return static_cast<int>(labels_.at(static_cast<std::size_t>(level)).size()); }
  const std::string& label(int level, int node) const;
  int dim(int level, int node) const;
  const std::vector<int>& parents(int level, int node) const;
  const std::vector<BratteliEdge>& out_edges(int level, int node) const;
  int out_degree(int level, int node) const { return static_cast<int>(out_edges(level, node).size()); }
  int max_out_degree(int level) const;
  int slot_offset(int level, int node, int slot) const;
  std::size_t path_count(int level, int node) const;
  std::vector<BranchEntry> branching(int level, int node) const;

  // Resolve a path of any length to (terminal node, row). DomainError when
  // an edge index does not exist.
  PathSlot path_to_index(std::span<const int> path) const;
  GTPath index_to_path(int level, int node, int row) const;
  // All paths to a node, in row order.
  std::vector<GTPath> paths_to(int level, int node) const;

  // Paths from node `from` at level `lo` to node `to` at level `hi`, each a
  // list of edge indices.
  std::vector<GTPath> paths_between(int lo, int from, int hi, int to) const;

  nlohmann::json to_json() const;
  std::string to_dot() const;

 private:
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::vector<int>> dims_;
  std::vector<std::vector<std::vector<int>>> parents_;
  std::vector<std::vector<std::vector<int>>> offsets_;
  std::vector<std::vector<std::vector<BratteliEdge>>> out_;
  std::vector<std::vector<std::size_t>> path_counts_;
};

}  // namespace gqft
