#include "gqft/bratteli.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gqft/errors.hpp"

namespace gqft {

BratteliDiagram::BratteliDiagram(const RepresentationTable& table) {
  const int m = table.levels();
  labels_.resize(static_cast<std::size_t>(m) + 1);
  dims_.resize(labels_.size());
  parents_.resize(labels_.size());
  offsets_.resize(labels_.size());
  out_.resize(labels_.size());
  path_counts_.resize(labels_.size());

  for (int l = 0; l <= m; ++l) {
    const auto& level = table.irreps(l);
    const auto L = static_cast<std::size_t>(l);
    out_[L].resize(level.size());
    for (std::size_t v = 0; v < level.size(); ++v) {
      const auto& rep = level[v];
      labels_[L].push_back(rep.label);
      dims_[L].push_back(rep.dim);
      parents_[L].push_back(rep.parents);
      std::vector<int> offs;
      int offset = 0;
      std::size_t count = l == 0 ? 1 : 0;
      for (std::size_t s = 0; s < rep.parents.size(); ++s) {
        const auto parent = static_cast<std::size_t>(rep.parents[s]);
        if (l == 0 || parent >= labels_[L - 1].size()) throw ConstructionError("parent index out of range");
        offs.push_back(offset);
        offset += dims_[L - 1][parent];
        count += path_counts_[L - 1][parent];
        out_[L - 1][parent].push_back({static_cast<int>(v), static_cast<int>(s)});
      }
      if (l > 0 && offset != rep.dim)
        throw ConstructionError("sum over edges of parent dims != dim for " + rep.label);
      if (count != static_cast<std::size_t>(rep.dim))
        throw ConstructionError("path count != dim for " + rep.label);
      offsets_[L].push_back(std::move(offs));
      path_counts_[L].push_back(count);
    }
  }
  if (labels_[0].size() != 1) throw ConstructionError("level 0 must have a single root");
}

const std::string& BratteliDiagram::label(int level, int node) const {
  return labels_.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(node));
}

int BratteliDiagram::dim(int level, int node) const {
  return dims_.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(node));
}

const std::vector<int>& BratteliDiagram::parents(int level, int node) const {
  return parents_.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(node));
}

const std::vector<BratteliEdge>& BratteliDiagram::out_edges(int level, int node) const {
  return out_.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(node));
}

int BratteliDiagram::max_out_degree(int level) const {
  int d = 0;
  for (int v = 0; v < node_count(level); ++v) d = std::max(d, out_degree(level, v));
  return d;
}

int BratteliDiagram::slot_offset(int level, int node, int slot) const {
  return offsets_.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(node)).at(static_cast<std::size_t>(slot));
}

std::size_t BratteliDiagram::path_count(int level, int node) const {
  return path_counts_.at(static_cast<std::size_t>(level)).at(static_cast<std::size_t>(node));
}

std::vector<BranchEntry> BratteliDiagram::branching(int level, int node) const {
  std::vector<BranchEntry> out;
  if (level == 0) return out;
  const auto& ps = parents(level, node);
  for (std::size_t s = 0; s < ps.size(); ++s) {
    auto it = std::find_if(out.begin(), out.end(), [&](const BranchEntry& b) { return b.parent == ps[s]; });
    if (it == out.end()) {
      out.push_back({ps[s], 0, {}});
      it = std::prev(out.end());
    }
    ++it->multiplicity;
    it->offsets.push_back(slot_offset(level, node, static_cast<int>(s)));
  }
  return out;
}

PathSlot BratteliDiagram::path_to_index(std::span<const int> path) const {
  if (static_cast<int>(path.size()) > levels()) throw DomainError("path longer than the diagram");
  PathSlot at{0, 0};
  for (std::size_t l = 0; l < path.size(); ++l) {
    const auto& edges = out_edges(static_cast<int>(l), at.node);
    const int e = path[l];
    if (e < 1 || e > static_cast<int>(edges.size()))
      throw DomainError("edge index " + std::to_string(e) + " invalid at level " + std::to_string(l));
    const auto& edge = edges[static_cast<std::size_t>(e) - 1];
    at.row += slot_offset(static_cast<int>(l) + 1, edge.child, edge.slot);
    at.node = edge.child;
  }
  return at;
}

GTPath BratteliDiagram::index_to_path(int level, int node, int row) const {
  if (row < 0 || row >= dim(level, node)) throw DomainError("row out of range");
  GTPath path(static_cast<std::size_t>(level));
  for (int l = level; l >= 1; --l) {
    const auto& ps = parents(l, node);
    int slot = static_cast<int>(ps.size()) - 1;
    while (slot > 0 && slot_offset(l, node, slot) > row) --slot;
    row -= slot_offset(l, node, slot);
    const int parent = ps[static_cast<std::size_t>(slot)];
    const auto& edges = out_edges(l - 1, parent);
    auto it = std::find_if(edges.begin(), edges.end(),
                           [&](const BratteliEdge& e) { return e.child == node && e.slot == slot; });
    path[static_cast<std::size_t>(l) - 1] = static_cast<int>(it - edges.begin()) + 1;
    node = parent;
  }
  return path;
}

std::vector<GTPath> BratteliDiagram::paths_to(int level, int node) const {
  std::vector<GTPath> out;
  for (int r = 0; r < dim(level, node); ++r) out.push_back(index_to_path(level, node, r));
  return out;
}

std::vector<GTPath> BratteliDiagram::paths_between(int lo, int from, int hi, int to) const {
  std::vector<GTPath> out;
  GTPath cur;
  auto rec = [&](auto&& self, int level, int node) -> void {
    if (level == hi) {
      if (node == to) out.push_back(cur);
      return;
    }
    const auto& edges = out_edges(level, node);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      cur.push_back(static_cast<int>(e) + 1);
      self(self, level + 1, edges[e].child);
      cur.pop_back();
    }
  };
  rec(rec, lo, from);
  return out;
}

nlohmann::json BratteliDiagram::to_json() const {
  nlohmann::json levels = nlohmann::json::array();
  for (int l = 0; l <= this->levels(); ++l) {
    nlohmann::json nodes = nlohmann::json::array();
    for (int v = 0; v < node_count(l); ++v) {
      nlohmann::json edges = nlohmann::json::array();
      const auto& out = out_edges(l, v);
      for (std::size_t e = 0; e < out.size(); ++e)
        edges.push_back({{"edge", e + 1}, {"child", out[e].child}, {"slot", out[e].slot}});
      nodes.push_back({{"index", v},
                       {"label", label(l, v)},
                       {"dim", dim(l, v)},
                       {"paths", path_count(l, v)},
                       {"parents", parents(l, v)},
                       {"out_edges", edges}});
    }
    levels.push_back({{"level", l}, {"nodes", nodes}});
  }
  return {{"levels", levels}};
}

std::string BratteliDiagram::to_dot() const {
  std::ostringstream out;
  out << "digraph bratteli {\n  rankdir=LR;\n  node [shape=circle, fontsize=10];\n";
  for (int l = 0; l <= levels(); ++l) {
    out << "  { rank=same;";
    for (int v = 0; v < node_count(l); ++v) out << " n" << l << '_' << v << ';';
    out << " }\n";
    for (int v = 0; v < node_count(l); ++v)
      out << "  n" << l << '_' << v << " [label=\"" << label(l, v) << "\\nd=" << dim(l, v) << "\"];\n";
  }
  for (int l = 0; l < levels(); ++l)
    for (int v = 0; v < node_count(l); ++v) {
      const auto& edges = out_edges(l, v);
      for (std::size_t e = 0; e < edges.size(); ++e)
        out << "  n" << l << '_' << v << " -> n" << l + 1 << '_' << edges[e].child << " [label=\"" << e + 1
            << "\"];\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace gqft
