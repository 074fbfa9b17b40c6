#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gqft/group.hpp"

namespace gqft {

// One letter of a generator word: generator index into the strong
// generating set, optionally inverted.
struct Letter {
  int generator = 0;
  bool inverse = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

struct GeneratorInfo {
  Element element;
  std::string name;
  int level = 0;              // least i with the generator in G_i
  int centralized_level = 0;  // greatest j with the generator in Z(G_j)
  bool involution = false;
};

struct TowerStats {
  int max_index = 1;  // I = max_i [G_i : G_{i-1}]
  int adapted_diameter = 0;  // D = sum_i D_i
  std::vector<int> level_diameters;  // D_i, index 0 is level 1
};

// Subgroup tower with transversals, annotated strong generating set and
// breadth-first transversal words. Immutable after construction.
class Tower {
 public:
  explicit Tower(std::shared_ptr<const Group> group);

  const Group& group() const { return *group_; }
  std::shared_ptr<const Group> group_ptr() const { return group_; }
  int levels() const { return levels_; }
  std::size_t subgroup_order(int level) const { return orders_.at(static_cast<std::size_t>(level)); }
  std::size_t order() const { return orders_.back(); }

  // Transversal T_level (level in 1..m), identity first.
  const std::vector<Element>& transversal(int level) const;
  int index(int level) const { return static_cast<int>(transversal(level).size()); }

  const std::vector<GeneratorInfo>& generators() const { return generators_; }
  // Generator indices lying in G_level.
  std::vector<int> generators_in(int level) const;

  // (alpha_m, ..., alpha_1) with alpha_i in T_i and alpha_m ... alpha_1 = g.
  std::vector<Element> coset_factorize(const Element& g) const;
  // Position of alpha_i within T_i for each level, entry 0 for level 1.
  std::vector<int> coset_positions(const Element& g) const;
  Element from_positions(std::span<const int> positions) const;

  // Shortest (then lexicographically least) word over S ∩ G_level for a
  // transversal element. Throws DomainError when alpha is not in T_level.
  const Word& transversal_word(const Element& alpha, int level) const;
  const Word& transversal_word_at(int level, int position) const;
  Element evaluate(const Word& w) const;
  std::string format(const Word& w) const;

  TowerStats stats() const;
  int adapted_diameter() const { return stats().adapted_diameter; }

  // Canonical element list (family order) and its inverse map.
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t element_index(const Element& g) const;

 private:
  void build_words(int level);

  std::shared_ptr<const Group> group_;
  int levels_ = 0;
  std::vector<std::size_t> orders_;
  std::vector<std::vector<Element>> transversals_;  // index 0 is level 1
  std::vector<GeneratorInfo> generators_;
  std::vector<std::vector<Word>> words_;  // words_[level-1][position]
  std::vector<Element> elements_;
  std::map<Element, std::size_t> element_index_;
};

}  // namespace gqft
