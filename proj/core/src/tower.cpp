#include "gqft/tower.hpp"

#include <algorithm>
#include <deque>

#include "gqft/errors.hpp"

namespace gqft {

Tower::Tower(std::shared_ptr<const Group> group) : group_(std::move(group)) {
  const Group& G = *group_;
  levels_ = G.num_levels();
  elements_ = G.elements();
  if (elements_.size() != G.order()) throw ConstructionError("element enumeration disagrees with group order");
  for (std::size_t i = 0; i < elements_.size(); ++i) element_index_.emplace(elements_[i], i);
  if (element_index_.size() != elements_.size()) throw ConstructionError("duplicate elements in enumeration");

  orders_.assign(static_cast<std::size_t>(levels_) + 1, 0);
  for (const auto& g : elements_) {
    for (int i = G.level_of(g); i <= levels_; ++i) ++orders_[static_cast<std::size_t>(i)];
  }
  if (orders_[0] != 1) throw ConstructionError("G_0 must be trivial");

  for (int i = 1; i <= levels_; ++i) {
    auto T = G.transversal(i);
    if (T.empty() || T.front() != G.identity()) throw ConstructionError("transversal must start with the identity");
    if (orders_[static_cast<std::size_t>(i)] != orders_[static_cast<std::size_t>(i) - 1] * T.size())
      throw ConstructionError("|G_i| != |G_{i-1}| * |T_i| at level " + std::to_string(i));
    // Distinct cosets: alpha^-1 beta must leave G_{i-1} for alpha != beta.
    for (std::size_t a = 0; a < T.size(); ++a) {
      if (G.level_of(T[a]) > i) throw ConstructionError("transversal element outside G_i");
      for (std::size_t b = a + 1; b < T.size(); ++b)
        if (G.level_of(G.mul(G.inverse(T[a]), T[b])) <= i - 1)
          throw ConstructionError("transversal elements share a coset at level " + std::to_string(i));
    }
    transversals_.push_back(std::move(T));
  }

  auto gens = G.generators();
  auto names = G.generator_names();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    GeneratorInfo info;
    info.element = gens[k];
    info.name = k < names.size() ? names[k] : G.format(gens[k]);
    info.level = G.level_of(gens[k]);
    info.involution = G.mul(gens[k], gens[k]) == G.identity();
    generators_.push_back(std::move(info));
  }
  for (auto& info : generators_) {
    info.centralized_level = 0;
    for (int j = levels_; j >= 0; --j) {
      bool central = true;
      for (const auto& other : generators_) {
        if (other.level > j) continue;
        if (G.mul(info.element, other.element) != G.mul(other.element, info.element)) {
          central = false;
          break;
        }
      }
      if (central) {
        info.centralized_level = j;
        break;
      }
    }
  }

  words_.resize(static_cast<std::size_t>(levels_));
  for (int i = 1; i <= levels_; ++i) build_words(i);
}

const std::vector<Element>& Tower::transversal(int level) const {
  if (level < 1 || level > levels_) throw DomainError("level " + std::to_string(level) + " out of range");
  return transversals_[static_cast<std::size_t>(level) - 1];
}

std::vector<int> Tower::generators_in(int level) const {
  std::vector<int> out;
  for (std::size_t k = 0; k < generators_.size(); ++k)
    if (generators_[k].level <= level) out.push_back(static_cast<int>(k));
  return out;
}

// Breadth-first search over the Cayley graph of G_level. Letters are tried
// in generator order (inverse after forward), so the first word found for
// each element is the lexicographically least among the shortest.
void Tower::build_words(int level) {
  const Group& G = *group_;
  std::vector<Letter> alphabet;
  for (int k : generators_in(level)) {
    alphabet.push_back({k, false});
    if (!generators_[static_cast<std::size_t>(k)].involution) alphabet.push_back({k, true});
  }
  std::vector<Element> letter_value;
  for (const auto& l : alphabet) {
    const auto& g = generators_[static_cast<std::size_t>(l.generator)].element;
    letter_value.push_back(l.inverse ? G.inverse(g) : g);
  }

  std::map<Element, Word> found;
  std::deque<Element> queue;
  found.emplace(G.identity(), Word{});
  queue.push_back(G.identity());
  while (!queue.empty()) {
    Element x = std::move(queue.front());
    queue.pop_front();
    const Word base = found.at(x);
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
      Element y = G.mul(x, letter_value[a]);
      if (found.count(y)) continue;
      Word w = base;
      w.push_back(alphabet[a]);
      found.emplace(y, std::move(w));
      queue.push_back(std::move(y));
    }
  }
  if (found.size() != orders_[static_cast<std::size_t>(level)])
    throw ConstructionError("S ∩ G_" + std::to_string(level) + " does not generate G_" + std::to_string(level));

  auto& out = words_[static_cast<std::size_t>(level) - 1];
  for (const auto& alpha : transversal(level)) out.push_back(found.at(alpha));
}

std::vector<Element> Tower::coset_factorize(const Element& g) const {
  const Group& G = *group_;
  G.check(g);
  std::vector<Element> out;
  Element rest = g;
  for (int i = levels_; i >= 1; --i) {
    bool placed = false;
    for (const auto& alpha : transversal(i)) {
      Element h = G.mul(G.inverse(alpha), rest);
      if (G.level_of(h) <= i - 1) {
        out.push_back(alpha);
        rest = std::move(h);
        placed = true;
        break;
      }
    }
    if (!placed) throw DomainError("element " + G.format(g) + " has no coset at level " + std::to_string(i));
  }
  return out;
}

std::vector<int> Tower::coset_positions(const Element& g) const {
  auto factors = coset_factorize(g);
  std::vector<int> pos(static_cast<std::size_t>(levels_));
  for (int i = 1; i <= levels_; ++i) {
    const auto& T = transversal(i);
    const auto& alpha = factors[static_cast<std::size_t>(levels_ - i)];
    pos[static_cast<std::size_t>(i) - 1] = static_cast<int>(std::find(T.begin(), T.end(), alpha) - T.begin());
  }
  return pos;
}

Element Tower::from_positions(std::span<const int> positions) const {
  if (static_cast<int>(positions.size()) != levels_) throw DomainError("wrong number of coset positions");
  Element g = group_->identity();
  for (int i = levels_; i >= 1; --i) {
    int p = positions[static_cast<std::size_t>(i) - 1];
    if (p < 0 || p >= index(i)) throw DomainError("coset position out of range");
    g = group_->mul(g, transversal(i)[static_cast<std::size_t>(p)]);
  }
  return g;
}

const Word& Tower::transversal_word(const Element& alpha, int level) const {
  const auto& T = transversal(level);
  auto it = std::find(T.begin(), T.end(), alpha);
  if (it == T.end()) throw DomainError(group_->format(alpha) + " is not in T_" + std::to_string(level));
  return transversal_word_at(level, static_cast<int>(it - T.begin()));
}

const Word& Tower::transversal_word_at(int level, int position) const {
  const auto& ws = words_.at(static_cast<std::size_t>(level) - 1);
  return ws.at(static_cast<std::size_t>(position));
}

Element Tower::evaluate(const Word& w) const {
  const Group& G = *group_;
  Element g = G.identity();
  for (const auto& l : w) {
    const auto& x = generators_.at(static_cast<std::size_t>(l.generator)).element;
    g = G.mul(g, l.inverse ? G.inverse(x) : x);
  }
  return g;
}

std::string Tower::format(const Word& w) const {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += generators_.at(static_cast<std::size_t>(l.generator)).name;
    if (l.inverse) out += "^-1";
  }
  return out;
}

TowerStats Tower::stats() const {
  TowerStats s;
  for (int i = 1; i <= levels_; ++i) {
    s.max_index = std::max(s.max_index, index(i));
    int d = 0;
    for (const auto& w : words_[static_cast<std::size_t>(i) - 1]) d = std::max(d, static_cast<int>(w.size()));
    s.level_diameters.push_back(d);
    s.adapted_diameter += d;
  }
  return s;
}

std::size_t Tower::element_index(const Element& g) const {
  auto it = element_index_.find(g);
  if (it == element_index_.end()) throw DomainError("element not in group");
  return it->second;
}

}  // namespace gqft
