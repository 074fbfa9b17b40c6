#include "gqft/irreps.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gqft/errors.hpp"

namespace gqft {

namespace {

using Partition = std::vector<int>;

// Partitions of n in reverse lexicographic order: (n), (n-1,1), ..., (1^n).
void partitions_rec(int remaining, int max_part, Partition& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  Partition cur;
  partitions_rec(n, n, cur, out);
  return out;
}

std::string partition_label(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s + ")";
}

// Row index of the box added to mu to obtain lambda, or -1.
int added_row(const Partition& mu, const Partition& lambda) {
  int row = -1;
  for (std::size_t r = 0; r < lambda.size(); ++r) {
    int m = r < mu.size() ? mu[r] : 0;
    int diff = lambda[r] - m;
    if (diff < 0 || diff > 1) return -1;
    if (diff == 1) {
      if (row != -1) return -1;
      row = static_cast<int>(r);
    }
  }
  if (mu.size() > lambda.size()) return -1;
  return row;
}

std::vector<IrrepLevel> cyclic_levels(const Tower& tower, const std::vector<int>& chain) {
  const int n = chain.back();
  std::vector<IrrepLevel> levels;
  const auto& gens = tower.generators();
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const int ni = chain[i];
    IrrepLevel level;
    for (int j = 0; j < ni; ++j) {
      AdaptedRep rep;
      rep.level = static_cast<int>(i);
      rep.label = std::to_string(j);
      rep.dim = 1;
      if (i > 0) rep.parents = {j % chain[i - 1]};
      rep.generator_images.resize(gens.size());
      for (std::size_t k = 0; k < gens.size(); ++k) {
        if (gens[k].level > static_cast<int>(i)) continue;
        long long x = gens[k].element[0];
        long long y = x / (n / ni);
        rep.generator_images[k] = Matrix::Constant(1, 1, root_of_unity(ni, j * y));
      }
      level.push_back(std::move(rep));
    }
    levels.push_back(std::move(level));
  }
  return levels;
}

}  // namespace

std::vector<IrrepLevel> YoungOrthogonalBuilder::build(const Tower& tower) const {
  const int n = tower.group().spec().n;
  const auto& gens = tower.generators();
  std::vector<IrrepLevel> levels;
  // Content vectors of each node's rows (tableau entry k has content c[k]).
  std::vector<std::vector<std::vector<std::vector<int>>>> contents;
  std::vector<std::vector<Partition>> shapes;

  for (int l = 0; l + 1 <= n; ++l) {
    auto parts = partitions(l + 1);
    IrrepLevel level;
    std::vector<std::vector<std::vector<int>>> level_contents;
    for (const auto& lambda : parts) {
      AdaptedRep rep;
      rep.level = l;
      rep.label = partition_label(lambda);
      std::vector<std::vector<int>> rows;
      if (l == 0) {
        rows.push_back({0});
      } else {
        const auto& prev = shapes.back();
        for (std::size_t s = 0; s < prev.size(); ++s) {
          int row = added_row(prev[s], lambda);
          if (row < 0) continue;
          rep.parents.push_back(static_cast<int>(s));
          int content = (lambda[static_cast<std::size_t>(row)] - 1) - row;
          for (auto c : contents.back()[s]) {
            c.push_back(content);
            rows.push_back(std::move(c));
          }
        }
      }
      rep.dim = static_cast<int>(rows.size());
      std::map<std::vector<int>, int> row_of;
      for (std::size_t r = 0; r < rows.size(); ++r) row_of.emplace(rows[r], static_cast<int>(r));

      rep.generator_images.resize(gens.size());
      for (std::size_t k = 0; k < gens.size(); ++k) {
        if (gens[k].level > l) continue;
        // Generator k is the transposition of tableau entries k+1, k+2.
        Matrix m = Matrix::Zero(rep.dim, rep.dim);
        for (std::size_t r = 0; r < rows.size(); ++r) {
          const auto& c = rows[r];
          const double axial = c[k + 1] - c[k];
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r)) = 1.0 / axial;
          if (std::abs(axial) > 1.0) {
            auto swapped = c;
            std::swap(swapped[k], swapped[k + 1]);
            int r2 = row_of.at(swapped);
            m(r2, static_cast<Eigen::Index>(r)) = std::sqrt(1.0 - 1.0 / (axial * axial));
          }
        }
        rep.generator_images[k] = std::move(m);
      }
      level.push_back(std::move(rep));
      level_contents.push_back(std::move(rows));
    }
    levels.push_back(std::move(level));
    contents.push_back(std::move(level_contents));
    shapes.push_back(std::move(parts));
  }
  return levels;
}

std::vector<IrrepLevel> CyclicCharacterBuilder::build(const Tower& tower) const {
  auto chain = tower.group().cyclic_chain();
  if (chain.empty()) throw CapabilityError("group has no cyclic chain");
  return cyclic_levels(tower, chain);
}

std::vector<IrrepLevel> MetacyclicBuilder::build(const Tower& tower) const {
  const Group& G = tower.group();
  const auto& spec = G.spec();
  const int p = spec.p, Q = spec.q;
  auto chain = G.cyclic_chain();
  auto levels = cyclic_levels(tower, chain);
  const int base = static_cast<int>(chain.size()) - 1;
  const int top = tower.levels();
  const auto& gens = tower.generators();
  const int gamma_index = static_cast<int>(gens.size()) - 1;
  const Element gamma = gens.back().element;

  // sigma^{gamma^i}(a^x) = sigma(gamma^-i a^x gamma^i) = chi_j(a^{x y_i}).
  std::vector<int> y(static_cast<std::size_t>(Q));
  Element gi = G.identity();
  for (int i = 0; i < Q; ++i) {
    Element c = G.mul(G.mul(G.inverse(gi), Element{1 % p, 0}), gi);
    y[static_cast<std::size_t>(i)] = c[0];
    gi = G.mul(gi, gamma);
  }

  IrrepLevel level;
  std::vector<bool> seen(static_cast<std::size_t>(p), false);
  for (int j0 = 0; j0 < p; ++j0) {
    if (seen[static_cast<std::size_t>(j0)]) continue;
    std::vector<int> orbit;
    for (int i = 0; i < Q; ++i) {
      int ji = static_cast<int>((static_cast<long long>(j0) * y[static_cast<std::size_t>(i)]) % p);
      if (i > 0 && ji == j0) break;
      orbit.push_back(ji);
      seen[static_cast<std::size_t>(ji)] = true;
    }
    const int orbit_size = static_cast<int>(orbit.size());
    const int stabilizer = Q / orbit_size;
    for (int b = 0; b < stabilizer; ++b) {
      AdaptedRep rep;
      rep.level = top;
      rep.label = "[" + std::to_string(j0) + "|" + std::to_string(b) + "]";
      rep.dim = orbit_size;
      rep.parents = orbit;  // base-level nodes are indexed by character label
      rep.generator_images.resize(gens.size());
      for (std::size_t k = 0; k + 1 < gens.size(); ++k) {
        Matrix m = Matrix::Zero(orbit_size, orbit_size);
        for (int i = 0; i < orbit_size; ++i)
          m(i, i) = levels[static_cast<std::size_t>(base)][static_cast<std::size_t>(orbit[static_cast<std::size_t>(i)])]
                        .generator_images[k](0, 0);
        rep.generator_images[k] = std::move(m);
      }
      Matrix shift = Matrix::Zero(orbit_size, orbit_size);
      const cplx phase = root_of_unity(Q, b);
      for (int i = 0; i < orbit_size; ++i) shift((i + 1) % orbit_size, i) = phase;
      rep.generator_images[static_cast<std::size_t>(gamma_index)] = std::move(shift);
      level.push_back(std::move(rep));
    }
  }
  levels.push_back(std::move(level));
  return levels;
}

std::unique_ptr<RepresentationBuilder> representation_builder_for(const Group& group) {
  switch (group.spec().family) {
    case Family::cyclic:
      return std::make_unique<CyclicCharacterBuilder>();
    case Family::symmetric:
      return std::make_unique<YoungOrthogonalBuilder>();
    case Family::metacyclic:
      return std::make_unique<MetacyclicBuilder>();
  }
  throw CapabilityError("no representation builder for family");
}

RepresentationTable::RepresentationTable(std::shared_ptr<const Tower> tower)
    : RepresentationTable(tower, *representation_builder_for(tower->group())) {}

RepresentationTable::RepresentationTable(std::shared_ptr<const Tower> tower, const RepresentationBuilder& builder)
    : tower_(std::move(tower)), levels_(builder.build(*tower_)) {
  check_construction();
}

void RepresentationTable::check_construction() const {
  constexpr double tol = 1e-12;
  if (static_cast<int>(levels_.size()) != tower_->levels() + 1)
    throw ConstructionError("representation builder produced the wrong number of levels");
  for (int l = 0; l <= tower_->levels(); ++l) {
    const auto& level = irreps(l);
    std::size_t sum = 0;
    for (const auto& rep : level) {
      sum += static_cast<std::size_t>(rep.dim) * static_cast<std::size_t>(rep.dim);
      if (l > 0) {
        int parent_dims = 0;
        for (int s : rep.parents) parent_dims += this->rep(l - 1, s).dim;
        if (parent_dims != rep.dim)
          throw ConstructionError("branching dims do not add up for " + rep.label);
      }
      for (int k : tower_->generators_in(l)) {
        const auto& m = rep.generator_images.at(static_cast<std::size_t>(k));
        if (m.rows() != rep.dim || m.cols() != rep.dim)
          throw ConstructionError("generator image has wrong size for " + rep.label);
        if (!is_unitary(m, tol)) throw ConstructionError("generator image not unitary for " + rep.label);
      }
    }
    if (sum != tower_->subgroup_order(l))
      throw ConstructionError("sum of squared dims != |G_" + std::to_string(l) + "|");
  }
}

Matrix RepresentationTable::generator_image(int level, int node, int generator, bool inverse) const {
  const auto& m = rep(level, node).generator_images.at(static_cast<std::size_t>(generator));
  if (m.size() == 0) throw DomainError("generator outside G_" + std::to_string(level));
  return inverse ? Matrix(m.adjoint()) : m;
}

Matrix RepresentationTable::evaluate_word(int level, int node, const Word& w) const {
  const int d = rep(level, node).dim;
  Matrix out = Matrix::Identity(d, d);
  for (const auto& l : w) out = out * generator_image(level, node, l.generator, l.inverse);
  return out;
}

Matrix RepresentationTable::evaluate(int level, int node, const Element& g) const {
  if (tower_->group().level_of(g) > level)
    throw DomainError(tower_->group().format(g) + " is not in G_" + std::to_string(level));
  const auto factors = tower_->coset_factorize(g);
  const int d = rep(level, node).dim;
  Matrix out = Matrix::Identity(d, d);
  const int m = tower_->levels();
  for (int i = level; i >= 1; --i) {
    const auto& alpha = factors[static_cast<std::size_t>(m - i)];
    out = out * evaluate_word(level, node, tower_->transversal_word(alpha, i));
  }
  return out;
}

}  // namespace gqft
