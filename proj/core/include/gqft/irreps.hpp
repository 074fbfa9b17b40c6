#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gqft/linalg.hpp"
#include "gqft/tower.hpp"

namespace gqft {

// An irreducible unitary representation of G_level in a basis adapted to the
// tower. Its rows are grouped into contiguous blocks, one per entry of
// `parents`, and restricting to G_{level-1} gives exactly the parent
// representation on each block.
struct AdaptedRep {
  int level = 0;
  std::string label;
  int dim = 1;
  // Ordered in-edges: node indices at level-1. A repeated index is a
  // multiplicity > 1 edge. Empty at level 0.
  std::vector<int> parents;
  // Indexed by generator; empty (0x0) for generators outside G_level.
  std::vector<Matrix> generator_images;
};

using IrrepLevel = std::vector<AdaptedRep>;

// Builds the complete set of adapted irreducibles for every tower level.
// Together with Group this is the extension point for new families.
class RepresentationBuilder {
 public:
  virtual ~RepresentationBuilder() = default;
  virtual std::vector<IrrepLevel> build(const Tower& tower) const = 0;
};

// Young orthogonal form on standard tableaux, for the S_n tower.
class YoungOrthogonalBuilder final : public RepresentationBuilder {
 public:
  std::vector<IrrepLevel> build(const Tower& tower) const override;
};

// Characters of a cyclic chain; also used for the normal part of metacyclic
// groups.
class CyclicCharacterBuilder final : public RepresentationBuilder {
 public:
  std::vector<IrrepLevel> build(const Tower& tower) const override;
};

// Cyclic chain for Z_p followed by representations of Z_q ⋉ Z_p induced from
// orbit/stabilizer data, in a basis where the transverse generator acts as a
// phase times a cyclic shift of the orbit blocks.
class MetacyclicBuilder final : public RepresentationBuilder {
 public:
  std::vector<IrrepLevel> build(const Tower& tower) const override;
};

std::unique_ptr<RepresentationBuilder> representation_builder_for(const Group& group);

// Adapted irreducibles for all tower levels plus evaluation at arbitrary
// elements. Immutable; evaluate is reentrant.
class RepresentationTable {
 public:
  explicit RepresentationTable(std::shared_ptr<const Tower> tower);
  RepresentationTable(std::shared_ptr<const Tower> tower, const RepresentationBuilder& builder);

  const Tower& tower() const { return *tower_; }
  std::shared_ptr<const Tower> tower_ptr() const { return tower_; }
  int levels() const { return tower_->levels(); }
  const IrrepLevel& irreps(int level) const { return levels_.at(static_cast<std::size_t>(level)); }
  const AdaptedRep& rep(int level, int node) const { return irreps(level).at(static_cast<std::size_t>(node)); }

  Matrix generator_image(int level, int node, int generator, bool inverse = false) const;
  Matrix evaluate_word(int level, int node, const Word& w) const;
  // rho(g) for g in G_level; DomainError otherwise.
  Matrix evaluate(int level, int node, const Element& g) const;

 private:
  void check_construction() const;

  std::shared_ptr<const Tower> tower_;
  std::vector<IrrepLevel> levels_;
};

}  // namespace gqft
