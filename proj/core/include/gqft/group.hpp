#pragma once

// Finite group arithmetic for the supported families.
//
// Composition convention: in a product g*h the right factor acts first.
// For permutations this means (g*h)(x) = g(h(x)).

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace gqft {

// Elements are small integer tuples whose meaning depends on the family:
//   cyclic      {x}        x in Z_n
//   symmetric   {g(0),...,g(n-1)}  0-based image array
//   metacyclic  {x, k}     the element a^x b^k of Z_q ⋉ Z_p
using Element = std::vector<int>;

enum class Family { cyclic, symmetric, metacyclic };

std::string_view to_string(Family f);

struct GroupSpec {
  Family family = Family::cyclic;
  int n = 1;  // cyclic order or symmetric degree
  // Metacyclic Z_q ⋉ Z_p with b a b^-1 = a^r.
  int p = 0;
  int q = 0;
  int r = 0;
  // Optional ascending chain of cyclic subgroup orders for the cyclic part
  // (Z_n, or Z_p of a metacyclic group). Empty selects the default chain.
  std::vector<int> chain;

  static GroupSpec cyclic(int n, std::vector<int> chain = {});
  static GroupSpec symmetric(int n);
  static GroupSpec metacyclic(int p, int q, int r);
  static GroupSpec dihedral(int n);

  // Short identifier such as "Z6", "S4", "D5" or "M5_4_2".
  std::string id() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

GroupSpec group_spec_from_json(const nlohmann::json& j);
nlohmann::json group_spec_to_json(const GroupSpec& spec);
GroupSpec load_group_spec(const std::string& path);

// Orders of the nontrivial subgroups in the default chain for Z_n, prime
// factors taken in descending order: Z_6 gets {3, 6} (1 < Z_3 < Z_6) and
// Z_8 gets {2, 4, 8}.
std::vector<int> default_cyclic_chain(int n);

// A finite group together with its subgroup tower G_0 = {1} < ... < G_m = G,
// ordered transversals and strong generating set. New families plug in by
// implementing this interface (plus a RepresentationBuilder, see irreps.hpp).
class Group {
 public:
  virtual ~Group() = default;

  virtual const GroupSpec& spec() const = 0;
  virtual std::size_t order() const = 0;
  virtual Element identity() const = 0;
  virtual Element mul(const Element& g, const Element& h) const = 0;
  virtual Element inverse(const Element& g) const = 0;
  // Throws EncodingError if g is not a valid encoding for this group.
  virtual void check(const Element& g) const = 0;
  virtual std::string format(const Element& g) const = 0;
  virtual Element parse(std::string_view text) const = 0;
  // All elements in the family's canonical order.
  virtual std::vector<Element> elements() const = 0;

  // Number m of nontrivial tower steps; levels run 0..m.
  virtual int num_levels() const = 0;
  // Least i with g in G_i.
  virtual int level_of(const Element& g) const = 0;
  // Ordered left-coset representatives of G_{level-1} in G_level; the
  // identity comes first. level in 1..m.
  virtual std::vector<Element> transversal(int level) const = 0;
  virtual std::vector<Element> generators() const = 0;
  virtual std::vector<std::string> generator_names() const = 0;

  // Orders n_0 = 1 < n_1 < ... < n_k of the bottom levels when they form a
  // chain of cyclic groups Z_{n_i} generated by the level generators. Empty
  // when the tower does not start with a cyclic chain.
  virtual std::vector<int> cyclic_chain() const { return {}; }

  std::string id() const { return spec().id(); }
};

std::unique_ptr<Group> make_group(const GroupSpec& spec);

}  // namespace gqft
