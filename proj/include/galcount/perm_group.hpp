#ifndef GALCOUNT_PERM_GROUP_HPP
#define GALCOUNT_PERM_GROUP_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "galcount/numeric.hpp"
#include "galcount/perm.hpp"

namespace galcount {

inline constexpr size_t kElementCap = 100000;  // oracle-style enumeration cap

/// Per-conjugacy-class data: representative, exact size, element order,
/// fixed-point count (constant on the class).
struct ClassSummary {
  Perm representative;
  Int class_size;
  int element_order = 1;
  int fix_count = 0;
};

/// A finite permutation group with a base and strong generating set,
/// built deterministically (base points = smallest moved point at each level).
/// Immutable after construction; all queries are reentrant.
class PermGroup {
public:
  PermGroup() = default;

  /// Schreier-Sims construction. Throws input_error on malformed generators.
  static PermGroup from_generators(int degree, std::vector<Perm> gens);

  int degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const Int& order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }

  std::vector<int> base() const;
  std::vector<Perm> strong_generators() const;
  /// Fundamental orbit lengths along the stabilizer chain; their product is the order.
  std::vector<size_t> fundamental_orbit_lengths() const;

  bool contains(const Perm& p) const;

  bool is_abelian() const;
  std::vector<std::vector<int>> orbits() const;
  bool is_transitive() const;
  bool is_primitive() const;

  /// Every element exactly once, deterministic order. resource_error above cap.
  std::vector<Perm> elements(size_t cap = kElementCap) const;

  /// Exhaustive-conjugation conjugacy classes (deterministic: the representative
  /// is the lexicographically smallest member; classes sorted by representative).
  std::vector<ClassSummary> conjugacy_classes(size_t cap = kElementCap) const;

  /// Degree-|G| group given by translation on the sorted element list.
  PermGroup regular_representation(size_t cap = kElementCap) const;

  /// True iff no non-identity element maps S onto itself (full scan).
  bool set_stabilizer_is_trivial(const std::vector<int>& points, size_t cap = kElementCap) const;

  /// min over non-identity g of (degree - number of cycles of g).
  /// domain_error on the trivial group.
  int malle_index(size_t cap = kElementCap) const;

  int count_elements_of_order(int k, size_t cap = kElementCap) const;

  /// Pointwise stabilizer of a prefix of points, as a subgroup of the same degree.
  PermGroup stabilizer_of_points(const std::vector<int>& points) const;

private:
  struct Level {
    int base_point = 0;
    std::vector<Perm> gens;          // generators of this level's stabilizer subgroup
    std::vector<int> orbit;          // fundamental orbit of base_point, BFS order
    std::vector<int> where;          // degree-sized: point -> index in orbit, or -1
    std::vector<int> parent_point;   // Schreier tree: per orbit index
    std::vector<int> parent_gen;     // generator index used to reach it
    Perm transversal(int point) const;  // u with u(base_point) = point
    void rebuild_orbit(int degree);
  };

  void build(std::vector<Perm> initial);
  void extend_level(size_t i, const Perm& g);
  // Sifts g through levels [from..); returns residue and the level it stuck at.
  std::pair<Perm, size_t> sift(Perm g, size_t from) const;
  void elements_rec(size_t level, const Perm& acc, std::vector<Perm>& out, size_t cap) const;

  int degree_ = 1;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;
  Int order_ = 1;
};

/// Parses the group input file format: line 1 "degree n", then one generator
/// per line (image list or disjoint cycles). '#' starts a comment.
PermGroup parse_group_text(const std::string& text);
PermGroup load_group_file(const std::string& path);

/// Resolves bundled names: cyclic:n, dihedral:n (order 2n), symmetric:n,
/// alternating:n, dicyclic:n (order 4n), elementary:p:r, frobenius:p,
/// heisenberg:p, smallgroup:<order>:<index>. Throws input_error if unknown.
PermGroup named_group(const std::string& name);

/// True if the name resolves without constructing the group.
bool is_known_group_name(const std::string& name);

/// The bundled test universe: every embedded small-group entry plus the
/// standard family instances used by the verification suites.
std::vector<std::pair<std::string, long>> bundled_group_names();

} // namespace galcount

#endif
