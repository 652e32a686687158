#ifndef GALCOUNT_GROUP_STRUCTURE_HPP
#define GALCOUNT_GROUP_STRUCTURE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "galcount/perm_group.hpp"

namespace galcount {

/// A subgroup of a fixed parent group, backed by its own stabilizer chain.
class Subgroup {
public:
  Subgroup(const PermGroup& parent, std::vector<Perm> gens);

  const PermGroup& chain() const { return chain_; }
  const PermGroup& parent() const { return *parent_; }
  const Int& order() const { return chain_.order(); }
  bool contains(const Perm& p) const { return chain_.contains(p); }
  bool is_trivial() const { return chain_.is_trivial(); }
  const std::vector<Perm>& generators() const { return chain_.generators(); }
  std::vector<Perm> elements(size_t cap = kElementCap) const { return chain_.elements(cap); }

  bool is_normal() const;
  bool is_central() const;  // contained in Z(parent)

private:
  const PermGroup* parent_;
  PermGroup chain_;
};

struct ElementaryAbelian {
  long p = 0;
  int rank = 0;
};
struct NonabelianCharSimple {
  std::vector<std::pair<Int, int>> order_factorization;
  std::optional<Int> simple_factor_order;  // best effort, never load-bearing
  int copies = 1;
};
using MinimalNormalClass = std::variant<ElementaryAbelian, NonabelianCharSimple>;

struct MinimalNormalReport {
  std::vector<std::pair<Subgroup, MinimalNormalClass>> subgroups;
};

Subgroup center(const PermGroup& G, size_t cap = kElementCap);
Subgroup centralizer(const PermGroup& G, const Subgroup& N, size_t cap = kElementCap);

/// All minimal normal subgroups with classification, via normal closures of
/// single conjugacy classes. domain_error on the trivial group.
MinimalNormalReport minimal_normal_subgroups(const PermGroup& G, size_t cap = kElementCap);

/// Quotient G/N as a permutation group on the cosets of N (N must be normal).
PermGroup quotient_group(const PermGroup& G, const Subgroup& N, size_t cap = kElementCap);

/// Quotient together with the projection map (right-translation action).
struct QuotientData {
  PermGroup Q;
  std::vector<Perm> coset_reps;  // canonical (lex-least) representative per point
  std::unordered_map<Perm, int, PermHash> coset_of;
  Perm image(const Perm& x) const;  // the coset permutation induced by x
};
QuotientData quotient_data(const PermGroup& G, const Subgroup& N, size_t cap = kElementCap);

inline constexpr size_t kSubgroupEnumCap = 200;

/// Every subgroup, as sorted element lists; deterministic order
/// (by order, then lexicographic).
std::vector<std::vector<Perm>> all_subgroups(const PermGroup& G, size_t cap = kSubgroupEnumCap);

struct CoreFreeCount {
  Int exact;       // -1 when evaluate-only (cap exceeded)
  Real bound;      // exp((log|G|)^2 / log 2)
  Int total_subgroups;
};
CoreFreeCount count_core_free_subgroups(const PermGroup& G, size_t cap = kSubgroupEnumCap);
Real core_free_bound(const Int& order);

/// True iff every subgroup admits a generating set of size <= Omega(|G|),
/// checked by greedy generation.
bool generation_bound_check(const PermGroup& G, size_t cap = kSubgroupEnumCap);

int order2_count(const PermGroup& G, size_t cap = kElementCap);

/// A homomorphism between two desk-scale groups, given by images of the
/// domain's generators; validated on construction (word evaluation over the
/// whole domain plus the multiplicative check).
class GroupHom {
public:
  GroupHom(const PermGroup& dom, const PermGroup& cod, std::vector<Perm> images, size_t cap = kElementCap);
  const PermGroup& domain() const { return *dom_; }
  const PermGroup& codomain() const { return *cod_; }
  Perm apply(const Perm& x) const;
  const std::vector<Perm>& generator_images() const { return images_; }

  /// Tries to extend generator images to a homomorphism; empty if not one.
  static std::optional<std::vector<std::pair<Perm, Perm>>> try_extend(const PermGroup& dom,
                                                                      const PermGroup& cod,
                                                                      const std::vector<Perm>& images,
                                                                      size_t cap = kElementCap);

private:
  const PermGroup* dom_;
  const PermGroup* cod_;
  std::vector<Perm> images_;
  std::vector<std::pair<Perm, Perm>> table_;  // sorted by domain element
};

struct CentralFiberCount {
  Int fiber;       // homs with the same projection to G/A as rho
  Int homs_to_a;   // |Hom(Gamma, A)|
};

/// Counts homomorphisms rho': Gamma -> G whose composition with G -> G/A
/// equals that of rho, together with |Hom(Gamma, A)|. A must be central.
CentralFiberCount central_fiber_count(const PermGroup& gamma, const PermGroup& G, const Subgroup& A,
                                      const GroupHom& rho, size_t cap = kElementCap);

/// Least prime divisor of |G| (domain_error on the trivial group).
Int least_prime_divisor(const Int& order);

/// Rank (minimal generator count) of an abelian group, from element-order counts.
int abelian_rank(const PermGroup& G, size_t cap = kElementCap);

/// Invariant factors d_1 | d_2 | ... of an abelian group.
std::vector<Int> abelian_invariants(const PermGroup& G, size_t cap = kElementCap);

} // namespace galcount

#endif
