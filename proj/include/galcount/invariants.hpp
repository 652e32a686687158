#ifndef GALCOUNT_INVARIANTS_HPP
#define GALCOUNT_INVARIANTS_HPP

#include <map>
#include <string>
#include <vector>

#include "galcount/perm_group.hpp"
#include "galcount/rootexpr.hpp"

namespace galcount {

/// Exponent vector over x_1..x_n.
using Monomial = std::vector<int>;

/// Sparse integer polynomial; only what the invariant machinery needs.
struct SparsePoly {
  int nvars = 0;
  std::map<Monomial, Int> terms;

  static SparsePoly zero(int nvars) { return {nvars, {}}; }
  void add_term(const Monomial& m, const Int& c);
  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly scaled(const Int& c) const;
  bool operator==(const SparsePoly& o) const { return nvars == o.nvars && terms == o.terms; }
};

/// A monic homogeneous invariant: the sum over the distinct monomials in the
/// G-orbit of a seed monomial.
struct OrbitSumInvariant {
  Monomial seed;
  int degree = 0;                 // total degree of the seed
  std::vector<Monomial> orbit;    // distinct, sorted

  size_t orbit_size() const { return orbit.size(); }
  SparsePoly to_poly() const;
  /// Evaluation mod p at a point (values 0..p-1).
  uint64_t eval_mod(const std::vector<uint64_t>& x, uint64_t p) const;
  uint64_t partial_eval_mod(int var, const std::vector<uint64_t>& x, uint64_t p) const;
};

enum class IndependenceStatus { Unverified, VerifiedRandomized, Failed };

struct InvariantSet {
  std::vector<OrbitSumInvariant> invariants;
  std::vector<int> degree_profile;  // sorted nondecreasing
  IndependenceStatus status = IndependenceStatus::Unverified;
  Rat failure_bound = 0;  // for VerifiedRandomized/Failed: (sum(deg-1)/p)^trials

  std::string to_text() const;  // one line per invariant: deg= seed= orbit=
};

/// De-duplicated orbit sum of a nonzero monomial. domain_error on zero input.
OrbitSumInvariant orbit_sum(const PermGroup& G, const Monomial& seed, size_t cap = kElementCap);

/// The regular-representation construction: f_1 linear, (n+n2-1)/2 quadratics
/// x_1 x_i, and one cubic x_1^2 x_i per pair whose associated group element
/// has order > 2. Requires a regular input group.
InvariantSet regular_invariant_set(const PermGroup& G_regular, size_t cap = kElementCap);

/// Schwartz-Zippel Jacobian test over random prime fields of size > 2^31.
/// A nonzero determinant evaluation certifies independence; Failed is reported
/// with the same bound and is never silently accepted.
IndependenceStatus jacobian_independence(InvariantSet& S, int trials, uint64_t seed);
IndependenceStatus jacobian_independence(const std::vector<OrbitSumInvariant>& polys, int nvars, int trials,
                                         uint64_t seed, Rat* failure_bound = nullptr);
/// Same test for arbitrary user-supplied polynomial collections.
IndependenceStatus jacobian_independence(const std::vector<SparsePoly>& polys, int trials, uint64_t seed,
                                         Rat* failure_bound = nullptr);

/// Number of orbits of a regular group on degree-2 monomials; equal to
/// (n + n2 + 1)/2 by the construction above.
long degree2_orbit_count(const PermGroup& G_regular, size_t cap = kElementCap);

/// a = (sum deg - n/2)/sqrt(order), w = (sum deg)/n.
std::pair<RootExpr, Rat> a_and_w_from_degrees(const std::vector<int>& profile, const Int& group_order);

/// Exact rank over Q of the span of all orbit sums of degree <= 2
/// (fraction-free elimination on the coefficient matrix).
long degree_le2_span_rank(const PermGroup& G, size_t cap = kElementCap);

} // namespace galcount

#endif
