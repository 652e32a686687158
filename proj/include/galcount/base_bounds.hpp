#ifndef GALCOUNT_BASE_BOUNDS_HPP
#define GALCOUNT_BASE_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "galcount/perm_group.hpp"
#include "galcount/rootexpr.hpp"

namespace galcount {

struct BaseCertificate {
  enum class Kind { PointwiseBase, StrongSet };
  Kind kind = Kind::PointwiseBase;
  std::vector<int> points;
  int b = 0;  // StrongSet: |points| == b+1 and every b-subset has trivial setwise stabilizer
};

/// Irredundant pointwise base via greedy largest-orbit point selection.
BaseCertificate greedy_base(const PermGroup& G);

/// Exact number of ordered k-tuples (with repetition) whose underlying set is
/// invariant under g. Requires g of prime order and k in {3,4}; equals the
/// brute-force count over all n^k tuples.
Int set_invariant_tuple_count(const Perm& g, int k);

/// Per-class closed form used by the probability bounds. Identical to the
/// exact count except for k=4 on involutions, where the assembled inequality
/// is slightly larger than the exact count (it remains a valid upper bound,
/// and it is the form the certified rationals are pinned to).
Int class_tuple_bound(int element_order, long fix, long degree, int k);

struct ClassDataEntry {
  std::string name;
  int element_order = 1;
  Int size;
  long fix = 0;
};
struct ClassDataFile {
  long degree = 0;
  std::vector<ClassDataEntry> classes;
};

/// Text format: header "degree <n>"; one class per line:
/// "name <label> order <m> size <integer> fix <integer>".
ClassDataFile parse_class_data(const std::string& text);
ClassDataFile load_class_data(const std::string& path);

struct StabProbBound {
  long degree = 0;
  Rat triple_bound;            // P[Stab{x,y,z} != 1] upper bound
  Rat quadruple_bound;         // P[Stab{x,y,z,w} != 1] upper bound
  Rat union_bound_4choose3;    // quadruple + 4 * triple
};

/// Exact-rational stabilizer probability bounds from prime-order class data.
StabProbBound stab_prob_bounds(const ClassDataFile& data);
StabProbBound stab_prob_bounds(const PermGroup& G, size_t cap = kElementCap);

/// Searches for a strong (b+1)-set: |Sigma| = b+1 with trivial setwise
/// stabilizer whose every b-subset also has trivial setwise stabilizer.
/// Random sampling under the seed, then lexicographic systematic search when
/// the degree is at most 50. Absence of a certificate proves nothing.
std::optional<BaseCertificate> strong_set_search(const PermGroup& G, int b, long budget = 100000,
                                                 uint64_t seed = 1, size_t cap = kElementCap);

/// Re-validates a strong-set certificate through the public stabilizer test.
bool validate_strong_set(const PermGroup& G, const BaseCertificate& cert, size_t cap = kElementCap);

struct BaseExponent {
  RootExpr a;  // (b^2+3b+1) * n * gamma / (2 sqrt(order))
  Rat w;       // (b+1)(b+2)/2
};
BaseExponent base_to_exponent(long n, int b, const Int& group_order, long gamma = 1);

} // namespace galcount

#endif
