#ifndef GALCOUNT_FIELD_COUNT_HPP
#define GALCOUNT_FIELD_COUNT_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "galcount/numeric.hpp"

namespace galcount {

inline constexpr long long kSieveCap = 1000000000LL;

/// Invariant check: d == 1 mod 4 squarefree (d != 1), or d = 4m with
/// m == 2,3 mod 4 squarefree.
bool is_fundamental_discriminant(long long d);

/// All fundamental discriminants with |d| <= X, both signs, by squarefree
/// sieve. Returns the exact count; emits each d if a sink is given.
long long fundamental_discriminants_up_to(long long X,
                                          const std::function<void(long long)>& emit = nullptr);

struct CountReport {
  long long X = 0;
  std::map<std::string, long long> counts_by_group;  // abelian type -> exact count
  long long quadratic_count = 0;
  long long abelian_total = 0;
  int degree_cap = 2;
  Real main_term;               // (6/pi^2) X
  Real residual;                // total - main term (abelian-exact part only)
  Real residual_over_sqrt_x;
  bool has_nonabelian_bound = false;
  Real log10_nonabelian_bound;  // separately labeled upper bound, never added in
  std::string to_json() const;
  std::string to_text() const;
};

CountReport quadratic_density_report(long long X);

struct AbelianFieldRecord {
  long long conductor = 0;
  std::vector<long long> subgroup_gens;  // generators of H <= (Z/f)^x, as residues
  std::vector<long long> galois_type;    // invariant factors of (Z/f)^x / H
  Int discriminant;                      // |disc|
  bool totally_real = false;
  std::string type_name() const;         // e.g. "C2", "C2xC4"
  std::string to_csv() const;            // conductor, subgroup_gens, galois_type, disc
};

/// Every abelian extension of Q with degree <= degree_cap and |disc| <= X,
/// each exactly once (counted inside the cyclotomic closure): enumerate
/// conductors, enumerate dual subgroups, keep those whose character conductors
/// have lcm exactly f, discriminant by conductor-discriminant.
std::vector<AbelianFieldRecord> abelian_fields_up_to(long long X, int degree_cap);

/// Abelian counts exact; nonabelian contribution reported separately as a
/// log10 upper bound assembled from the explicit certificates.
CountReport galois_count_Q(long long X, double cutoff_C = 30.0);

Int tau_sum(int m, long long Q);
bool bordelles_check(int m, long long Q);

/// 1/2 for d <= 3, else 2/(d+1).
Rat error_exponent(int d);

} // namespace galcount

#endif
