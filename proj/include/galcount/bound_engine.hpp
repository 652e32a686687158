#ifndef GALCOUNT_BOUND_ENGINE_HPP
#define GALCOUNT_BOUND_ENGINE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "galcount/group_structure.hpp"
#include "galcount/rootexpr.hpp"

namespace galcount {

enum class Mode { Uniform, Optimal, Explicit, NoCfsg };
std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

/// integer_factor * e^{e_exponent} * pow_base^{pow_exponent}
struct BoundConstant {
  Int integer_factor = 1;
  Int e_exponent = 0;
  Int pow_base = 1;
  RootExpr pow_exponent = RootExpr(0);
  Real log_value(unsigned bits = 256) const;  // natural log
  std::string str() const;
};

struct TraceNode {
  std::string rule;
  std::map<std::string, std::string> params;
  RootExpr value;
  bool eps = false;
  std::vector<TraceNode> children;
  int depth() const;
};

struct ExponentCertificate {
  std::string group;
  Mode mode = Mode::Uniform;
  int d = 1;
  RootExpr exponent;
  bool eps_slack = false;
  std::optional<BoundConstant> constant;
  TraceNode trace;
  std::string to_json() const;
};

/// Re-derives every trace node from its children; throws domain_error on any
/// mismatch. Returns the number of nodes checked.
int validate_certificate(const ExponentCertificate& cert);

class BoundEngine {
public:
  explicit BoundEngine(Mode mode, int d = 1, uint64_t seed = 1);

  /// Full recursion over minimal normal subgroups (Uniform/Optimal), the
  /// global explicit bound (Explicit), or the classification-free route (NoCfsg).
  ExponentCertificate certify(const PermGroup& G, const std::string& descriptor = "");

  Mode mode() const { return mode_; }

private:
  TraceNode rec(const PermGroup& G, int depth);
  TraceNode nonabelian_socle(const PermGroup& G, int depth);
  std::optional<TraceNode> case3_node(const PermGroup& G, const Subgroup& N, const ElementaryAbelian& ea,
                                      int depth);
  TraceNode no_cfsg(const PermGroup& G);
  Mode mode_;
  int d_;
  uint64_t seed_;
  std::map<std::string, TraceNode> memo_;
};

ExponentCertificate certify(const PermGroup& G, Mode mode, int d = 1, const std::string& descriptor = "");
ExponentCertificate no_cfsg_exponent(const PermGroup& G, const std::string& descriptor = "");

/// Lemma-level building blocks, exposed for the harness and the CLI.

/// Product rule for two quotient certificates along disjoint normal subgroups;
/// empty when 1/sqrt(n1) + 1/sqrt(n2) > 1. Validates the normal-form identity
///   1/(n1 sqrt(g/n1)) + 1/(n2 sqrt(g/n2)) = (1/sqrt g)(1/sqrt n1 + 1/sqrt n2)
/// exactly at every application.
std::optional<ExponentCertificate> combine_disjoint_normals(const ExponentCertificate& cert1,
                                                            const ExponentCertificate& cert2, const Int& n1,
                                                            const Int& n2, const Int& g_order);

struct AbelianBound {
  Rat a;                  // (p-1)|A|/p
  Rat exponent;           // 2/a, the fully explicit form
  Rat refined_exponent;   // 1/a, carries +epsilon
  BoundConstant constant; // |A|^{3d} |A[2]|^{r1} e^{d(|A|-1)-1} Cl^r
};
AbelianBound abelian_count_bound(const std::vector<Int>& invariant_factors, int d, int r1 = 1,
                                 const Int& class_number = 1);

struct CentralBound {
  Rat increment;          // 2 p0 / ((p0-1)|G|)
  BoundConstant constant; // e^{(log|G|)^2/log 2} |A|^{2d} ... (log-evaluable)
  Real log_constant;
};
CentralBound central_bound(const PermGroup& G, const Subgroup& A, int d);

ExponentCertificate abelian_socle_case(const PermGroup& G, const Subgroup& N, Mode mode, int d = 1);

/// Closed-form almost-simple family evaluators (the table generators).
struct FamilyDescriptor {
  std::string family;  // alternating | schmidt | linear | symplectic | base | profile | j3 | socle-power
  long n = 0;          // permutation degree (or n0 for gamma-variants)
  long m = 0, q = 0;
  long gamma = 1;
  long d_blocks = 1;   // wreath block count for the schmidt form
  int b = 0;           // base size for the base form
  Int order;           // |G|
  std::vector<int> profile;  // for the profile form
  long r = 0;          // socle-power copies
  Int socle_factor_order;    // |G0| for socle-power
};
/// The a(G) coefficient for the family (exponent in X is a/sqrt(order)).
RootExpr family_a_coefficient(const FamilyDescriptor& fd);
ExponentCertificate nonabelian_socle_bound(const FamilyDescriptor& fd, Mode mode);
ExponentCertificate nonabelian_socle_bound(const PermGroup& G, Mode mode);

BoundConstant explicit_constant(const Int& order, int d);

/// Largest n with d*n <= (1/3) log X + C (log X given directly).
long degree_cutoff_from_log(const Real& log_x, int d, double C);
long degree_cutoff(const Real& X, int d, double C);

/// Number of groups of order <= N: N^{(log N)^2/(6 (log 2)^2) + log N / log 2}.
Real holt_group_count_log(const Int& N);  // natural log of the bound
Real holt_group_count(const Int& N);

Real class_number_bound(const Int& disc);  // 2 pi disc^{3/4}

struct TailReport {
  Real log_x;
  int d = 1;
  double C = 30.0;
  long cutoff = 0;
  long first_order = 5184;
  bool zero_tail = true;
  Real log_total;          // natural log of the tail bound (when nonzero)
  Real log_group_count;    // holt bound at the cutoff
  Real log_max_term;
  long term_count = 0;
  std::string to_json() const;
};
/// Upper bound on sum over 5184 <= n <= cutoff of
/// holt(n) * explicit_constant(n, d) * corefree_bound(n) * X^{6/sqrt(n)}.
TailReport tail_bound_from_log(const Real& log_x, int d, double C = 30.0);

} // namespace galcount

#endif
