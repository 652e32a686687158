#include "galcount/bound_engine.hpp"

#include <algorithm>
#include <sstream>

#include "galcount/base_bounds.hpp"
#include "galcount/invariants.hpp"

#include "json.hpp"

namespace galcount {

using nlohmann::json;

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Uniform: return "uniform";
    case Mode::Optimal: return "optimal";
    case Mode::Explicit: return "explicit";
    case Mode::NoCfsg: return "no-cfsg";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  if (s == "uniform") return Mode::Uniform;
  if (s == "optimal") return Mode::Optimal;
  if (s == "explicit") return Mode::Explicit;
  if (s == "no-cfsg" || s == "nocfsg") return Mode::NoCfsg;
  throw input_error("unknown mode: " + s);
}

Real BoundConstant::log_value(unsigned bits) const {
  Real::default_precision(static_cast<unsigned>(bits * 0.302) + 2);
  Real acc = log(Real(integer_factor));
  acc += Real(e_exponent);
  if (pow_base > 1) acc += pow_exponent.evaluate(bits) * log(Real(pow_base));
  return acc;
}

std::string BoundConstant::str() const {
  std::ostringstream os;
  bool first = true;
  if (integer_factor != 1) {
    os << integer_factor;
    first = false;
  }
  if (e_exponent != 0) {
    os << (first ? "" : " * ") << "e^" << e_exponent;
    first = false;
  }
  if (pow_base > 1) {
    os << (first ? "" : " * ") << pow_base << "^(" << pow_exponent.str() << ")";
    first = false;
  }
  if (first) os << 1;
  return os.str();
}

int TraceNode::depth() const {
  int d = 0;
  for (const TraceNode& c : children) d = std::max(d, c.depth());
  return d + 1;
}

namespace {

json rootexpr_json(const RootExpr& e) {
  json roots = json::array();
  for (const auto& t : e.root_terms()) {
    std::ostringstream c;
    c << t.coeff;
    if (t.radicand <= Int(std::numeric_limits<long long>::max()))
      roots.push_back({c.str(), static_cast<long long>(t.radicand)});
    else
      roots.push_back({c.str(), t.radicand.str()});
  }
  std::ostringstream r;
  r << e.rational_part();
  return json{{"rational", r.str()}, {"roots", roots}};
}

json trace_json(const TraceNode& n) {
  json kids = json::array();
  for (const TraceNode& c : n.children) kids.push_back(trace_json(c));
  return json{{"rule", n.rule},
              {"params", n.params},
              {"value", rootexpr_json(n.value)},
              {"eps", n.eps},
              {"children", kids}};
}

Rat param_rat(const TraceNode& n, const std::string& key) {
  auto it = n.params.find(key);
  if (it == n.params.end()) throw domain_error("trace node missing parameter " + key);
  return Rat(it->second);
}

Int param_int(const TraceNode& n, const std::string& key) {
  auto it = n.params.find(key);
  if (it == n.params.end()) throw domain_error("trace node missing parameter " + key);
  return Int(it->second);
}

std::string int_str(const Int& v) { return v.str(); }

std::string rat_str(const Rat& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

} // namespace

std::string ExponentCertificate::to_json() const {
  json j{{"group", group},
         {"mode", mode_name(mode)},
         {"d", d},
         {"exponent", rootexpr_json(exponent)},
         {"eps", eps_slack},
         {"trace", trace_json(trace)}};
  if (constant) j["constant"] = constant->str();
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// lemma-level blocks
// ---------------------------------------------------------------------------

std::optional<ExponentCertificate> combine_disjoint_normals(const ExponentCertificate& cert1,
                                                            const ExponentCertificate& cert2, const Int& n1,
                                                            const Int& n2, const Int& g_order) {
  // hypothesis 1/sqrt(n1) + 1/sqrt(n2) <= 1, checked exactly
  RootExpr lhs = RootExpr::ratio_sqrt(1, n1) + RootExpr::ratio_sqrt(1, n2);
  if (lhs > RootExpr(1)) return std::nullopt;
  // normal-form identity with c = 1
  RootExpr left = RootExpr::ratio_sqrt(Rat(1) / Rat(n1), g_order / n1) +
                  RootExpr::ratio_sqrt(Rat(1) / Rat(n2), g_order / n2);
  RootExpr right_factor = RootExpr::ratio_sqrt(1, n1) + RootExpr::ratio_sqrt(1, n2);
  // (1/sqrt g) * right_factor expands over the terms of right_factor
  RootExpr right = RootExpr::ratio_sqrt(right_factor.rational_part(), g_order);
  for (const auto& t : right_factor.root_terms())
    right = right + RootExpr::ratio_sqrt(t.coeff, t.radicand * g_order);
  if (!(left == right)) throw domain_error("disjoint-normal identity failed to re-validate");

  ExponentCertificate out;
  out.group = "(" + cert1.group + " x " + cert2.group + " product)";
  out.mode = cert1.mode;
  out.exponent = cert1.exponent.scaled(Rat(1) / Rat(n1)) + cert2.exponent.scaled(Rat(1) / Rat(n2));
  out.eps_slack = cert1.eps_slack || cert2.eps_slack;
  out.trace.rule = "disjoint-normal-product";
  out.trace.params["n1"] = int_str(n1);
  out.trace.params["n2"] = int_str(n2);
  out.trace.params["g"] = int_str(g_order);
  out.trace.value = out.exponent;
  out.trace.eps = out.eps_slack;
  out.trace.children = {cert1.trace, cert2.trace};
  return out;
}

AbelianBound abelianCountBoundImpl(const std::vector<Int>& inv, int d, int r1, const Int& cl) {
  if (inv.empty()) throw domain_error("abelian bound requires a nontrivial group");
  Int order = 1;
  for (const Int& f : inv) order *= f;
  if (order <= 1) throw domain_error("abelian bound requires a nontrivial group");
  Int p = least_prime_divisor(order);
  AbelianBound out;
  out.a = Rat(p - 1) * Rat(order) / Rat(p);
  out.exponent = 2 / out.a;
  out.refined_exponent = 1 / out.a;
  // |A|^{3d} * |A[2]|^{r1} * e^{d(|A|-1)-1} * |Cl|^r
  Int a2 = 1;
  for (const Int& f : inv)
    if (f % 2 == 0) a2 *= 2;
  Int intf = 1;
  for (int i = 0; i < 3 * d; ++i) intf *= order;
  for (int i = 0; i < r1; ++i) intf *= a2;
  for (size_t i = 0; i < inv.size(); ++i) intf *= cl;
  out.constant.integer_factor = intf;
  out.constant.e_exponent = Int(d) * (order - 1) - 1;
  return out;
}

AbelianBound abelian_count_bound(const std::vector<Int>& invariant_factors, int d, int r1, const Int& class_number) {
  return abelianCountBoundImpl(invariant_factors, d, r1, class_number);
}

CentralBound central_bound(const PermGroup& G, const Subgroup& A, int d) {
  if (!A.is_central()) throw domain_error("central bound requires a central subgroup");
  Int p0 = least_prime_divisor(G.order());
  CentralBound out;
  out.increment = Rat(2 * p0) / (Rat(p0 - 1) * Rat(G.order()));
  // e^{(log|G|)^2/log 2} * |A|^{2d} * |A[2]|^{r1} * e^{d|A|-1} * Cl^r (over Q: Cl=1, r1=1)
  Int a_ord = A.order();
  Int a2 = 1;
  for (const Perm& g : A.elements())
    if (g.order() == 2) a2 += 1;  // |A[2]| = involutions + identity
  Int intf = a2;
  for (int i = 0; i < 2 * d; ++i) intf *= a_ord;
  out.constant.integer_factor = intf;
  out.constant.e_exponent = Int(d) * a_ord - 1;
  Real lg = log(Real(G.order()));
  out.log_constant = out.constant.log_value() + lg * lg / log(Real(2));
  return out;
}

BoundConstant explicit_constant(const Int& order, int d) {
  if (order < 1 || d < 1) throw domain_error("explicit constant requires positive inputs");
  BoundConstant c;
  c.e_exponent = Int(d) * order;
  c.pow_base = 2 * Int(d) * order * order;
  c.pow_exponent = RootExpr::times_sqrt(Rat(37 * d) / 2, order);
  return c;
}

long degree_cutoff_from_log(const Real& log_x, int d, double C) {
  if (d < 1) throw domain_error("degree cutoff requires d >= 1");
  Real bound = log_x / 3 + Real(C);
  long n = static_cast<long>(floor(bound / d).convert_to<double>());
  return std::max<long>(n, 0);
}

long degree_cutoff(const Real& X, int d, double C) {
  if (X < 1) throw domain_error("degree cutoff requires X >= 1");
  return degree_cutoff_from_log(log(X), d, C);
}

Real holt_group_count_log(const Int& N) {
  if (N < 1) throw domain_error("holt bound requires N >= 1");
  if (N == 1) return Real(0);
  Real lg = log(Real(N));
  Real l2 = log(Real(2));
  return lg * (lg * lg / (6 * l2 * l2) + lg / l2);
}

Real holt_group_count(const Int& N) { return exp(holt_group_count_log(N)); }

Real class_number_bound(const Int& disc) {
  if (disc < 1) throw domain_error("class number bound requires disc >= 1");
  Real::default_precision(80);
  Real pi_hp = 4 * atan(Real(1));
  return 2 * pi_hp * pow(Real(disc), Real(3) / 4);
}

TailReport tail_bound_from_log(const Real& log_x, int d, double C) {
  if (log_x < 1) throw domain_error("tail bound requires X >= e^e");
  TailReport rep;
  rep.log_x = log_x;
  rep.d = d;
  rep.C = C;
  rep.cutoff = degree_cutoff_from_log(log_x, d, C);
  rep.log_group_count = holt_group_count_log(Int(std::max<long>(rep.cutoff, 1)));
  if (rep.cutoff < rep.first_order) {
    rep.zero_tail = true;
    rep.log_total = Real(0);
    rep.log_max_term = Real(0);
    return rep;
  }
  rep.zero_tail = false;
  // log-sum-exp over n in [5184, cutoff], forward and backward as a consistency check
  auto log_term = [&](long n) {
    Int N(n);
    Real lt = explicit_constant(N, d).log_value();
    Real lg = log(Real(N));
    lt += lg * lg / log(Real(2));                 // core-free bound
    lt += holt_group_count_log(N);                // count of groups of order <= n
    lt += Real(6) / sqrt(Real(N)) * log_x;        // X^{6/sqrt n}
    return lt;
  };
  Real maxt = log_term(rep.first_order);
  for (long n = rep.first_order; n <= rep.cutoff; ++n) maxt = std::max(maxt, log_term(n));
  Real fwd = 0, bwd = 0;
  for (long n = rep.first_order; n <= rep.cutoff; ++n) fwd += exp(log_term(n) - maxt);
  for (long n = rep.cutoff; n >= rep.first_order; --n) bwd += exp(log_term(n) - maxt);
  if (abs(fwd - bwd) > fwd * 1e-12) throw domain_error("tail re-summation check failed");
  rep.log_total = maxt + log(fwd);
  rep.log_max_term = maxt;
  rep.term_count = rep.cutoff - rep.first_order + 1;
  return rep;
}

std::string TailReport::to_json() const {
  json j{{"log_x", log_x.convert_to<double>()},
         {"d", d},
         {"C", C},
         {"cutoff", cutoff},
         {"first_order", first_order},
         {"zero_tail", zero_tail},
         {"term_count", term_count},
         {"log_group_count", log_group_count.convert_to<double>()}};
  if (!zero_tail) {
    j["log_total"] = log_total.convert_to<double>();
    j["log_max_term"] = log_max_term.convert_to<double>();
  }
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// family evaluators
// ---------------------------------------------------------------------------

namespace {

Int ipow(Int b, long e) {
  Int r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

} // namespace

RootExpr family_a_coefficient(const FamilyDescriptor& fd) {
  if (fd.family == "alternating" || fd.family == "schmidt") {
    // d n0 (n0+2) / (4 sqrt|G|) with degree n = n0 * d; fd.n holds n0
    return RootExpr::ratio_sqrt(Rat(Int(fd.d_blocks) * fd.n * (fd.n + 2)) / 4, fd.order);
  }
  if (fd.family == "linear") {
    Int qm = ipow(fd.q, fd.m);
    return RootExpr::ratio_sqrt(Rat(Int(10 * fd.m + 9) * (qm - 1) * fd.gamma) / (2 * Rat(fd.q - 1)), fd.order);
  }
  if (fd.family == "symplectic") {
    Int q2m = ipow(fd.q, 2 * fd.m);
    return RootExpr::ratio_sqrt(Rat(Int(14 * fd.m + 9) * (q2m - 1) * fd.gamma) / (2 * Rat(fd.q - 1)), fd.order);
  }
  if (fd.family == "base") {
    return base_to_exponent(fd.n, fd.b, fd.order, fd.gamma).a;
  }
  if (fd.family == "profile") {
    return a_and_w_from_degrees(fd.profile, fd.order).first;
  }
  throw input_error("unknown almost-simple family: " + fd.family);
}

ExponentCertificate nonabelian_socle_bound(const FamilyDescriptor& fd, Mode mode) {
  ExponentCertificate cert;
  cert.mode = mode;
  cert.group = fd.family;
  if (fd.family == "j3") {
    const Int j3_order(50232960);
    if (mode == Mode::Optimal) {
      // degree-profile invariants refined through the Malle index of the action
      cert.exponent = Rat(Int(863441), Int(2009318400));
      cert.trace.rule = "j3-malle-index-route";
      cert.trace.params["n"] = "6156";
      cert.trace.params["index"] = "3040";
      cert.eps_slack = true;
    } else {
      std::vector<int> profile{1, 2, 3, 4};
      profile.insert(profile.end(), 6140, 5);
      profile.insert(profile.end(), 12, 9);
      RootExpr a = a_and_w_from_degrees(profile, j3_order).first;
      cert.exponent = a.div_sqrt(j3_order);
      cert.trace.rule = "strong-set-profile";
      cert.trace.params["n"] = "6156";
      cert.trace.params["order"] = j3_order.str();
    }
    cert.trace.value = cert.exponent;
    cert.trace.eps = cert.eps_slack;
    return cert;
  }
  if (fd.family == "socle-power") {
    // N = T^r, r >= 2: X^{ c r sqrt|G0| / |G| + r(r+2)/(4|G|) }
    if (fd.profile.empty() || fd.r < 2) throw input_error("socle-power needs r >= 2 and an invariant profile for G0");
    RootExpr c = a_and_w_from_degrees(fd.profile, fd.socle_factor_order).first;
    RootExpr term1 = c.times_sqrt_of(fd.socle_factor_order).scaled(Rat(fd.r) / Rat(fd.order));
    RootExpr term2 = Rat(Int(fd.r) * (fd.r + 2)) / (4 * Rat(fd.order));
    cert.exponent = term1 + term2;
    cert.trace.rule = "socle-power-wreath";
    cert.trace.params["r"] = std::to_string(fd.r);
    cert.trace.params["g0"] = fd.socle_factor_order.str();
    cert.trace.params["g"] = fd.order.str();
    cert.trace.value = cert.exponent;
    return cert;
  }
  RootExpr a = family_a_coefficient(fd);
  cert.exponent = a.div_sqrt(fd.order);
  cert.trace.rule = "family-" + fd.family;
  cert.trace.params["order"] = fd.order.str();
  cert.trace.params["n"] = std::to_string(fd.n);
  cert.trace.params["m"] = std::to_string(fd.m);
  cert.trace.params["q"] = std::to_string(fd.q);
  cert.trace.params["gamma"] = std::to_string(fd.gamma);
  cert.trace.params["blocks"] = std::to_string(fd.d_blocks);
  cert.trace.params["b"] = std::to_string(fd.b);
  cert.trace.value = cert.exponent;
  return cert;
}

// ---------------------------------------------------------------------------
// concrete recursion
// ---------------------------------------------------------------------------

namespace {

TraceNode leaf(const std::string& rule, RootExpr value, bool eps) {
  TraceNode n;
  n.rule = rule;
  n.value = std::move(value);
  n.eps = eps;
  return n;
}

std::string group_fingerprint(const PermGroup& G) {
  std::map<int, int> order_counts;
  for (const Perm& g : G.elements()) ++order_counts[g.order()];
  std::ostringstream os;
  os << G.order();
  for (const auto& [o, c] : order_counts) os << ":" << o << "^" << c;
  return os.str();
}

// the uniform/optimal fallback coefficients c with exponent c/sqrt(|G|)
RootExpr fallback_exponent(const Int& order, Mode mode) {
  if (mode == Mode::Optimal) return RootExpr::ratio_sqrt(Rat(863441, 2880), Int(9690) * order);
  return RootExpr::ratio_sqrt(Rat(6935, 18), Int(9690) * order);
}

// best faithful transitive re-representation: action on the cosets of a
// maximal-order core-free subgroup (desk scale only)
std::optional<PermGroup> min_degree_action(const PermGroup& G) {
  if (G.order() > Int(kSubgroupEnumCap)) return std::nullopt;
  std::vector<Perm> els = G.elements();
  std::vector<Perm> best;
  for (const auto& H : all_subgroups(G)) {
    if (H.size() <= best.size()) continue;
    std::set<Perm> core(H.begin(), H.end());
    for (const Perm& g : els) {
      if (core.size() == 1) break;
      Perm gi = g.inverse();
      std::set<Perm> conj;
      for (const Perm& h : H) conj.insert(gi * h * g);
      std::set<Perm> inter;
      std::set_intersection(core.begin(), core.end(), conj.begin(), conj.end(),
                            std::inserter(inter, inter.begin()));
      core = std::move(inter);
    }
    if (core.size() == 1) best = H;
  }
  if (best.empty() || best.size() == 1) return std::nullopt;
  // coset action
  std::vector<Perm> sorted_h = best;
  std::unordered_map<Perm, int, PermHash> coset_of;
  std::vector<Perm> reps;
  for (const Perm& g : els) {
    if (coset_of.count(g)) continue;
    Perm canon = g;
    std::vector<Perm> members;
    for (const Perm& h : sorted_h) {
      Perm x = h * g;
      if (x < canon) canon = x;
      members.push_back(std::move(x));
    }
    int id = static_cast<int>(reps.size());
    reps.push_back(canon);
    for (Perm& x : members) coset_of.emplace(std::move(x), id);
  }
  const int m = static_cast<int>(reps.size());
  std::vector<Perm> gens;
  for (const Perm& g : G.generators()) {
    std::vector<int> img(m);
    for (int c = 0; c < m; ++c) img[c] = coset_of.at(reps[c] * g) + 1;
    gens.push_back(Perm(std::move(img)));
  }
  return PermGroup::from_generators(m, std::move(gens));
}

} // namespace

BoundEngine::BoundEngine(Mode mode, int d, uint64_t seed) : mode_(mode), d_(d), seed_(seed) {}

TraceNode BoundEngine::nonabelian_socle(const PermGroup& G, int depth) {
  (void)depth;
  std::vector<TraceNode> cands;
  std::vector<const PermGroup*> actions{&G};
  std::optional<PermGroup> redone = min_degree_action(G);
  if (redone && redone->degree() < G.degree()) actions.push_back(&*redone);
  for (const PermGroup* pi : actions) {
    const long n = pi->degree();
    if (pi->is_transitive() && pi->is_primitive()) {
      TraceNode t = leaf("schmidt-primitive", Rat(Int(n) * (n + 2)) / (4 * Rat(G.order())), false);
      t.params["n"] = std::to_string(n);
      t.params["order"] = G.order().str();
      cands.push_back(std::move(t));
    }
    BaseCertificate base = greedy_base(*pi);
    const int b = static_cast<int>(base.points.size());
    TraceNode t = leaf("base-size-bound", Rat(Int(b) * b + 3 * b + 1) * n / (2 * Rat(G.order())), false);
    t.params["n"] = std::to_string(n);
    t.params["b"] = std::to_string(b);
    t.params["order"] = G.order().str();
    cands.push_back(std::move(t));
    if (n >= 17 && G.order() <= Int(kElementCap)) {
      auto strong = strong_set_search(*pi, 3, 2000, seed_);
      if (strong) {
        TraceNode s = leaf("strong-set-profile", Rat(Int(9) * n + 76) / (2 * Rat(G.order())), false);
        s.params["n"] = std::to_string(n);
        s.params["order"] = G.order().str();
        cands.push_back(std::move(s));
      }
    }
  }
  TraceNode fb = leaf("global-socle-bound", fallback_exponent(G.order(), mode_), false);
  fb.params["order"] = G.order().str();
  fb.params["coeff"] = mode_ == Mode::Optimal ? "863441/2880" : "6935/18";
  fb.params["radicand"] = "9690";
  cands.push_back(std::move(fb));

  TraceNode best = cands.front();
  for (size_t i = 1; i < cands.size(); ++i)
    if (cands[i].value < best.value) best = cands[i];
  return best;
}

TraceNode BoundEngine::rec(const PermGroup& G, int depth) {
  if (depth > 64) throw resource_error("certification recursion depth cap exceeded");
  if (G.order() == 1) return leaf("trivial-group", RootExpr(0), false);
  if (G.order() == 2) return leaf("quadratic-count", RootExpr(1), false);
  std::string key = group_fingerprint(G);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  std::vector<TraceNode> cands;

  if (G.is_abelian()) {
    int rank = abelian_rank(G);
    if (mode_ == Mode::Optimal || rank <= 2) {
      Int p = least_prime_divisor(G.order());
      Rat a = Rat(p - 1) * Rat(G.order()) / Rat(p);
      TraceNode t = leaf("abelian-field-bound", RootExpr(1 / a), true);
      t.params["order"] = G.order().str();
      t.params["p"] = p.str();
      t.params["a"] = rat_str(a);
      t.params["rank"] = std::to_string(rank);
      cands.push_back(std::move(t));
    }
  }

  MinimalNormalReport mins = minimal_normal_subgroups(G);
  bool all_abelian = true;
  for (const auto& [N, cls] : mins.subgroups)
    if (!std::holds_alternative<ElementaryAbelian>(cls)) all_abelian = false;

  // product rule over disjoint pairs, when 1/sqrt + 1/sqrt <= 1
  for (size_t i = 0; i < mins.subgroups.size(); ++i)
    for (size_t j = i + 1; j < mins.subgroups.size(); ++j) {
      const Int n1 = mins.subgroups[i].first.order();
      const Int n2 = mins.subgroups[j].first.order();
      RootExpr hyp = RootExpr::ratio_sqrt(1, n1) + RootExpr::ratio_sqrt(1, n2);
      if (hyp > RootExpr(1)) continue;
      TraceNode c1 = rec(quotient_group(G, mins.subgroups[i].first), depth + 1);
      TraceNode c2 = rec(quotient_group(G, mins.subgroups[j].first), depth + 1);
      TraceNode t;
      t.rule = "disjoint-normal-product";
      t.params["n1"] = n1.str();
      t.params["n2"] = n2.str();
      t.params["g"] = G.order().str();
      t.value = c1.value.scaled(Rat(1) / Rat(n1)) + c2.value.scaled(Rat(1) / Rat(n2));
      t.eps = c1.eps || c2.eps;
      t.children = {std::move(c1), std::move(c2)};
      cands.push_back(std::move(t));
    }

  if (all_abelian) {
    for (const auto& [N, cls] : mins.subgroups) {
      const auto& ea = std::get<ElementaryAbelian>(cls);
      const Int p(ea.p);
      const Int nn = N.order();
      if (ea.rank == 1) {
        Subgroup C = centralizer(G, N);
        if (C.order() == G.order()) {
          Int p0 = least_prime_divisor(G.order());
          TraceNode child = rec(quotient_group(G, N), depth + 1);
          TraceNode t;
          t.rule = "central-extension-quotient";
          t.params["p0"] = p0.str();
          t.params["p"] = p.str();
          t.params["g"] = G.order().str();
          t.value = RootExpr(Rat(p0) / (Rat(p0 - 1) * Rat(G.order()))) + child.value.scaled(Rat(1) / Rat(p));
          t.eps = true;
          t.children = {std::move(child)};
          cands.push_back(std::move(t));
        } else if (C.order() == p && G.order() == p * (p - 1)) {
          TraceNode t = leaf("frobenius-holomorph", RootExpr(Rat(1) / Rat(p - 1)), true);
          t.params["p"] = p.str();
          cands.push_back(std::move(t));
        } else {
          Int p0 = least_prime_divisor(C.order());
          TraceNode child = rec(quotient_group(G, N), depth + 1);
          TraceNode t;
          t.rule = "centralizer-extension";
          t.params["p0"] = p0.str();
          t.params["p"] = p.str();
          t.params["c"] = C.order().str();
          t.value = RootExpr(Rat(p0) / (Rat(p0 - 1) * Rat(C.order()))) + child.value.scaled(Rat(1) / Rat(p));
          t.eps = true;
          t.children = {std::move(child)};
          cands.push_back(std::move(t));
        }
      } else if (nn * nn >= G.order()) {
        // |N| >= sqrt(|G|): count the cyclic degree-p layer over the quotient
        TraceNode child = rec(quotient_group(G, N), depth + 1);
        Rat base = Rat(p) / (Rat(p - 1) * Rat(nn));
        RootExpr extra = child.value.scaled(Rat(1) / Rat(nn)) + RootExpr(Rat(1) / (2 * Rat(nn)) - base);
        RootExpr value = RootExpr(base) + (extra > RootExpr(0) ? extra : RootExpr(0));
        TraceNode t;
        t.rule = "abelian-socle-case2";
        t.params["p"] = p.str();
        t.params["nn"] = nn.str();
        t.value = value;
        t.eps = true;
        t.children = {std::move(child)};
        cands.push_back(std::move(t));
      } else {
        // |N| <= sqrt(|G|): hyperplane route with the small-|N| order gates
        bool gated = (nn == 4 && G.order() < 32) || (nn == 8 && G.order() < 72);
        if (!gated) {
          auto maybe = case3_node(G, N, ea, depth);
          if (maybe) cands.push_back(std::move(*maybe));
        }
        if (nn == 4 && G.order() == 24) {
          PermGroup quo = quotient_group(G, N);
          if (quo.order() == 6 && !quo.is_abelian()) {
            // quartic tower over the S3 quotient: quadratic layer converges
            TraceNode child = rec(quo, depth + 1);
            TraceNode t;
            t.rule = "s3-quadratic-tower";
            t.value = RootExpr(Rat(1, 2));
            t.eps = true;
            t.children = {std::move(child)};
            cands.push_back(std::move(t));
          }
        }
      }
    }
  } else if (mins.subgroups.size() == 1) {
    cands.push_back(nonabelian_socle(G, depth));
  }

  if (cands.empty()) throw domain_error("no certification rule applies to " + key);
  TraceNode best = cands.front();
  for (size_t i = 1; i < cands.size(); ++i) {
    int cmp = cands[i].value.compare(best.value);
    if (cmp < 0 || (cmp == 0 && cands[i].depth() < best.depth())) best = cands[i];
  }
  memo_.emplace(key, best);
  return best;
}

std::optional<TraceNode> BoundEngine::case3_node(const PermGroup& G, const Subgroup& N,
                                                 const ElementaryAbelian& ea, int depth) {
  const Int p(ea.p);
  const Int nn = N.order();
  std::vector<Perm> n_els = N.elements();
  std::sort(n_els.begin(), n_els.end());
  // coordinates of N = F_p^r over a greedy basis
  std::vector<Perm> basis;
  std::unordered_map<Perm, std::vector<int>, PermHash> coords;
  coords.emplace(Perm::identity(G.degree()), std::vector<int>{});
  for (const Perm& x : n_els) {
    if (coords.count(x)) continue;
    basis.push_back(x);
    std::unordered_map<Perm, std::vector<int>, PermHash> next = coords;
    for (const auto& [el, co] : coords) {
      Perm cur = el;
      for (int k = 1; k < ea.p; ++k) {
        cur = cur * x;
        std::vector<int> c2 = co;
        c2.resize(basis.size() - 1, 0);
        c2.push_back(k);
        next.emplace(cur, std::move(c2));
      }
    }
    coords = std::move(next);
  }
  const int r = static_cast<int>(basis.size());
  for (auto& [el, co] : coords) co.resize(r, 0);

  // choose the hyperplane W maximizing |H|
  std::vector<Perm> els = G.elements();
  std::optional<TraceNode> best;
  Int best_h = 0;
  std::vector<int> f(r, 0);
  while (true) {
    // next nonzero functional with leading coefficient 1 (projective enumeration)
    int i = r - 1;
    while (i >= 0 && f[i] == ea.p - 1) f[i--] = 0;
    if (i < 0) break;
    ++f[i];
    int lead = 0;
    while (lead < r && f[lead] == 0) ++lead;
    if (lead >= r || f[lead] != 1) continue;

    std::vector<Perm> w_els;
    for (const Perm& x : n_els) {
      const auto& co = coords.at(x);
      long dot = 0;
      for (int k = 0; k < r; ++k) dot += static_cast<long>(co[k]) * f[k];
      if (dot % ea.p == 0) w_els.push_back(x);
    }
    // normalizer of W in G by full scan
    std::set<Perm> w_set(w_els.begin(), w_els.end());
    std::vector<Perm> ng;
    for (const Perm& g : els) {
      Perm gi = g.inverse();
      bool ok = true;
      for (const Perm& w : w_els)
        if (!w_set.count(gi * w * g)) {
          ok = false;
          break;
        }
      if (ok) ng.push_back(g);
    }
    PermGroup NGW = PermGroup::from_generators(G.degree(), ng);
    Subgroup W(NGW, w_els);
    QuotientData qd = quotient_data(NGW, W);
    std::vector<Perm> n_images;
    for (const Perm& x : n_els) n_images.push_back(qd.image(x));
    Subgroup n_img(qd.Q, n_images);
    Subgroup c_img = centralizer(qd.Q, n_img);
    Int h_order = W.order() * c_img.order();
    if (h_order > best_h) {
      best_h = h_order;
      Int p0 = least_prime_divisor(c_img.order() > 1 ? c_img.order() : Int(2));
      TraceNode child = rec(quotient_group(G, N), depth + 1);
      TraceNode t;
      t.rule = "abelian-socle-case3";
      t.params["p0"] = p0.str();
      t.params["h"] = h_order.str();
      t.params["nn"] = nn.str();
      t.value = child.value.scaled(Rat(1) / Rat(nn)) + RootExpr(Rat(p0) / (Rat(p0 - 1) * Rat(h_order)));
      t.eps = true;
      t.children = {std::move(child)};
      best = std::move(t);
    }
  }
  return best;
}

TraceNode BoundEngine::no_cfsg(const PermGroup& G) {
  if (G.order() <= 2) throw domain_error("the classification-free bound needs |G| >= 3");
  const Int n = G.order();
  const Int p = least_prime_divisor(n);
  const int n2 = order2_count(G);
  std::vector<TraceNode> cands;
  {
    RootExpr v = RootExpr(1) - RootExpr(Rat(n2) / (2 * Rat(n))) - RootExpr(Rat(3) / (2 * Rat(n))) +
                 RootExpr(Rat(p) / (Rat(p - 1) * Rat(n)));
    TraceNode t = leaf("regular-invariant-degrees", v, true);
    t.params["n"] = n.str();
    t.params["n2"] = std::to_string(n2);
    t.params["p"] = p.str();
    cands.push_back(std::move(t));
  }
  if (p == 2 && n2 == 1 && n > 4) {
    TraceNode t = leaf("central-involution-quotient", RootExpr(Rat(1, 2)) + RootExpr(Rat(2) / Rat(n)), true);
    t.params["n"] = n.str();
    cands.push_back(std::move(t));
  }
  if (p == 3) {
    // odd order: solvable, so minimal normal subgroups are elementary abelian
    for (const auto& [N, cls] : minimal_normal_subgroups(G).subgroups) {
      const auto& ea = std::get<ElementaryAbelian>(cls);
      Int l(ea.p);
      TraceNode t = leaf("odd-solvable-tower", RootExpr(Rat(1) / Rat(l - 1)) + RootExpr(Rat(1) / Rat(l)), true);
      t.params["l"] = l.str();
      cands.push_back(std::move(t));
    }
  }
  if (n == 4) {
    TraceNode t = leaf("quartic-known-count", RootExpr(Rat(1, 2)), true);
    cands.push_back(std::move(t));
  }
  TraceNode best = cands.front();
  for (size_t i = 1; i < cands.size(); ++i)
    if (cands[i].value < best.value) best = cands[i];
  RootExpr ceiling = RootExpr(1) - RootExpr(Rat(1) / (4 * Rat(n)));
  if (best.value > ceiling) throw domain_error("classification-free exponent exceeded 1 - 1/(4|G|)");
  return best;
}

ExponentCertificate BoundEngine::certify(const PermGroup& G, const std::string& descriptor) {
  ExponentCertificate cert;
  cert.group = descriptor.empty() ? ("group(order=" + G.order().str() + ",degree=" + std::to_string(G.degree()) + ")")
                                  : descriptor;
  cert.mode = mode_;
  cert.d = d_;
  if (mode_ == Mode::NoCfsg) {
    cert.trace = no_cfsg(G);
  } else if (mode_ == Mode::Explicit) {
    if (G.order() == 1) {
      cert.trace = leaf("trivial-group", RootExpr(0), false);
    } else {
      TraceNode t = leaf("explicit-global-bound", RootExpr::ratio_sqrt(6, G.order()), false);
      t.params["order"] = G.order().str();
      cert.trace = t;
      cert.constant = explicit_constant(G.order(), d_);
    }
  } else {
    cert.trace = rec(G, 0);
  }
  cert.exponent = cert.trace.value;
  cert.eps_slack = cert.trace.eps;
  return cert;
}

ExponentCertificate certify(const PermGroup& G, Mode mode, int d, const std::string& descriptor) {
  BoundEngine engine(mode, d);
  return engine.certify(G, descriptor);
}

ExponentCertificate no_cfsg_exponent(const PermGroup& G, const std::string& descriptor) {
  return certify(G, Mode::NoCfsg, 1, descriptor);
}

ExponentCertificate abelian_socle_case(const PermGroup& G, const Subgroup& N, Mode mode, int d) {
  MinimalNormalReport mins = minimal_normal_subgroups(G);
  for (const auto& [M, cls] : mins.subgroups) {
    if (M.order() != N.order()) continue;
    bool same = true;
    for (const Perm& g : N.generators())
      if (!M.contains(g)) {
        same = false;
        break;
      }
    if (!same) continue;
    if (!std::holds_alternative<ElementaryAbelian>(cls))
      throw domain_error("abelian socle case applies to elementary abelian minimal normals only");
    // run the full engine; the winning candidate goes through this N or a better route
    return certify(G, mode, d);
  }
  throw domain_error("N is not a minimal normal subgroup of G");
}

// ---------------------------------------------------------------------------
// certificate re-validation
// ---------------------------------------------------------------------------

namespace {

void validate_node(const TraceNode& n, int& count) {
  ++count;
  for (const TraceNode& c : n.children) validate_node(c, count);
  auto child = [&](size_t i) -> const TraceNode& {
    if (i >= n.children.size()) throw domain_error("trace node missing child");
    return n.children[i];
  };
  const std::string& r = n.rule;
  RootExpr expect = n.value;
  if (r == "trivial-group") {
    expect = RootExpr(0);
  } else if (r == "quadratic-count") {
    expect = RootExpr(1);
  } else if (r == "abelian-field-bound") {
    Rat a = param_rat(n, "a");
    Int p = param_int(n, "p"), order = param_int(n, "order");
    if (a != Rat(p - 1) * Rat(order) / Rat(p)) throw domain_error("abelian bound: a mismatch");
    expect = RootExpr(1 / a);
  } else if (r == "disjoint-normal-product") {
    Int n1 = param_int(n, "n1"), n2 = param_int(n, "n2"), g = param_int(n, "g");
    expect = child(0).value.scaled(Rat(1) / Rat(n1)) + child(1).value.scaled(Rat(1) / Rat(n2));
    RootExpr left = RootExpr::ratio_sqrt(Rat(1) / Rat(n1), g / n1) + RootExpr::ratio_sqrt(Rat(1) / Rat(n2), g / n2);
    RootExpr right = (RootExpr::ratio_sqrt(1, n1) + RootExpr::ratio_sqrt(1, n2)).div_sqrt(g);
    if (!(left == right)) throw domain_error("disjoint-normal identity failed");
  } else if (r == "central-extension-quotient") {
    Int p0 = param_int(n, "p0"), p = param_int(n, "p"), g = param_int(n, "g");
    expect = RootExpr(Rat(p0) / (Rat(p0 - 1) * Rat(g))) + child(0).value.scaled(Rat(1) / Rat(p));
  } else if (r == "frobenius-holomorph") {
    Int p = param_int(n, "p");
    expect = RootExpr(Rat(1) / Rat(p - 1));
  } else if (r == "centralizer-extension") {
    Int p0 = param_int(n, "p0"), p = param_int(n, "p"), c = param_int(n, "c");
    expect = RootExpr(Rat(p0) / (Rat(p0 - 1) * Rat(c))) + child(0).value.scaled(Rat(1) / Rat(p));
  } else if (r == "abelian-socle-case2") {
    Int p = param_int(n, "p"), nn = param_int(n, "nn");
    Rat base = Rat(p) / (Rat(p - 1) * Rat(nn));
    RootExpr extra = child(0).value.scaled(Rat(1) / Rat(nn)) + RootExpr(Rat(1) / (2 * Rat(nn)) - base);
    expect = RootExpr(base) + (extra > RootExpr(0) ? extra : RootExpr(0));
  } else if (r == "abelian-socle-case3") {
    Int p0 = param_int(n, "p0"), h = param_int(n, "h"), nn = param_int(n, "nn");
    expect = child(0).value.scaled(Rat(1) / Rat(nn)) + RootExpr(Rat(p0) / (Rat(p0 - 1) * Rat(h)));
  } else if (r == "s3-quadratic-tower") {
    expect = RootExpr(Rat(1, 2));
  } else if (r == "schmidt-primitive") {
    Int nn = param_int(n, "n"), order = param_int(n, "order");
    expect = RootExpr(Rat(nn * (nn + 2)) / (4 * Rat(order)));
  } else if (r == "base-size-bound") {
    Int nn = param_int(n, "n"), b = param_int(n, "b"), order = param_int(n, "order");
    expect = RootExpr(Rat((b * b + 3 * b + 1) * nn) / (2 * Rat(order)));
  } else if (r == "strong-set-profile") {
    Int nn = param_int(n, "n"), order = param_int(n, "order");
    expect = RootExpr(Rat(9 * nn + 76) / (2 * Rat(order)));
  } else if (r == "global-socle-bound") {
    Int order = param_int(n, "order");
    Rat coeff = param_rat(n, "coeff");
    Int radicand = param_int(n, "radicand");
    expect = RootExpr::ratio_sqrt(coeff, radicand * order);
  } else if (r == "j3-malle-index-route") {
    expect = RootExpr(Rat(Int(863441), Int(2009318400)));
  } else if (r == "explicit-global-bound") {
    Int order = param_int(n, "order");
    expect = RootExpr::ratio_sqrt(6, order);
  } else if (r == "regular-invariant-degrees") {
    Int nn = param_int(n, "n"), p = param_int(n, "p");
    Int n2 = param_int(n, "n2");
    expect = RootExpr(1) - RootExpr(Rat(n2) / (2 * Rat(nn))) - RootExpr(Rat(3) / (2 * Rat(nn))) +
             RootExpr(Rat(p) / (Rat(p - 1) * Rat(nn)));
  } else if (r == "central-involution-quotient") {
    Int nn = param_int(n, "n");
    expect = RootExpr(Rat(1, 2)) + RootExpr(Rat(2) / Rat(nn));
  } else if (r == "odd-solvable-tower") {
    Int l = param_int(n, "l");
    expect = RootExpr(Rat(1) / Rat(l - 1)) + RootExpr(Rat(1) / Rat(l));
  } else if (r == "quartic-known-count") {
    expect = RootExpr(Rat(1, 2));
  } else if (r.rfind("family-", 0) == 0 || r == "socle-power-wreath") {
    return;  // family nodes are validated against the closed forms by the table tests
  } else {
    throw domain_error("unknown trace rule: " + r);
  }
  if (!(expect == n.value)) throw domain_error("trace node failed re-validation: " + r);
}

} // namespace

int validate_certificate(const ExponentCertificate& cert) {
  if (!(cert.exponent == cert.trace.value)) throw domain_error("certificate exponent differs from trace root");
  int count = 0;
  validate_node(cert.trace, count);
  return count;
}

} // namespace galcount
