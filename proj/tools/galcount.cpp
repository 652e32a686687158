#include <iostream>

#include "CLI11.hpp"

#include "galcount/base_bounds.hpp"
#include "galcount/bound_engine.hpp"
#include "galcount/field_count.hpp"
#include "galcount/invariants.hpp"
#include "galcount/verify.hpp"

#include "json.hpp"

using namespace galcount;
using nlohmann::json;

namespace {

PermGroup resolve_group(const std::string& target) {
  if (is_known_group_name(target)) return named_group(target);
  return load_group_file(target);
}

int run(int argc, char** argv) {
  CLI::App app{"galcount: certified discriminant-count exponents, permutation invariants, and exact field counts"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format: text or record")->check(CLI::IsMember({"text", "record"}));
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker cap for internally parallel steps");

  // bound
  auto* bound = app.add_subcommand("bound", "certify a discriminant-count exponent for a finite group");
  std::string bound_target, bound_mode = "uniform";
  int bound_d = 1;
  bound->add_option("group", bound_target, "group name or input file")->required();
  bound->add_option("--mode", bound_mode, "uniform | optimal | explicit | no-cfsg");
  bound->add_option("--d", bound_d, "base field degree (explicit mode)");

  // invariants
  auto* inv = app.add_subcommand("invariants", "regular invariant set with independence status");
  std::string inv_target;
  int inv_trials = 4;
  uint64_t inv_seed = 0x5EED;
  inv->add_option("group", inv_target)->required();
  inv->add_option("--trials", inv_trials);
  inv->add_option("--seed", inv_seed);

  // base
  auto* base = app.add_subcommand("base", "greedy pointwise base, or a strong (b+1)-set search");
  std::string base_target;
  int strong_b = 0;
  long budget = 100000;
  uint64_t base_seed = 1;
  base->add_option("group", base_target)->required();
  base->add_option("--strong", strong_b, "search for a strong (b+1)-set with this b");
  base->add_option("--budget", budget);
  base->add_option("--seed", base_seed);

  // stabprob
  auto* stab = app.add_subcommand("stabprob", "exact stabilizer probability bounds from a class data file");
  std::string stab_file;
  stab->add_option("classfile", stab_file)->required();

  // count
  auto* count = app.add_subcommand("count", "exact field counts over Q");
  std::string count_kind;
  long long count_x = 0;
  int degree_cap = 8;
  count->add_option("kind", count_kind, "quadratic | abelian | galois")->required();
  count->add_option("--X", count_x, "discriminant bound")->required();
  count->add_option("--degree-cap", degree_cap);

  // tail
  auto* tail = app.add_subcommand("tail", "aggregate bound on the large-order group contribution");
  double tail_x = 0, tail_logx = 0, tail_C = 30.0;
  int tail_d = 1;
  tail->add_option("--X", tail_x);
  tail->add_option("--logX", tail_logx, "natural log of X, for very large thresholds");
  tail->add_option("--d", tail_d);
  tail->add_option("--C", tail_C, "additive constant in the degree cutoff");

  // verify
  app.add_subcommand("verify", "run the acceptance suite; nonzero exit on any failure");

  app.parse(argc, argv);
  const bool record = format == "record";

  if (bound->parsed()) {
    ExponentCertificate cert = certify(resolve_group(bound_target), parse_mode(bound_mode), bound_d, bound_target);
    validate_certificate(cert);
    if (record) {
      std::cout << cert.to_json() << "\n";
    } else {
      std::cout << "group: " << cert.group << "\nmode: " << mode_name(cert.mode) << "\nexponent: "
                << cert.exponent.str() << (cert.eps_slack ? " (+eps)" : "") << "  ~ " << cert.exponent.to_double()
                << "\n";
      if (cert.constant) std::cout << "constant: " << cert.constant->str() << "\n";
      std::function<void(const TraceNode&, int)> dump = [&](const TraceNode& n, int indent) {
        std::cout << std::string(indent, ' ') << "- " << n.rule << " -> " << n.value.str()
                  << (n.eps ? " (+eps)" : "") << "\n";
        for (const TraceNode& ch : n.children) dump(ch, indent + 2);
      };
      dump(cert.trace, 0);
    }
    return 0;
  }
  if (inv->parsed()) {
    PermGroup G0 = resolve_group(inv_target);
    PermGroup G = Int(G0.degree()) == G0.order() && G0.is_transitive() ? G0 : G0.regular_representation();
    InvariantSet S = regular_invariant_set(G);
    jacobian_independence(S, inv_trials, inv_seed);
    if (record) {
      json j{{"group", inv_target},
             {"degree", G.degree()},
             {"profile", S.degree_profile},
             {"status", S.status == IndependenceStatus::VerifiedRandomized
                            ? "verified-randomized"
                            : (S.status == IndependenceStatus::Failed ? "failed" : "unverified")},
             {"failure_bound", S.failure_bound.convert_to<double>()}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << S.to_text();
      std::cout << "independence: "
                << (S.status == IndependenceStatus::VerifiedRandomized ? "verified (randomized)"
                    : S.status == IndependenceStatus::Failed           ? "FAILED"
                                                                       : "unverified")
                << ", failure bound " << S.failure_bound.convert_to<double>() << "\n";
    }
    return S.status == IndependenceStatus::Failed ? 4 : 0;
  }
  if (base->parsed()) {
    PermGroup G = resolve_group(base_target);
    if (strong_b > 0) {
      auto cert = strong_set_search(G, strong_b, budget, base_seed);
      if (!cert) {
        std::cout << (record ? "{\"found\": false}" : "no strong set found within budget") << "\n";
        return 0;
      }
      if (!validate_strong_set(G, *cert)) throw domain_error("strong set failed re-validation");
      if (record) {
        json j{{"found", true}, {"b", cert->b}, {"points", cert->points}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "strong (b+1)-set, b = " << cert->b << ": {";
        for (size_t i = 0; i < cert->points.size(); ++i) std::cout << (i ? ", " : "") << cert->points[i];
        std::cout << "}\n";
      }
      return 0;
    }
    BaseCertificate cert = greedy_base(G);
    if (record) {
      json j{{"kind", "pointwise"}, {"points", cert.points}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "pointwise base of size " << cert.points.size() << ": {";
      for (size_t i = 0; i < cert.points.size(); ++i) std::cout << (i ? ", " : "") << cert.points[i];
      std::cout << "}\n";
    }
    return 0;
  }
  if (stab->parsed()) {
    StabProbBound b = stab_prob_bounds(load_class_data(stab_file));
    if (record) {
      std::ostringstream t3, t4, tu;
      t3 << b.triple_bound;
      t4 << b.quadruple_bound;
      tu << b.union_bound_4choose3;
      json j{{"degree", b.degree}, {"triple", t3.str()}, {"quadruple", t4.str()}, {"union_4choose3", tu.str()}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "degree " << b.degree << "\ntriple bound     = " << b.triple_bound << " ~ "
                << b.triple_bound.convert_to<double>() << "\nquadruple bound  = " << b.quadruple_bound << " ~ "
                << b.quadruple_bound.convert_to<double>() << "\nunion (4-choose-3) = "
                << b.union_bound_4choose3.convert_to<double>() << "\n";
    }
    return 0;
  }
  if (count->parsed()) {
    if (count_kind == "quadratic") {
      CountReport rep = quadratic_density_report(count_x);
      std::cout << (record ? rep.to_json() : rep.to_text()) << "\n";
    } else if (count_kind == "abelian") {
      auto recs = abelian_fields_up_to(count_x, degree_cap);
      if (record) {
        for (const auto& r : recs) std::cout << r.to_csv() << "\n";
      } else {
        std::map<std::string, long long> by_type;
        for (const auto& r : recs) ++by_type[r.type_name()];
        std::cout << recs.size() << " abelian fields with |disc| <= " << count_x << ", degree <= " << degree_cap
                  << "\n";
        for (const auto& [t, n] : by_type) std::cout << "  " << t << ": " << n << "\n";
      }
    } else if (count_kind == "galois") {
      CountReport rep = galois_count_Q(count_x);
      std::cout << (record ? rep.to_json() : rep.to_text()) << "\n";
    } else {
      throw input_error("count kind must be quadratic, abelian, or galois");
    }
    return 0;
  }
  if (tail->parsed()) {
    Real logx = tail_logx > 0 ? Real(tail_logx) : log(Real(tail_x));
    TailReport rep = tail_bound_from_log(logx, tail_d, tail_C);
    if (record) {
      std::cout << rep.to_json() << "\n";
    } else {
      std::cout << "degree cutoff: " << rep.cutoff << "\n";
      if (rep.zero_tail)
        std::cout << "tail is empty: no group orders in [5184, cutoff]\n";
      else
        std::cout << "orders covered: " << rep.term_count << "\nlog bound (natural): "
                  << rep.log_total.convert_to<double>() << "\nlargest single term (log): "
                  << rep.log_max_term.convert_to<double>() << "\n";
    }
    return 0;
  }
  // verify
  auto results = run_acceptance_suite(std::cout);
  for (const auto& r : results)
    if (!r.passed) return 4;
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError& e) {
    return CLI::App().exit(e);
  } catch (const input_error& e) {
    std::cerr << "error: input: " << e.what() << "\n";
    return input_error::exit_code;
  } catch (const domain_error& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return domain_error::exit_code;
  } catch (const resource_error& e) {
    std::cerr << "error: resource-cap: " << e.what() << "\n";
    return resource_error::exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 4;
  }
}
