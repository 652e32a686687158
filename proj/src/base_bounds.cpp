#include "galcount/base_bounds.hpp"

#include <algorithm>
#include <numeric>
#include <fstream>
#include <random>
#include <sstream>

namespace galcount {

BaseCertificate greedy_base(const PermGroup& G) {
  if (G.is_trivial()) throw domain_error("greedy base of the trivial group");
  BaseCertificate cert;
  cert.kind = BaseCertificate::Kind::PointwiseBase;
  PermGroup stab = G;
  while (!stab.is_trivial()) {
    auto orbs = stab.orbits();
    size_t best = 0;
    int pick = 0;
    for (const auto& orb : orbs)
      if (orb.size() > best) {
        best = orb.size();
        pick = orb.front();  // orbits are sorted: smallest point of the largest orbit
      }
    cert.points.push_back(pick);
    stab = G.stabilizer_of_points(cert.points);
  }
  return cert;
}

namespace {

bool is_prime_int(long v) {
  if (v < 2) return false;
  for (long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

} // namespace

Int set_invariant_tuple_count(const Perm& g, int k) {
  if (k != 3 && k != 4) throw domain_error("tuple count supports k = 3 or 4");
  const int o = g.order();
  if (!is_prime_int(o)) throw domain_error("tuple count requires an element of prime order");
  Int F(g.fixed_points()), n(g.degree());
  if (k == 3) {
    if (o == 2) return F * F * F + 3 * (F + 1) * (n - F);
    if (o == 3) return F * F * F + 2 * (n - F);
    return F * F * F;
  }
  // k = 4; the prime-order cycle structure gives closed forms per case
  if (o == 2) return F * F * F * F + 3 * (n - F) * (n - F) + (6 * F * F + 12 * F + 1) * (n - F);
  if (o == 3) return F * F * F * F + (8 * F + 12) * (n - F);
  return F * F * F * F;
}

Int class_tuple_bound(int element_order, long fix, long degree, int k) {
  if (k != 3 && k != 4) throw domain_error("tuple bound supports k = 3 or 4");
  Int F(fix), n(degree);
  if (k == 3) {
    if (element_order == 2) return F * F * F + 3 * (F + 1) * (n - F);
    if (element_order == 3) return F * F * F + 2 * (n - F);
    return F * F * F;
  }
  if (element_order == 2) return F * F * F * F + 3 * (n - F) * (n - F) + (12 * F * F + 12 * F + 1) * (n - F);
  if (element_order == 3) return F * F * F * F + (8 * F + 12) * (n - F);
  return F * F * F * F;
}

ClassDataFile parse_class_data(const std::string& text) {
  ClassDataFile out;
  std::istringstream is(text);
  std::string line;
  bool have_degree = false;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (!have_degree) {
      long n;
      if (kw != "degree" || !(ls >> n) || n <= 0) throw input_error("class data must start with 'degree <n>'");
      out.degree = n;
      have_degree = true;
      continue;
    }
    ClassDataEntry e;
    std::string key = kw, val;
    while (true) {
      if (key == "name") {
        if (!(ls >> e.name)) throw input_error("class data: missing value for 'name'");
      } else if (key == "order") {
        if (!(ls >> e.element_order)) throw input_error("class data: bad 'order'");
      } else if (key == "size") {
        if (!(ls >> val)) throw input_error("class data: bad 'size'");
        e.size = Int(val);
      } else if (key == "fix") {
        if (!(ls >> e.fix)) throw input_error("class data: bad 'fix'");
      } else {
        throw input_error("class data: unknown key '" + key + "'");
      }
      if (!(ls >> key)) break;
    }
    if (e.element_order < 1 || e.size < 1) throw input_error("class data: order and size must be positive");
    if (e.fix < 0 || e.fix > out.degree) throw input_error("class data: fix count out of range [0, degree]");
    out.classes.push_back(std::move(e));
  }
  if (!have_degree) throw input_error("class data must start with 'degree <n>'");
  return out;
}

ClassDataFile load_class_data(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open class data file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_class_data(buf.str());
}

StabProbBound stab_prob_bounds(const ClassDataFile& data) {
  StabProbBound out;
  out.degree = data.degree;
  Int n(data.degree);
  Int n3 = n * n * n, n4 = n3 * n;
  Int t3 = 0, t4 = 0;
  for (const ClassDataEntry& e : data.classes) {
    if (!is_prime_int(e.element_order)) continue;
    t3 += e.size * class_tuple_bound(e.element_order, e.fix, data.degree, 3);
    t4 += e.size * class_tuple_bound(e.element_order, e.fix, data.degree, 4);
  }
  out.triple_bound = Rat(t3) / Rat(n3);
  out.quadruple_bound = Rat(t4) / Rat(n4);
  out.union_bound_4choose3 = out.quadruple_bound + 4 * out.triple_bound;
  return out;
}

StabProbBound stab_prob_bounds(const PermGroup& G, size_t cap) {
  ClassDataFile data;
  data.degree = G.degree();
  Int total = 0;
  for (const ClassSummary& cs : G.conjugacy_classes(cap)) {
    total += cs.class_size;
    ClassDataEntry e;
    e.name = "-";
    e.element_order = cs.element_order;
    e.size = cs.class_size;
    e.fix = cs.fix_count;
    data.classes.push_back(std::move(e));
  }
  if (total != G.order()) throw input_error("class sizes do not sum to the group order");
  return stab_prob_bounds(data);
}

namespace {

bool strong_set_ok(const std::vector<Perm>& elements, const std::vector<int>& sigma, int degree) {
  std::vector<char> in_set(degree + 1, 0);
  auto trivial_on = [&](const std::vector<int>& pts) {
    std::fill(in_set.begin(), in_set.end(), 0);
    for (int p : pts) in_set[p] = 1;
    for (const Perm& g : elements) {
      if (g.is_identity()) continue;
      bool stab = true;
      for (int p : pts)
        if (!in_set[g.apply(p)]) {
          stab = false;
          break;
        }
      if (stab) return false;
    }
    return true;
  };
  if (!trivial_on(sigma)) return false;
  for (size_t skip = 0; skip < sigma.size(); ++skip) {
    std::vector<int> sub;
    for (size_t i = 0; i < sigma.size(); ++i)
      if (i != skip) sub.push_back(sigma[i]);
    if (!trivial_on(sub)) return false;
  }
  return true;
}

} // namespace

std::optional<BaseCertificate> strong_set_search(const PermGroup& G, int b, long budget, uint64_t seed,
                                                 size_t cap) {
  if (b < 1) throw domain_error("strong set search requires b >= 1");
  const int n = G.degree();
  const int k = b + 1;
  if (k > n) return std::nullopt;
  std::vector<Perm> els = G.elements(cap);
  long tested = 0;

  std::mt19937_64 rng(seed);
  std::vector<int> points(n);
  std::iota(points.begin(), points.end(), 1);
  while (tested < budget / 2) {
    std::shuffle(points.begin(), points.end(), rng);
    std::vector<int> sigma(points.begin(), points.begin() + k);
    std::sort(sigma.begin(), sigma.end());
    ++tested;
    if (strong_set_ok(els, sigma, n)) {
      BaseCertificate cert;
      cert.kind = BaseCertificate::Kind::StrongSet;
      cert.points = sigma;
      cert.b = b;
      return cert;
    }
  }
  if (n <= 50) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 1);
    while (tested < budget) {
      ++tested;
      if (strong_set_ok(els, idx, n)) {
        BaseCertificate cert;
        cert.kind = BaseCertificate::Kind::StrongSet;
        cert.points = idx;
        cert.b = b;
        return cert;
      }
      // next lexicographic k-combination of {1..n}
      int i = k - 1;
      while (i >= 0 && idx[i] == n - (k - 1 - i)) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

bool validate_strong_set(const PermGroup& G, const BaseCertificate& cert, size_t cap) {
  if (cert.kind != BaseCertificate::Kind::StrongSet) return false;
  if (static_cast<int>(cert.points.size()) != cert.b + 1) return false;
  if (!G.set_stabilizer_is_trivial(cert.points, cap)) return false;
  for (size_t skip = 0; skip < cert.points.size(); ++skip) {
    std::vector<int> sub;
    for (size_t i = 0; i < cert.points.size(); ++i)
      if (i != skip) sub.push_back(cert.points[i]);
    if (!G.set_stabilizer_is_trivial(sub, cap)) return false;
  }
  return true;
}

BaseExponent base_to_exponent(long n, int b, const Int& group_order, long gamma) {
  if (n <= 0 || b <= 0 || group_order <= 0 || gamma <= 0)
    throw domain_error("base exponent requires positive inputs");
  Int coef = Int(b) * b + 3 * b + 1;
  BaseExponent out{RootExpr::ratio_sqrt(Rat(coef * n * gamma) / 2, group_order),
                   Rat(Int(b + 1) * (b + 2)) / 2};
  return out;
}

} // namespace galcount
