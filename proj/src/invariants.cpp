#include "galcount/invariants.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace galcount {

void SparsePoly::add_term(const Monomial& m, const Int& c) {
  auto it = terms.find(m);
  if (it == terms.end()) {
    if (c != 0) terms.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms.erase(it);
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  SparsePoly out = *this;
  for (const auto& [m, c] : o.terms) out.add_term(m, c);
  return out;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  SparsePoly out = zero(nvars);
  for (const auto& [m1, c1] : terms)
    for (const auto& [m2, c2] : o.terms) {
      Monomial m(nvars);
      for (int i = 0; i < nvars; ++i) m[i] = m1[i] + m2[i];
      out.add_term(m, c1 * c2);
    }
  return out;
}

SparsePoly SparsePoly::scaled(const Int& c) const {
  SparsePoly out = zero(nvars);
  if (c != 0)
    for (const auto& [m, k] : terms) out.terms.emplace(m, k * c);
  return out;
}

SparsePoly OrbitSumInvariant::to_poly() const {
  SparsePoly p = SparsePoly::zero(static_cast<int>(seed.size()));
  for (const Monomial& m : orbit) p.terms.emplace(m, 1);
  return p;
}

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

bool miller_rabin(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  uint64_t d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

uint64_t random_prime_above_2_31(std::mt19937_64& rng) {
  std::uniform_int_distribution<uint64_t> dist(1ull << 31, (1ull << 32) - 1);
  while (true) {
    uint64_t c = dist(rng) | 1;
    if (miller_rabin(c)) return c;
  }
}

Monomial apply_perm_to_monomial(const Perm& g, const Monomial& m) {
  Monomial out(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) out[g.apply(static_cast<int>(i) + 1) - 1] = m[i];
  return out;
}

} // namespace

uint64_t OrbitSumInvariant::eval_mod(const std::vector<uint64_t>& x, uint64_t p) const {
  uint64_t acc = 0;
  for (const Monomial& m : orbit) {
    uint64_t t = 1;
    for (size_t i = 0; i < m.size(); ++i)
      for (int k = 0; k < m[i]; ++k) t = mulmod(t, x[i], p);
    acc = (acc + t) % p;
  }
  return acc;
}

uint64_t OrbitSumInvariant::partial_eval_mod(int var, const std::vector<uint64_t>& x, uint64_t p) const {
  uint64_t acc = 0;
  for (const Monomial& m : orbit) {
    if (m[var] == 0) continue;
    uint64_t t = static_cast<uint64_t>(m[var]) % p;
    for (size_t i = 0; i < m.size(); ++i) {
      int e = m[i] - (static_cast<int>(i) == var ? 1 : 0);
      for (int k = 0; k < e; ++k) t = mulmod(t, x[i], p);
    }
    acc = (acc + t) % p;
  }
  return acc;
}

OrbitSumInvariant orbit_sum(const PermGroup& G, const Monomial& seed, size_t cap) {
  (void)cap;
  if (static_cast<int>(seed.size()) != G.degree()) throw input_error("monomial length must equal the degree");
  int deg = 0;
  for (int e : seed) {
    if (e < 0) throw domain_error("negative exponent in monomial");
    deg += e;
  }
  if (deg == 0) throw domain_error("orbit sum of the zero-degree monomial");
  std::set<Monomial> seen{seed};
  std::vector<Monomial> todo{seed};
  while (!todo.empty()) {
    Monomial cur = todo.back();
    todo.pop_back();
    for (const Perm& g : G.generators()) {
      Monomial img = apply_perm_to_monomial(g, cur);
      if (seen.insert(img).second) todo.push_back(img);
    }
  }
  OrbitSumInvariant inv;
  inv.seed = seed;
  inv.degree = deg;
  inv.orbit.assign(seen.begin(), seen.end());
  return inv;
}

InvariantSet regular_invariant_set(const PermGroup& G, size_t cap) {
  const int n = G.degree();
  if (Int(n) != G.order() || !G.is_transitive())
    throw domain_error("regular invariant construction requires the regular representation");
  std::vector<Perm> els = G.elements(cap);
  // g_i = the unique element with g_i(i) = 1; pair i with j_i = g_i(1)
  std::vector<int> pair_of(n + 1, 0);
  for (const Perm& g : els) {
    int i = g.inverse().apply(1);
    pair_of[i] = g.apply(1);
  }

  InvariantSet S;
  Monomial m1(n, 0);
  m1[0] = 1;
  S.invariants.push_back(orbit_sum(G, m1, cap));
  for (int i = 2; i <= n; ++i) {
    if (pair_of[i] < i && pair_of[i] != i) continue;  // one quadratic per pair {i, j_i}
    Monomial m(n, 0);
    m[0] = 1;
    m[i - 1] += 1;
    S.invariants.push_back(orbit_sum(G, m, cap));
  }
  for (int i = 2; i <= n; ++i) {
    if (pair_of[i] == i || pair_of[i] < i) continue;  // one cubic per order>2 pair
    Monomial m(n, 0);
    m[0] = 2;
    m[i - 1] += 1;
    S.invariants.push_back(orbit_sum(G, m, cap));
  }
  for (const OrbitSumInvariant& f : S.invariants) S.degree_profile.push_back(f.degree);
  std::sort(S.degree_profile.begin(), S.degree_profile.end());
  if (static_cast<int>(S.invariants.size()) != n)
    throw domain_error("internal: regular construction produced the wrong number of invariants");
  return S;
}

IndependenceStatus jacobian_independence(const std::vector<OrbitSumInvariant>& polys, int nvars, int trials,
                                         uint64_t seed, Rat* failure_bound) {
  const int n = static_cast<int>(polys.size());
  if (n != nvars || n == 0) throw domain_error("jacobian test needs as many invariants as variables");
  if (n > 256) return IndependenceStatus::Unverified;  // determinant cost cap
  long degsum = 0;
  for (const auto& f : polys) degsum += f.degree - 1;

  std::mt19937_64 rng(seed);
  Rat bound = 1;
  for (int t = 0; t < trials; ++t) {
    uint64_t p = random_prime_above_2_31(rng);
    if (Rat(degsum) * 2 >= Rat(Int(p))) throw domain_error("field too small for the degree sum");
    bound *= Rat(degsum) / Rat(Int(p));
    std::uniform_int_distribution<uint64_t> dist(0, p - 1);
    std::vector<uint64_t> x(n);
    for (auto& v : x) v = dist(rng);
    // Jacobian matrix mod p
    std::vector<std::vector<uint64_t>> J(n, std::vector<uint64_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) J[i][j] = polys[i].partial_eval_mod(j, x, p);
    // determinant by Gaussian elimination mod p
    uint64_t det = 1;
    bool zero = false;
    for (int c = 0; c < n && !zero; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (J[r][c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) {
        zero = true;
        break;
      }
      if (piv != c) {
        std::swap(J[piv], J[c]);
        det = p - det;
      }
      det = mulmod(det, J[c][c], p);
      uint64_t inv = powmod(J[c][c], p - 2, p);
      for (int r = c + 1; r < n; ++r) {
        if (J[r][c] == 0) continue;
        uint64_t f = mulmod(J[r][c], inv, p);
        for (int k = c; k < n; ++k) J[r][k] = (J[r][k] + p - mulmod(f, J[c][k], p)) % p;
      }
    }
    if (!zero && det % p != 0) {
      if (failure_bound) *failure_bound = bound;
      return IndependenceStatus::VerifiedRandomized;
    }
  }
  if (failure_bound) *failure_bound = bound;
  return IndependenceStatus::Failed;
}

IndependenceStatus jacobian_independence(InvariantSet& S, int trials, uint64_t seed) {
  int nvars = S.invariants.empty() ? 0 : static_cast<int>(S.invariants.front().seed.size());
  S.status = jacobian_independence(S.invariants, nvars, trials, seed, &S.failure_bound);
  return S.status;
}

IndependenceStatus jacobian_independence(const std::vector<SparsePoly>& polys, int trials, uint64_t seed,
                                         Rat* failure_bound) {
  const int n = static_cast<int>(polys.size());
  if (n == 0 || polys.front().nvars != n)
    throw domain_error("jacobian test needs as many polynomials as variables");
  long degsum = 0;
  for (const SparsePoly& f : polys) {
    int deg = 0;
    for (const auto& [m, c] : f.terms) {
      int d = 0;
      for (int e : m) d += e;
      deg = std::max(deg, d);
    }
    degsum += std::max(deg - 1, 0);
  }
  degsum = std::max<long>(degsum, 1);

  std::mt19937_64 rng(seed);
  Rat bound = 1;
  for (int t = 0; t < trials; ++t) {
    uint64_t p = random_prime_above_2_31(rng);
    bound *= Rat(degsum) / Rat(Int(p));
    std::uniform_int_distribution<uint64_t> dist(0, p - 1);
    std::vector<uint64_t> x(n);
    for (auto& v : x) v = dist(rng);
    auto partial = [&](const SparsePoly& f, int var) {
      uint64_t acc = 0;
      for (const auto& [m, coef] : f.terms) {
        if (m[var] == 0) continue;
        Int cmod = ((coef * m[var]) % Int(p) + Int(p)) % Int(p);
        uint64_t term = static_cast<uint64_t>(cmod);
        for (int i = 0; i < n; ++i) {
          int e = m[i] - (i == var ? 1 : 0);
          for (int k = 0; k < e; ++k) term = mulmod(term, x[i], p);
        }
        acc = (acc + term) % p;
      }
      return acc;
    };
    std::vector<std::vector<uint64_t>> J(n, std::vector<uint64_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) J[i][j] = partial(polys[i], j);
    bool zero = false;
    for (int c = 0; c < n && !zero; ++c) {
      int piv = -1;
      for (int r = c; r < n; ++r)
        if (J[r][c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) {
        zero = true;
        break;
      }
      if (piv != c) std::swap(J[piv], J[c]);
      uint64_t inv = powmod(J[c][c], p - 2, p);
      for (int r = c + 1; r < n; ++r) {
        if (J[r][c] == 0) continue;
        uint64_t f = mulmod(J[r][c], inv, p);
        for (int k = c; k < n; ++k) J[r][k] = (J[r][k] + p - mulmod(f, J[c][k], p)) % p;
      }
    }
    if (!zero) {
      if (failure_bound) *failure_bound = bound;
      return IndependenceStatus::VerifiedRandomized;
    }
  }
  if (failure_bound) *failure_bound = bound;
  return IndependenceStatus::Failed;
}

long degree2_orbit_count(const PermGroup& G, size_t cap) {
  const int n = G.degree();
  if (Int(n) != G.order() || !G.is_transitive())
    throw domain_error("degree-2 orbit count requires the regular representation");
  (void)cap;
  // union-find over monomials x_i x_j, i <= j
  auto id = [n](int i, int j) { return i * n + j; };  // i <= j, 0-based
  std::vector<int> rep(n * n, -1);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) rep[id(i, j)] = id(i, j);
  std::function<int(int)> find = [&](int x) {
    while (rep[x] != x) {
      rep[x] = rep[rep[x]];
      x = rep[x];
    }
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (const Perm& g : G.generators()) {
        int gi = g.apply(i + 1) - 1, gj = g.apply(j + 1) - 1;
        int a = find(id(i, j));
        int b = find(id(std::min(gi, gj), std::max(gi, gj)));
        if (a != b) rep[std::max(a, b)] = std::min(a, b);
      }
  std::set<int> classes;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) classes.insert(find(id(i, j)));
  return static_cast<long>(classes.size());
}

std::pair<RootExpr, Rat> a_and_w_from_degrees(const std::vector<int>& profile, const Int& group_order) {
  if (profile.empty()) throw domain_error("empty degree profile");
  if (group_order < 1) throw domain_error("group order must be positive");
  Int degsum = 0;
  for (int d : profile) degsum += d;
  Rat numer = Rat(degsum) - Rat(profile.size()) / 2;
  return {RootExpr::ratio_sqrt(numer, group_order), Rat(degsum) / Rat(Int(profile.size()))};
}

long degree_le2_span_rank(const PermGroup& G, size_t cap) {
  const int n = G.degree();
  (void)cap;
  // rows: orbit sums of all degree-1 and degree-2 monomials; columns: monomials
  std::set<Monomial> row_seen;
  std::vector<std::vector<std::pair<Monomial, Int>>> rows;
  auto add_orbit_row = [&](const Monomial& seed) {
    OrbitSumInvariant inv = orbit_sum(G, seed);
    Monomial canon = *std::min_element(inv.orbit.begin(), inv.orbit.end());
    if (!row_seen.insert(canon).second) return;
    std::vector<std::pair<Monomial, Int>> row;
    for (const Monomial& m : inv.orbit) row.emplace_back(m, Int(1));
    rows.push_back(std::move(row));
  };
  for (int i = 0; i < n; ++i) {
    Monomial m(n, 0);
    m[i] = 1;
    add_orbit_row(m);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Monomial m(n, 0);
      m[i] += 1;
      m[j] += 1;
      add_orbit_row(m);
    }
  // exact rank by elimination over the rationals
  std::map<Monomial, int> col_of;
  for (const auto& row : rows)
    for (const auto& [m, c] : row)
      col_of.emplace(m, 0);
  int ncols = 0;
  for (auto& [m, idx] : col_of) idx = ncols++;
  std::vector<std::vector<Rat>> M;
  for (const auto& row : rows) {
    std::vector<Rat> r(ncols, Rat(0));
    for (const auto& [m, c] : row) r[col_of[m]] = Rat(c);
    M.push_back(std::move(r));
  }
  long rank = 0;
  size_t rpos = 0;
  for (int c = 0; c < ncols && rpos < M.size(); ++c) {
    size_t piv = rpos;
    while (piv < M.size() && M[piv][c] == 0) ++piv;
    if (piv == M.size()) continue;
    std::swap(M[piv], M[rpos]);
    for (size_t r = rpos + 1; r < M.size(); ++r) {
      if (M[r][c] == 0) continue;
      Rat f = M[r][c] / M[rpos][c];
      for (int k = c; k < ncols; ++k) M[r][k] -= f * M[rpos][k];
    }
    ++rank;
    ++rpos;
  }
  return rank;
}

std::string InvariantSet::to_text() const {
  std::ostringstream os;
  for (const OrbitSumInvariant& f : invariants) {
    os << "deg=" << f.degree << " seed=";
    for (size_t i = 0; i < f.seed.size(); ++i) os << (i ? " " : "") << f.seed[i];
    os << " orbit=" << f.orbit.size() << "\n";
  }
  return os.str();
}

} // namespace galcount
