#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "galcount/perm_group.hpp"

#include "group_library_data.inc"

namespace galcount {

namespace {

Perm cycle_perm(int degree, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 1);
  for (const auto& c : cycles)
    for (size_t i = 0; i < c.size(); ++i) img[c[i] - 1] = c[(i + 1) % c.size()];
  return Perm(std::move(img));
}

Perm shift_cycle(int degree, int len, int offset = 0) {
  std::vector<int> c(len);
  std::iota(c.begin(), c.end(), offset + 1);
  return cycle_perm(degree, {c});
}

std::vector<long> parse_name_args(const std::string& name, const std::string& prefix, size_t count) {
  std::vector<long> args;
  std::string rest = name.substr(prefix.size());
  std::istringstream is(rest);
  std::string tok;
  while (std::getline(is, tok, ':'))
    if (!tok.empty()) args.push_back(std::stol(tok));
  if (args.size() != count) throw input_error("malformed group name: " + name);
  return args;
}

std::optional<PermGroup> family_group(const std::string& name) {
  if (name.rfind("cyclic:", 0) == 0) {
    long n = parse_name_args(name, "cyclic:", 1)[0];
    if (n < 1) throw input_error("cyclic:n requires n >= 1");
    if (n == 1) return PermGroup::from_generators(1, {Perm::identity(1)});
    return PermGroup::from_generators(static_cast<int>(n), {shift_cycle(static_cast<int>(n), static_cast<int>(n))});
  }
  if (name.rfind("dihedral:", 0) == 0) {
    long n = parse_name_args(name, "dihedral:", 1)[0];
    if (n < 3) throw input_error("dihedral:n requires n >= 3 (group of order 2n)");
    std::vector<std::vector<int>> refl;
    for (int i = 1; i <= (static_cast<int>(n) - 1) / 2; ++i) refl.push_back({1 + i, static_cast<int>(n) + 1 - i});
    return PermGroup::from_generators(static_cast<int>(n),
                                      {shift_cycle(static_cast<int>(n), static_cast<int>(n)),
                                       cycle_perm(static_cast<int>(n), refl)});
  }
  if (name.rfind("symmetric:", 0) == 0) {
    long n = parse_name_args(name, "symmetric:", 1)[0];
    if (n < 1) throw input_error("symmetric:n requires n >= 1");
    if (n == 1) return PermGroup::from_generators(1, {Perm::identity(1)});
    std::vector<Perm> gens{cycle_perm(static_cast<int>(n), {{1, 2}})};
    if (n > 2) gens.push_back(shift_cycle(static_cast<int>(n), static_cast<int>(n)));
    return PermGroup::from_generators(static_cast<int>(n), std::move(gens));
  }
  if (name.rfind("alternating:", 0) == 0) {
    long n = parse_name_args(name, "alternating:", 1)[0];
    if (n < 3) throw input_error("alternating:n requires n >= 3");
    std::vector<Perm> gens{cycle_perm(static_cast<int>(n), {{1, 2, 3}})};
    if (n > 3) {
      if (n % 2 == 1)
        gens.push_back(shift_cycle(static_cast<int>(n), static_cast<int>(n)));
      else {
        std::vector<int> c(static_cast<size_t>(n) - 1);
        std::iota(c.begin(), c.end(), 2);
        gens.push_back(cycle_perm(static_cast<int>(n), {c}));
      }
    }
    return PermGroup::from_generators(static_cast<int>(n), std::move(gens));
  }
  if (name.rfind("dicyclic:", 0) == 0) {
    // order 4n: <a,b | a^{2n}=1, b^2=a^n, bab^-1=a^-1>, regular on 4n points
    long n = parse_name_args(name, "dicyclic:", 1)[0];
    if (n < 2) throw input_error("dicyclic:n requires n >= 2");
    const int N = static_cast<int>(n);
    const int deg = 4 * N;
    auto idx = [N](int i, int j) { return j * 2 * N + ((i % (2 * N)) + 2 * N) % (2 * N) + 1; };
    std::vector<int> a(deg), b(deg);
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2 * N; ++i) {
        // right translation by a=(1,0) and b=(0,1) on elements a^i b^j
        a[idx(i, j) - 1] = j == 0 ? idx(i + 1, 0) : idx(i - 1, 1);
        b[idx(i, j) - 1] = j == 0 ? idx(i, 1) : idx(i + N, 0);
      }
    return PermGroup::from_generators(deg, {Perm(std::move(a)), Perm(std::move(b))});
  }
  if (name.rfind("elementary:", 0) == 0) {
    auto args = parse_name_args(name, "elementary:", 2);
    long p = args[0], r = args[1];
    if (p < 2 || r < 1 || r > 12) throw input_error("elementary:p:r out of range");
    std::vector<Perm> gens;
    const int deg = static_cast<int>(p * r);
    for (int k = 0; k < r; ++k) gens.push_back(shift_cycle(deg, static_cast<int>(p), k * static_cast<int>(p)));
    return PermGroup::from_generators(deg, std::move(gens));
  }
  if (name.rfind("frobenius:", 0) == 0) {
    // F_p semidirect F_p^*: affine maps x -> ax+b on residues mod p
    long p = parse_name_args(name, "frobenius:", 1)[0];
    if (p < 3) throw input_error("frobenius:p requires an odd prime p");
    const int P = static_cast<int>(p);
    // find a primitive root mod p
    auto ord_mod = [P](long a) {
      long x = a % P, o = 1;
      while (x != 1) {
        x = x * a % P;
        ++o;
      }
      return o;
    };
    long g = 2;
    while (ord_mod(g) != p - 1) ++g;
    std::vector<int> shift(P), mult(P);
    for (int x = 0; x < P; ++x) {
      shift[x] = (x + 1) % P + 1;
      mult[x] = static_cast<int>(g * x % P) + 1;
    }
    return PermGroup::from_generators(P, {Perm(std::move(shift)), Perm(std::move(mult))});
  }
  if (name.rfind("heisenberg:", 0) == 0) {
    // order p^3, exponent p (p odd): affine maps on F_p^2
    long p = parse_name_args(name, "heisenberg:", 1)[0];
    if (p < 3) throw input_error("heisenberg:p requires an odd prime p");
    const int P = static_cast<int>(p);
    const int deg = P * P;
    auto id2 = [P](int a, int b) { return a * P + b + 1; };
    std::vector<int> x(deg), y(deg);
    for (int a = 0; a < P; ++a)
      for (int b = 0; b < P; ++b) {
        x[id2(a, b) - 1] = id2((a + 1) % P, b);
        y[id2(a, b) - 1] = id2(a, (b + a) % P);
      }
    return PermGroup::from_generators(deg, {Perm(std::move(x)), Perm(std::move(y))});
  }
  return std::nullopt;
}

const LibEntry* find_entry(const std::string& name) {
  for (const LibEntry& e : kLibrary) {
    if (name == e.name) return &e;
    std::istringstream as(e.aliases);
    std::string alias;
    while (std::getline(as, alias, ','))
      if (alias == name) return &e;
  }
  return nullptr;
}

PermGroup from_entry(const LibEntry& e) {
  std::vector<Perm> gens;
  std::istringstream gs(e.gens);
  std::string one;
  while (std::getline(gs, one, ';')) gens.push_back(parse_perm(one, e.degree));
  return PermGroup::from_generators(e.degree, std::move(gens));
}

} // namespace

PermGroup named_group(const std::string& name) {
  if (const LibEntry* e = find_entry(name)) return from_entry(*e);
  if (auto fam = family_group(name)) return std::move(*fam);
  throw input_error("unknown group name: " + name);
}

bool is_known_group_name(const std::string& name) {
  if (find_entry(name)) return true;
  try {
    return family_group(name).has_value();
  } catch (const input_error&) {
    return false;
  }
}

std::vector<std::pair<std::string, long>> bundled_group_names() {
  std::vector<std::pair<std::string, long>> out;
  std::set<std::string> seen;
  for (const LibEntry& e : kLibrary) {
    out.emplace_back(e.name, std::stol(std::string(e.name).substr(11, std::string(e.name).find(':', 11) - 11)));
    seen.insert(e.name);
  }
  // family instances that round out the test universe up to order 100
  for (long n = 32; n <= 100; ++n) {
    std::string nm = "cyclic:" + std::to_string(n);
    if (!find_entry(nm)) out.emplace_back(nm, n);
  }
  for (long n = 16; n <= 50; ++n) {
    std::string nm = "dihedral:" + std::to_string(n);
    if (!find_entry(nm)) out.emplace_back(nm, 2 * n);
  }
  for (long n : {8L, 9L, 10L, 11L, 12L}) out.emplace_back("dicyclic:" + std::to_string(n), 4 * n);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second < b.second || (a.second == b.second && a.first < b.first);
  });
  return out;
}

} // namespace galcount
