#include "galcount/perm_group.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace galcount {

void PermGroup::Level::rebuild_orbit(int degree) {
  orbit.clear();
  where.assign(degree, -1);
  parent_point.clear();
  parent_gen.clear();
  orbit.push_back(base_point);
  where[base_point - 1] = 0;
  parent_point.push_back(-1);
  parent_gen.push_back(-1);
  for (size_t k = 0; k < orbit.size(); ++k) {
    int x = orbit[k];
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      int y = gens[gi].apply(x);
      if (where[y - 1] < 0) {
        where[y - 1] = static_cast<int>(orbit.size());
        orbit.push_back(y);
        parent_point.push_back(x);
        parent_gen.push_back(static_cast<int>(gi));
      }
    }
  }
}

Perm PermGroup::Level::transversal(int point) const {
  // walk the Schreier tree back to the base point, then compose forward
  std::vector<int> path;
  int x = point;
  while (x != base_point) {
    int idx = where[x - 1];
    path.push_back(parent_gen[idx]);
    x = parent_point[idx];
  }
  Perm u = Perm::identity(static_cast<int>(where.size()));
  for (auto it = path.rbegin(); it != path.rend(); ++it) u = u * gens[*it];
  return u;
}

PermGroup PermGroup::from_generators(int degree, std::vector<Perm> gens) {
  if (degree <= 0) throw input_error("group degree must be positive");
  for (const Perm& g : gens)
    if (g.degree() != degree) throw input_error("generator degree mismatch");
  PermGroup G;
  G.degree_ = degree;
  G.gens_ = gens;
  G.build(std::move(gens));
  return G;
}

std::pair<Perm, size_t> PermGroup::sift(Perm g, size_t from) const {
  for (size_t i = from; i < levels_.size(); ++i) {
    int x = g.apply(levels_[i].base_point);
    if (x == levels_[i].base_point) continue;
    if (levels_[i].where[x - 1] < 0) return {std::move(g), i};
    g = g * levels_[i].transversal(x).inverse();
  }
  return {std::move(g), levels_.size()};
}

void PermGroup::extend_level(size_t i, const Perm& g) {
  if (i == levels_.size()) {
    Level lv;
    // deterministic base rule: smallest point moved by g
    for (int p = 1; p <= degree_; ++p)
      if (g.apply(p) != p) {
        lv.base_point = p;
        break;
      }
    levels_.push_back(std::move(lv));
  }
  levels_[i].gens.push_back(g);
  levels_[i].rebuild_orbit(degree_);
  // close under Schreier generators; recursion below only touches deeper
  // levels but may reallocate levels_, so never hold a reference across it
  for (size_t k = 0; k < levels_[i].orbit.size(); ++k) {
    const int pt = levels_[i].orbit[k];
    const Perm u = levels_[i].transversal(pt);
    for (size_t si = 0; si < levels_[i].gens.size(); ++si) {
      const Perm s = levels_[i].gens[si];
      Perm schreier = u * s * levels_[i].transversal(s.apply(pt)).inverse();
      if (schreier.is_identity()) continue;
      auto [res, j] = sift(std::move(schreier), i + 1);
      if (!res.is_identity()) extend_level(j, res);
    }
  }
}

void PermGroup::build(std::vector<Perm> initial) {
  for (Perm& g : initial) {
    if (g.is_identity()) continue;
    auto [res, j] = sift(std::move(g), 0);
    if (!res.is_identity()) extend_level(j, res);
  }
  order_ = 1;
  for (const Level& lv : levels_) order_ *= Int(lv.orbit.size());
}

std::vector<int> PermGroup::base() const {
  std::vector<int> b;
  for (const Level& lv : levels_) b.push_back(lv.base_point);
  return b;
}

std::vector<Perm> PermGroup::strong_generators() const {
  std::vector<Perm> out;
  for (const Level& lv : levels_)
    for (const Perm& g : lv.gens)
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return out;
}

std::vector<size_t> PermGroup::fundamental_orbit_lengths() const {
  std::vector<size_t> out;
  for (const Level& lv : levels_) out.push_back(lv.orbit.size());
  return out;
}

bool PermGroup::contains(const Perm& p) const {
  if (p.degree() != degree_) return false;
  auto [res, j] = sift(p, 0);
  (void)j;
  return res.is_identity();
}

bool PermGroup::is_abelian() const {
  for (size_t i = 0; i < gens_.size(); ++i)
    for (size_t j = i + 1; j < gens_.size(); ++j)
      if (!(gens_[i] * gens_[j] == gens_[j] * gens_[i])) return false;
  return true;
}

std::vector<std::vector<int>> PermGroup::orbits() const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(degree_, 0);
  for (int p = 1; p <= degree_; ++p) {
    if (seen[p - 1]) continue;
    std::vector<int> orb{p};
    seen[p - 1] = 1;
    for (size_t k = 0; k < orb.size(); ++k)
      for (const Perm& g : gens_) {
        int y = g.apply(orb[k]);
        if (!seen[y - 1]) {
          seen[y - 1] = 1;
          orb.push_back(y);
        }
      }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

bool PermGroup::is_transitive() const { return orbits().size() == 1; }

bool PermGroup::is_primitive() const {
  // Atkinson: for each p, grow the minimal block system identifying {1, p};
  // primitive iff every such system is the trivial one-block partition.
  if (degree_ <= 2) return is_transitive();
  if (!is_transitive()) return false;
  for (int p = 2; p <= degree_; ++p) {
    std::vector<int> rep(degree_ + 1);
    std::iota(rep.begin(), rep.end(), 0);
    auto find = [&](int x) {
      while (rep[x] != x) {
        rep[x] = rep[rep[x]];
        x = rep[x];
      }
      return x;
    };
    std::vector<std::pair<int, int>> pending{{1, p}};
    while (!pending.empty()) {
      auto [a, b] = pending.back();
      pending.pop_back();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      rep[std::max(a, b)] = std::min(a, b);
      for (const Perm& g : gens_) pending.push_back({g.apply(a), g.apply(b)});
    }
    size_t block_size = 0;
    for (int x = 1; x <= degree_; ++x)
      if (find(x) == find(1)) ++block_size;
    if (block_size < static_cast<size_t>(degree_)) return false;
  }
  return true;
}

void PermGroup::elements_rec(size_t level, const Perm& acc, std::vector<Perm>& out, size_t) const {
  if (level == levels_.size()) {
    out.push_back(acc);
    return;
  }
  const Level& lv = levels_[level];
  for (int pt : lv.orbit) elements_rec(level + 1, lv.transversal(pt) * acc, out, 0);
}

std::vector<Perm> PermGroup::elements(size_t cap) const {
  if (order_ > Int(cap))
    throw resource_error("group order " + order_.str() + " exceeds enumeration cap " + std::to_string(cap));
  std::vector<Perm> out;
  out.reserve(static_cast<size_t>(order_));
  elements_rec(0, Perm::identity(degree_), out, cap);
  return out;
}

std::vector<ClassSummary> PermGroup::conjugacy_classes(size_t cap) const {
  std::vector<Perm> els = elements(cap);
  std::sort(els.begin(), els.end());
  std::unordered_map<Perm, size_t, PermHash> index;
  index.reserve(els.size());
  for (size_t i = 0; i < els.size(); ++i) index.emplace(els[i], i);
  std::vector<char> seen(els.size(), 0);
  std::vector<ClassSummary> out;
  for (size_t i = 0; i < els.size(); ++i) {
    if (seen[i]) continue;
    std::vector<size_t> todo{i};
    seen[i] = 1;
    size_t size = 0;
    while (!todo.empty()) {
      size_t cur = todo.back();
      todo.pop_back();
      ++size;
      for (const Perm& g : gens_) {
        Perm c = g.inverse() * els[cur] * g;
        size_t j = index.at(c);
        if (!seen[j]) {
          seen[j] = 1;
          todo.push_back(j);
        }
      }
    }
    ClassSummary cs;
    cs.representative = els[i];
    cs.class_size = Int(size);
    cs.element_order = els[i].order();
    cs.fix_count = els[i].fixed_points();
    out.push_back(std::move(cs));
  }
  return out;
}

PermGroup PermGroup::regular_representation(size_t cap) const {
  std::vector<Perm> els = elements(cap);
  std::sort(els.begin(), els.end());
  std::unordered_map<Perm, int, PermHash> index;
  for (size_t i = 0; i < els.size(); ++i) index.emplace(els[i], static_cast<int>(i));
  const int n = static_cast<int>(els.size());
  std::vector<Perm> regular_gens;
  for (const Perm& g : gens_) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = index.at(els[i] * g) + 1;
    regular_gens.push_back(Perm(std::move(img)));
  }
  if (regular_gens.empty()) regular_gens.push_back(Perm::identity(std::max(n, 1)));
  return PermGroup::from_generators(std::max(n, 1), std::move(regular_gens));
}

bool PermGroup::set_stabilizer_is_trivial(const std::vector<int>& points, size_t cap) const {
  for (int p : points)
    if (p < 1 || p > degree_) throw input_error("set point out of range");
  std::vector<char> in_set(degree_ + 1, 0);
  for (int p : points) in_set[p] = 1;
  for (const Perm& g : elements(cap)) {
    if (g.is_identity()) continue;
    bool stabilizes = true;
    for (int p : points)
      if (!in_set[g.apply(p)]) {
        stabilizes = false;
        break;
      }
    if (stabilizes) return false;
  }
  return true;
}

int PermGroup::malle_index(size_t cap) const {
  if (is_trivial()) throw domain_error("malle index of the trivial group is undefined");
  int best = degree_;
  for (const ClassSummary& cs : conjugacy_classes(cap)) {
    if (cs.representative.is_identity()) continue;
    best = std::min(best, degree_ - cs.representative.cycle_count());
  }
  return best;
}

int PermGroup::count_elements_of_order(int k, size_t cap) const {
  int n = 0;
  for (const Perm& g : elements(cap))
    if (g.order() == k) ++n;
  return n;
}

PermGroup PermGroup::stabilizer_of_points(const std::vector<int>& points) const {
  // rebuild with a prescribed base prefix, then cut the chain
  std::vector<Perm> cur = gens_;
  for (int p : points) {
    // orbit/transversal of p under <cur>
    std::vector<int> orbit{p};
    std::vector<int> where(degree_ + 1, -1);
    where[p] = 0;
    std::vector<Perm> trans{Perm::identity(degree_)};
    for (size_t k = 0; k < orbit.size(); ++k)
      for (const Perm& g : cur) {
        int y = g.apply(orbit[k]);
        if (where[y] < 0) {
          where[y] = static_cast<int>(orbit.size());
          orbit.push_back(y);
          trans.push_back(trans[where[orbit[k]]] * g);
        }
      }
    std::vector<Perm> next;
    std::unordered_set<Perm, PermHash> dedup;
    for (size_t k = 0; k < orbit.size(); ++k)
      for (const Perm& g : cur) {
        Perm s = trans[k] * g * trans[where[g.apply(orbit[k])]].inverse();
        if (!s.is_identity() && dedup.insert(s).second) next.push_back(s);
      }
    cur = std::move(next);
  }
  return PermGroup::from_generators(degree_, std::move(cur));
}

PermGroup parse_group_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int degree = -1;
  std::vector<Perm> gens;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (degree < 0) {
      std::istringstream ls(line);
      std::string kw;
      ls >> kw;
      if (kw != "degree" || !(ls >> degree) || degree <= 0)
        throw input_error("group file must start with 'degree n'");
      continue;
    }
    gens.push_back(parse_perm(line, degree));
  }
  if (degree < 0) throw input_error("group file must start with 'degree n'");
  return PermGroup::from_generators(degree, std::move(gens));
}

PermGroup load_group_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open group file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_group_text(buf.str());
}

} // namespace galcount
