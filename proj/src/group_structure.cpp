#include "galcount/group_structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace galcount {

namespace {

std::vector<Perm> sorted_closure(const std::vector<Perm>& gens, int degree, size_t cap) {
  std::vector<Perm> els{Perm::identity(degree)};
  std::unordered_set<Perm, PermHash> seen{els[0]};
  for (size_t k = 0; k < els.size(); ++k) {
    for (const Perm& g : gens) {
      Perm x = els[k] * g;
      if (seen.insert(x).second) {
        els.push_back(std::move(x));
        if (els.size() > cap) throw resource_error("subgroup closure exceeds cap " + std::to_string(cap));
      }
    }
  }
  std::sort(els.begin(), els.end());
  return els;
}

bool commutes_with_all(const Perm& x, const std::vector<Perm>& gens) {
  for (const Perm& g : gens)
    if (!(x * g == g * x)) return false;
  return true;
}

} // namespace

Subgroup::Subgroup(const PermGroup& parent, std::vector<Perm> gens) : parent_(&parent) {
  for (const Perm& g : gens) {
    if (g.degree() != parent.degree()) throw input_error("subgroup generator degree mismatch");
    if (!parent.contains(g)) throw domain_error("subgroup generator not contained in parent group");
  }
  if (gens.empty()) gens.push_back(Perm::identity(parent.degree()));
  chain_ = PermGroup::from_generators(parent.degree(), std::move(gens));
  if (parent.order() % chain_.order() != 0)
    throw domain_error("Lagrange check failed: subgroup order does not divide parent order");
}

bool Subgroup::is_normal() const {
  for (const Perm& g : parent_->generators())
    for (const Perm& h : chain_.generators())
      if (!chain_.contains(g.inverse() * h * g)) return false;
  return true;
}

bool Subgroup::is_central() const {
  for (const Perm& h : chain_.generators())
    if (!commutes_with_all(h, parent_->generators())) return false;
  return true;
}

Subgroup center(const PermGroup& G, size_t cap) {
  std::vector<Perm> z;
  for (const Perm& x : G.elements(cap))
    if (commutes_with_all(x, G.generators())) z.push_back(x);
  return Subgroup(G, std::move(z));
}

Subgroup centralizer(const PermGroup& G, const Subgroup& N, size_t cap) {
  if (&N.parent() != &G) {
    for (const Perm& g : N.generators())
      if (!G.contains(g)) throw domain_error("centralizer: N is not a subgroup of G");
  }
  std::vector<Perm> c;
  for (const Perm& x : G.elements(cap))
    if (commutes_with_all(x, N.generators())) c.push_back(x);
  return Subgroup(G, std::move(c));
}

MinimalNormalReport minimal_normal_subgroups(const PermGroup& G, size_t cap) {
  if (G.is_trivial()) throw domain_error("the trivial group has no minimal normal subgroups");
  auto classes = G.conjugacy_classes(cap);

  // normal closure of each non-identity class, deduplicated by element set
  std::map<std::vector<Perm>, std::vector<Perm>> closures;  // sorted elements -> generators
  for (const ClassSummary& cs : classes) {
    if (cs.representative.is_identity()) continue;
    // the class itself generates the normal closure
    std::vector<Perm> class_members;
    {
      std::vector<Perm> todo{cs.representative};
      std::unordered_set<Perm, PermHash> seen{cs.representative};
      while (!todo.empty()) {
        Perm cur = todo.back();
        todo.pop_back();
        class_members.push_back(cur);
        for (const Perm& g : G.generators()) {
          Perm c = g.inverse() * cur * g;
          if (seen.insert(c).second) todo.push_back(c);
        }
      }
    }
    std::vector<Perm> els = sorted_closure(class_members, G.degree(), cap);
    closures.emplace(std::move(els), std::move(class_members));
  }

  // keep the minimal ones under inclusion
  std::vector<const std::pair<const std::vector<Perm>, std::vector<Perm>>*> entries;
  for (const auto& kv : closures) entries.push_back(&kv);
  MinimalNormalReport report;
  for (const auto* e : entries) {
    bool minimal = true;
    for (const auto* f : entries) {
      if (f == e || f->first.size() >= e->first.size()) continue;
      if (std::includes(e->first.begin(), e->first.end(), f->first.begin(), f->first.end())) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    Subgroup N(G, e->second);
    if (!N.is_normal()) throw domain_error("internal: normal closure is not normal");

    // classify
    const std::vector<Perm>& els = e->first;
    bool abelian = N.chain().is_abelian();
    MinimalNormalClass cls;
    if (abelian) {
      // minimal normal abelian => elementary abelian p-group
      long p = 0;
      bool all_p = true;
      for (const Perm& x : els) {
        if (x.is_identity()) continue;
        int o = x.order();
        if (p == 0) p = o;
        if (o != p) all_p = false;
      }
      Int sz(els.size());
      int r = 0;
      Int pw = 1;
      while (pw < sz) {
        pw *= p;
        ++r;
      }
      if (!all_p || pw != sz) throw domain_error("internal: abelian minimal normal subgroup is not elementary");
      cls = ElementaryAbelian{p, r};
    } else {
      NonabelianCharSimple info;
      info.order_factorization = factorize(Int(els.size()));
      // order lookup for the simple factor T with |N| = |T|^r
      static const long simple_orders[] = {60,     168,    360,    504,    660,    1092,  2448,  2520,
                                           3420,   4080,   5616,   6048,   6072,   7800,  7920,  9828,
                                           12180,  14880,  20160,  25308,  25920,  29120, 32736, 34440,
                                           39732,  51888,  58800,  62400,  74412,  95040, 102660, 113460,
                                           126000, 150348, 175560, 178920, 181440, 194472, 246480, 262080,
                                           265680, 285852, 352440, 372000, 443520, 456288, 515100, 546312,
                                           604800, 612468, 647460, 721392, 885720, 976500};
      Int sz(els.size());
      for (long t : simple_orders) {
        Int acc(t);
        int copies = 1;
        while (acc < sz) {
          acc *= t;
          ++copies;
        }
        if (acc == sz) {
          info.simple_factor_order = Int(t);
          info.copies = copies;
          break;
        }
      }
      cls = std::move(info);
    }
    report.subgroups.emplace_back(std::move(N), std::move(cls));
  }

  // Lemma 2.1 hypothesis holds automatically for distinct minimal normals; assert it.
  for (size_t i = 0; i < report.subgroups.size(); ++i)
    for (size_t j = i + 1; j < report.subgroups.size(); ++j) {
      const Subgroup& A = report.subgroups[i].first;
      const Subgroup& B = report.subgroups[j].first;
      for (const Perm& x : A.elements(cap))
        if (!x.is_identity() && B.contains(x))
          throw domain_error("internal: distinct minimal normal subgroups intersect nontrivially");
    }
  std::sort(report.subgroups.begin(), report.subgroups.end(),
            [](const auto& a, const auto& b) { return a.first.order() < b.first.order(); });
  return report;
}

namespace {

struct CosetTable {
  std::unordered_map<Perm, int, PermHash> coset_of;  // element -> sorted coset index
  std::vector<Perm> reps;                            // canonical (lex-least) reps, sorted
};

CosetTable coset_table(const PermGroup& G, const Subgroup& N, size_t cap) {
  std::vector<Perm> els = G.elements(cap);
  std::vector<Perm> n_els = N.elements(cap);
  std::unordered_map<Perm, int, PermHash> coset_of;
  std::vector<Perm> coset_rep;
  for (const Perm& g : els) {
    if (coset_of.count(g)) continue;
    Perm best = g;
    std::vector<Perm> members;
    for (const Perm& n : n_els) {
      Perm x = n * g;
      if (x < best) best = x;
      members.push_back(std::move(x));
    }
    int id = static_cast<int>(coset_rep.size());
    coset_rep.push_back(best);
    for (Perm& x : members) coset_of.emplace(std::move(x), id);
  }
  // stable indexing: sort cosets by canonical representative
  std::vector<int> perm_idx(coset_rep.size());
  std::iota(perm_idx.begin(), perm_idx.end(), 0);
  std::sort(perm_idx.begin(), perm_idx.end(), [&](int a, int b) { return coset_rep[a] < coset_rep[b]; });
  std::vector<int> rank(coset_rep.size());
  for (size_t i = 0; i < perm_idx.size(); ++i) rank[perm_idx[i]] = static_cast<int>(i);
  CosetTable t;
  t.reps.resize(coset_rep.size());
  for (size_t i = 0; i < coset_rep.size(); ++i) t.reps[rank[i]] = coset_rep[i];
  for (const auto& [el, id] : coset_of) t.coset_of.emplace(el, rank[id]);
  return t;
}

} // namespace

Perm QuotientData::image(const Perm& x) const {
  const size_t m = coset_reps.size();
  std::vector<int> img(m);
  for (size_t c = 0; c < m; ++c) img[c] = coset_of.at(coset_reps[c] * x) + 1;
  return Perm(std::move(img));
}

QuotientData quotient_data(const PermGroup& G, const Subgroup& N, size_t cap) {
  if (!N.is_normal()) throw domain_error("quotient requires a normal subgroup");
  CosetTable t = coset_table(G, N, cap);
  const int m = static_cast<int>(t.reps.size());
  std::vector<Perm> qgens;
  for (const Perm& g : G.generators()) {
    std::vector<int> img(m);
    for (int c = 0; c < m; ++c) img[c] = t.coset_of.at(t.reps[c] * g) + 1;
    qgens.push_back(Perm(std::move(img)));
  }
  if (qgens.empty()) qgens.push_back(Perm::identity(std::max(m, 1)));
  QuotientData out;
  out.Q = PermGroup::from_generators(std::max(m, 1), std::move(qgens));
  out.coset_reps = std::move(t.reps);
  out.coset_of = std::move(t.coset_of);
  return out;
}

PermGroup quotient_group(const PermGroup& G, const Subgroup& N, size_t cap) {
  return quotient_data(G, N, cap).Q;
}

std::vector<std::vector<Perm>> all_subgroups(const PermGroup& G, size_t cap) {
  if (G.order() > Int(cap))
    throw resource_error("subgroup enumeration cap " + std::to_string(cap) + " exceeded by group of order " +
                         G.order().str());
  std::vector<Perm> els = G.elements(cap);
  std::sort(els.begin(), els.end());
  const int degree = G.degree();

  std::set<std::vector<Perm>> subs;
  std::vector<std::vector<Perm>> cyclics;
  for (const Perm& g : els) {
    std::vector<Perm> h{Perm::identity(degree)};
    Perm x = g;
    while (!x.is_identity()) {
      h.push_back(x);
      x = x * g;
    }
    std::sort(h.begin(), h.end());
    if (subs.insert(h).second) cyclics.push_back(h);
  }
  std::vector<std::vector<Perm>> frontier(subs.begin(), subs.end());
  while (!frontier.empty()) {
    std::vector<std::vector<Perm>> next;
    for (const auto& H : frontier) {
      for (const auto& C : cyclics) {
        if (std::includes(H.begin(), H.end(), C.begin(), C.end())) continue;
        std::vector<Perm> gens = H;
        gens.insert(gens.end(), C.begin(), C.end());
        std::vector<Perm> closed = sorted_closure(gens, degree, cap);
        if (subs.insert(closed).second) next.push_back(std::move(closed));
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<Perm>> out(subs.begin(), subs.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() < b.size() || (a.size() == b.size() && a < b);
  });
  return out;
}

Real core_free_bound(const Int& order) {
  Real lg = log(Real(order));
  return exp(lg * lg / log(Real(2)));
}

CoreFreeCount count_core_free_subgroups(const PermGroup& G, size_t cap) {
  CoreFreeCount out{Int(-1), core_free_bound(G.order()), Int(-1)};
  std::vector<std::vector<Perm>> subs = all_subgroups(G, cap);  // resource_error propagates
  std::vector<Perm> els = G.elements(std::max(cap, kElementCap));
  Int count = 0;
  for (const auto& H : subs) {
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
    if (core.size() == 1) ++count;
  }
  out.exact = count;
  out.total_subgroups = Int(subs.size());
  return out;
}

bool generation_bound_check(const PermGroup& G, size_t cap) {
  long omega = 0;
  for (const auto& [p, e] : factorize(G.order())) omega += e;
  for (const auto& H : all_subgroups(G, cap)) {
    std::vector<Perm> gens;
    std::vector<Perm> closed{Perm::identity(G.degree())};
    long used = 0;
    while (closed.size() < H.size()) {
      const Perm* pick = nullptr;
      for (const Perm& h : H)
        if (!std::binary_search(closed.begin(), closed.end(), h)) {
          pick = &h;
          break;
        }
      gens.push_back(*pick);
      closed = sorted_closure(gens, G.degree(), cap);
      ++used;
      if (used > omega) return false;
    }
  }
  return true;
}

int order2_count(const PermGroup& G, size_t cap) {
  int n = 0;
  for (const Perm& g : G.elements(cap))
    if (g.order() == 2) ++n;
  return n;
}

std::optional<std::vector<std::pair<Perm, Perm>>> GroupHom::try_extend(const PermGroup& dom,
                                                                       const PermGroup& cod,
                                                                       const std::vector<Perm>& images,
                                                                       size_t cap) {
  if (images.size() != dom.generators().size()) return std::nullopt;
  std::unordered_map<Perm, Perm, PermHash> f;
  std::vector<Perm> order;
  Perm id_d = Perm::identity(dom.degree());
  f.emplace(id_d, Perm::identity(cod.degree()));
  order.push_back(id_d);
  for (size_t k = 0; k < order.size(); ++k) {
    if (order.size() > cap) throw resource_error("homomorphism extension exceeds cap");
    Perm x = order[k];
    Perm fx = f.at(x);
    for (size_t i = 0; i < images.size(); ++i) {
      Perm y = x * dom.generators()[i];
      Perm fy = fx * images[i];
      auto it = f.find(y);
      if (it == f.end()) {
        f.emplace(y, std::move(fy));
        order.push_back(std::move(y));
      } else if (!(it->second == fy)) {
        return std::nullopt;  // not well defined
      }
    }
  }
  // multiplicative on every (element, generator) pair by construction of the
  // closure above; that suffices for a homomorphism by induction on word length
  std::vector<std::pair<Perm, Perm>> table(f.begin(), f.end());
  std::sort(table.begin(), table.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return table;
}

GroupHom::GroupHom(const PermGroup& dom, const PermGroup& cod, std::vector<Perm> images, size_t cap)
    : dom_(&dom), cod_(&cod), images_(std::move(images)) {
  for (const Perm& im : images_)
    if (!cod.contains(im)) throw input_error("homomorphism image lies outside the codomain");
  auto table = try_extend(dom, cod, images_, cap);
  if (!table) throw input_error("generator images do not define a homomorphism");
  table_ = std::move(*table);
}

Perm GroupHom::apply(const Perm& x) const {
  auto it = std::lower_bound(table_.begin(), table_.end(), x,
                             [](const auto& kv, const Perm& key) { return kv.first < key; });
  if (it == table_.end() || !(it->first == x)) throw domain_error("element outside homomorphism domain");
  return it->second;
}

namespace {

// checks on generators only: two homs agree modulo A iff they do on generators
bool same_projection(const std::vector<Perm>& im1, const std::vector<Perm>& im2, const Subgroup& A) {
  for (size_t i = 0; i < im1.size(); ++i)
    if (!A.contains(im1[i].inverse() * im2[i])) return false;
  return true;
}

} // namespace

CentralFiberCount central_fiber_count(const PermGroup& gamma, const PermGroup& G, const Subgroup& A,
                                      const GroupHom& rho, size_t cap) {
  if (&A.parent() != &G) throw domain_error("central subgroup must live in G");
  if (!A.is_central()) throw domain_error("subgroup is not central in G");
  if (&rho.domain() != &gamma || &rho.codomain() != &G) throw input_error("homomorphism endpoints mismatch");

  std::vector<Perm> a_els = A.elements(cap);
  std::sort(a_els.begin(), a_els.end());
  const size_t k = gamma.generators().size();
  const std::vector<Perm>& rho_im = rho.generator_images();

  // fiber: candidates rho'(g_i) = rho(g_i) * a_i, a_i in A
  Int fiber = 0;
  std::vector<size_t> idx(k, 0);
  while (true) {
    std::vector<Perm> cand;
    cand.reserve(k);
    for (size_t i = 0; i < k; ++i) cand.push_back(rho_im[i] * a_els[idx[i]]);
    if (GroupHom::try_extend(gamma, G, cand, cap)) {
      if (!same_projection(rho_im, cand, A)) throw domain_error("internal: fiber candidate left the coset");
      ++fiber;
    }
    size_t j = 0;
    while (j < k && ++idx[j] == a_els.size()) idx[j++] = 0;
    if (j == k || k == 0) break;
  }
  if (k == 0) fiber = 1;  // trivial domain: only the trivial homomorphism

  // |Hom(gamma, A)| by the same enumeration with images inside A
  Int homs = 0;
  std::fill(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<Perm> cand;
    cand.reserve(k);
    for (size_t i = 0; i < k; ++i) cand.push_back(a_els[idx[i]]);
    if (GroupHom::try_extend(gamma, G, cand, cap)) ++homs;
    size_t j = 0;
    while (j < k && ++idx[j] == a_els.size()) idx[j++] = 0;
    if (j == k || k == 0) break;
  }
  if (k == 0) homs = 1;
  return {fiber, homs};
}

Int least_prime_divisor(const Int& order) {
  if (order <= 1) throw domain_error("least prime divisor of a trivial order");
  return factorize(order).front().first;
}

int abelian_rank(const PermGroup& G, size_t cap) {
  std::vector<Int> inv = abelian_invariants(G, cap);
  return static_cast<int>(inv.size());
}

std::vector<Int> abelian_invariants(const PermGroup& G, size_t cap) {
  if (!G.is_abelian()) throw domain_error("abelian invariants of a nonabelian group");
  if (G.is_trivial()) return {};
  std::vector<int> orders;
  for (const Perm& g : G.elements(cap)) orders.push_back(g.order());
  // per-prime partition from counts of elements with g^{p^k} = 1
  std::map<long, std::vector<int>> parts;  // p -> partition (descending parts)
  for (const auto& [pI, e] : factorize(G.order())) {
    long p = static_cast<long>(pI);
    std::vector<long> cnt{1};  // c_k = #{g : ord(g) | p^k}
    for (int k = 1;; ++k) {
      long pk = 1;
      bool overflow = false;
      for (int i = 0; i < k; ++i) {
        pk *= p;
        if (pk > 1000000) {
          overflow = true;
          break;
        }
      }
      if (overflow) break;
      long c = 0;
      for (int o : orders)
        if (pk % o == 0) ++c;
      cnt.push_back(c);
      if (c == cnt[k - 1] && k > 1) break;
      if (Int(c) == G.order()) break;
    }
    // m_k = log_p(c_k / c_{k-1}) = number of parts >= k
    std::vector<int> mk;
    for (size_t k = 1; k < cnt.size(); ++k) {
      long ratio = cnt[k] / cnt[k - 1];
      int m = 0;
      while (ratio > 1) {
        ratio /= p;
        ++m;
      }
      if (m == 0) break;
      mk.push_back(m);
    }
    std::vector<int> partition;  // part i = #{k : m_k > i}... transpose
    if (!mk.empty()) {
      for (int i = 0; i < mk[0]; ++i) {
        int part = 0;
        for (int m : mk)
          if (m > i) ++part;
        partition.push_back(part);
      }
    }
    parts[p] = partition;  // descending
  }
  size_t rank = 0;
  for (const auto& [p, q] : parts) rank = std::max(rank, q.size());
  std::vector<Int> invariants(rank, 1);
  for (const auto& [p, q] : parts)
    for (size_t i = 0; i < q.size(); ++i) {
      Int pw = 1;
      for (int j = 0; j < q[i]; ++j) pw *= p;
      invariants[rank - 1 - i] *= pw;  // largest part goes to the last invariant
    }
  return invariants;
}

} // namespace galcount
