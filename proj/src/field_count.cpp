#include "galcount/field_count.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "galcount/bound_engine.hpp"
#include "galcount/errors.hpp"

#include "json.hpp"

namespace galcount {

using nlohmann::json;

bool is_fundamental_discriminant(long long d) {
  if (d == 0 || d == 1) return false;
  auto squarefree = [](long long v) {
    for (long long p = 2; p * p <= v; ++p)
      if (v % (p * p) == 0) return false;
    return true;
  };
  long long r = ((d % 4) + 4) % 4;
  if (r == 1) return squarefree(d < 0 ? -d : d);
  if (d % 4 != 0) return false;
  long long m = d / 4;
  long long mr = ((m % 4) + 4) % 4;
  return (mr == 2 || mr == 3) && squarefree(m < 0 ? -m : m);
}

long long fundamental_discriminants_up_to(long long X, const std::function<void(long long)>& emit) {
  if (X < 1) throw domain_error("discriminant bound must be at least 1");
  if (X > kSieveCap) throw resource_error("sieve bound exceeds the memory-safe cap 10^9");
  // segmented squarefree sieve over m; each squarefree m contributes the
  // discriminants m (m=1 mod 4), -m (m=3 mod 4), 4m (m=2,3 mod 4), -4m (m=1,2 mod 4)
  long long count = 0;
  std::vector<long long> primes;
  {
    long long lim = 1;
    while (lim * lim <= X) ++lim;
    std::vector<char> is_comp(lim + 1, 0);
    for (long long p = 2; p <= lim; ++p) {
      if (is_comp[p]) continue;
      primes.push_back(p);
      for (long long q = p * p; q <= lim; q += p) is_comp[q] = 1;
    }
  }
  const long long seg = 1 << 20;
  std::vector<char> sf(seg);
  for (long long lo = 1; lo <= X; lo += seg) {
    long long hi = std::min(X, lo + seg - 1);
    std::fill(sf.begin(), sf.end(), 1);
    for (long long p : primes) {
      long long p2 = p * p;
      if (p2 > hi) break;
      for (long long q = ((lo + p2 - 1) / p2) * p2; q <= hi; q += p2) sf[q - lo] = 0;
    }
    for (long long m = lo; m <= hi; ++m) {
      if (!sf[m - lo]) continue;
      long long r = m % 4;
      if (r == 1 && m > 1) {
        ++count;
        if (emit) emit(m);
      }
      if (r == 3) {
        ++count;
        if (emit) emit(-m);
      }
      if (4 * m <= X) {
        if (r == 2 || r == 3) {
          ++count;
          if (emit) emit(4 * m);
        }
        if (r == 1 || r == 2) {
          ++count;
          if (emit) emit(-4 * m);
        }
      }
    }
  }
  return count;
}

namespace {

Real six_over_pi2_times(long long X) {
  Real::default_precision(50);
  Real pi = 4 * atan(Real(1));
  return 6 / (pi * pi) * X;
}

} // namespace

CountReport quadratic_density_report(long long X) {
  if (X < 100) throw domain_error("density report requires X >= 100");
  CountReport rep;
  rep.X = X;
  rep.quadratic_count = fundamental_discriminants_up_to(X);
  rep.counts_by_group["C2"] = rep.quadratic_count;
  rep.abelian_total = rep.quadratic_count;
  rep.degree_cap = 2;
  rep.main_term = six_over_pi2_times(X);
  rep.residual = Real(rep.quadratic_count) - rep.main_term;
  rep.residual_over_sqrt_x = rep.residual / sqrt(Real(X));
  return rep;
}

// ---------------------------------------------------------------------------
// (Z/f)^x machinery
// ---------------------------------------------------------------------------

namespace {

struct UnitFactor {
  long long order;      // cyclic order d_i
  long long generator;  // residue mod f
  long long prime;      // the rational prime of the local part
  int role;             // 0: odd-part or (Z/4); 1: the <-1> factor at 2^e (e>=3); 2: the <5> factor
  int exponent;         // e with p^e || f
};

long long mulmod_ll(long long a, long long b, long long m) {
  return static_cast<long long>(static_cast<unsigned __int128>(a) * b % m);
}

long long powmod_ll(long long a, long long e, long long m) {
  long long r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_ll(r, a, m);
    a = mulmod_ll(a, a, m);
    e >>= 1;
  }
  return r;
}

long long primitive_root_mod_p2e_uncached(long long p, int e) {
  // primitive root mod p^e for odd p
  long long pe = 1;
  for (int i = 0; i < e; ++i) pe *= p;
  long long phi_p = p - 1;
  std::vector<long long> qs;
  long long t = phi_p;
  for (long long q = 2; q * q <= t; ++q)
    while (t % q == 0) {
      qs.push_back(q);
      while (t % q == 0) t /= q;
      break;
    }
  if (t > 1) qs.push_back(t);
  long long g = 2;
  for (;; ++g) {
    bool ok = true;
    for (long long q : qs)
      if (powmod_ll(g, phi_p / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) break;
  }
  if (e == 1) return g;
  // lift: g works mod p^e unless g^{p-1} == 1 mod p^2
  if (powmod_ll(g, p - 1, p * p) == 1) g += p;
  return g % pe;
}

long long primitive_root_mod_p2e(long long p, int e) {
  static std::map<long long, long long> cache;
  static std::mutex mu;
  long long key = p * 64 + e;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  long long g = primitive_root_mod_p2e_uncached(p, e);
  cache.emplace(key, g);
  return g;
}

long long crt_lift(long long residue, long long mod_part, long long f) {
  // x == residue mod mod_part, x == 1 mod f/mod_part
  long long other = f / mod_part;
  if (other == 1) return residue % f;
  // x = residue + mod_part * k with x == 1 mod other
  long long inv = 0;
  {
    // modular inverse of mod_part mod other (coprime)
    long long a = mod_part % other, m = other;
    long long x0 = 1, x1 = 0;
    long long b = m;
    long long aa = a;
    while (b) {
      long long q = aa / b;
      aa -= q * b;
      std::swap(aa, b);
      x0 -= q * x1;
      std::swap(x0, x1);
    }
    inv = ((x0 % other) + other) % other;
  }
  long long k = mulmod_ll(((1 - residue) % other + other) % other, inv, other);
  return (residue + mod_part % f * k) % f;
}

std::vector<UnitFactor> unit_group_factors(long long f, const std::vector<std::pair<long long, int>>& fac) {
  std::vector<UnitFactor> out;
  for (const auto& [p, e] : fac) {
    long long pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1) continue;
      if (e == 2) {
        out.push_back({2, crt_lift(3, 4, f), 2, 0, e});
      } else {
        out.push_back({2, crt_lift(pe - 1, pe, f), 2, 1, e});
        long long d5 = pe / 4;
        out.push_back({d5, crt_lift(5, pe, f), 2, 2, e});
      }
      continue;
    }
    long long d = pe / p * (p - 1);
    long long g = primitive_root_mod_p2e(p, e);
    out.push_back({d, crt_lift(g, pe, f), p, 0, e});
  }
  return out;
}

// local conductor of the character with exponent c on factor i
long long local_conductor(const UnitFactor& uf, long long c) {
  long long o = uf.order / std::gcd(uf.order, c == 0 ? uf.order : c);
  if (c == 0) o = 1;
  if (o == 1) return 1;
  if (uf.prime != 2) {
    // order o | p^{e-1}(p-1): conductor p^{1+v_p(o)}
    long long v = 0, t = o;
    while (t % uf.prime == 0) {
      t /= uf.prime;
      ++v;
    }
    long long cond = uf.prime;
    for (long long i = 0; i < v; ++i) cond *= uf.prime;
    return cond;
  }
  if (uf.role == 0) return 4;  // the (Z/4)^x factor
  if (uf.role == 1) return 4;  // <-1> alone
  // <5> of order 2^{e-2}: character of order 2^s needs modulus 2^{s+2}
  long long cond = 4;
  long long t = o;
  while (t > 1) {
    t /= 2;
    cond *= 2;
  }
  return cond;
}

using Vec = std::vector<long long>;

// all subgroups of the m-torsion of prod Z_{d_i} with exact order `target`
// (target a prime power), as sorted element lists
std::vector<std::vector<Vec>> torsion_subgroups(const std::vector<long long>& d, long long p, int a) {
  long long target = 1;
  for (int i = 0; i < a; ++i) target *= p;
  const size_t t = d.size();
  // p^a-torsion generators: (d_i / gcd(d_i, p^a)) * e_i
  std::vector<long long> tor_ord(t);
  for (size_t i = 0; i < t; ++i) tor_ord[i] = std::gcd(d[i], target);
  std::vector<Vec> torsion;
  Vec cur(t, 0);
  std::function<void(size_t)> gen = [&](size_t i) {
    if (i == t) {
      torsion.push_back(cur);
      return;
    }
    for (long long k = 0; k < tor_ord[i]; ++k) {
      cur[i] = k * (d[i] / tor_ord[i]);
      gen(i + 1);
    }
    cur[i] = 0;
  };
  gen(0);
  std::sort(torsion.begin(), torsion.end());

  auto add = [&](const Vec& x, const Vec& y) {
    Vec z(t);
    for (size_t i = 0; i < t; ++i) z[i] = (x[i] + y[i]) % d[i];
    return z;
  };
  auto closure = [&](std::vector<Vec> base, const Vec& x) {
    std::set<Vec> S(base.begin(), base.end());
    std::vector<Vec> frontier{x};
    S.insert(x);
    while (!frontier.empty()) {
      std::vector<Vec> next;
      for (const Vec& u : frontier)
        for (const Vec& v : std::vector<Vec>(S.begin(), S.end())) {
          Vec w = add(u, v);
          if (S.insert(w).second) next.push_back(w);
        }
      frontier = std::move(next);
    }
    return std::vector<Vec>(S.begin(), S.end());
  };

  std::set<std::vector<Vec>> subs;
  Vec zero(t, 0);
  subs.insert({zero});
  std::vector<std::vector<Vec>> frontier{{zero}};
  while (!frontier.empty()) {
    std::vector<std::vector<Vec>> next;
    for (const auto& S : frontier) {
      if (static_cast<long long>(S.size()) >= target) continue;
      for (const Vec& x : torsion) {
        if (std::binary_search(S.begin(), S.end(), x)) continue;
        auto C = closure(S, x);
        if (static_cast<long long>(C.size()) > target) continue;
        if (subs.insert(C).second) next.push_back(C);
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<Vec>> out;
  for (const auto& S : subs)
    if (static_cast<long long>(S.size()) == target) out.push_back(S);
  return out;
}

// subgroups of prod Z_{d_i} of exact order m (m squarefree-ish small), combining
// per-prime torsion subgroups by direct sum
std::vector<std::vector<Vec>> dual_subgroups_of_order(const std::vector<long long>& d, long long m) {
  std::vector<std::pair<long long, int>> mfac;
  long long t = m;
  for (long long q = 2; q * q <= t; ++q)
    if (t % q == 0) {
      int a = 0;
      while (t % q == 0) {
        t /= q;
        ++a;
      }
      mfac.push_back({q, a});
    }
  if (t > 1) mfac.push_back({t, 1});

  std::vector<std::vector<Vec>> acc{{Vec(d.size(), 0)}};
  auto add = [&](const Vec& x, const Vec& y) {
    Vec z(d.size());
    for (size_t i = 0; i < d.size(); ++i) z[i] = (x[i] + y[i]) % d[i];
    return z;
  };
  for (const auto& [q, a] : mfac) {
    auto parts = torsion_subgroups(d, q, a);
    if (parts.empty()) return {};
    std::vector<std::vector<Vec>> next;
    for (const auto& S : acc)
      for (const auto& T : parts) {
        std::vector<Vec> sum;
        for (const Vec& x : S)
          for (const Vec& y : T) sum.push_back(add(x, y));
        std::sort(sum.begin(), sum.end());
        next.push_back(std::move(sum));
      }
    acc = std::move(next);
  }
  return acc;
}

std::vector<long long> invariant_factors_of_dual(const std::vector<Vec>& D, const std::vector<long long>& d) {
  // orders of elements of the abelian group D
  std::vector<long long> orders;
  for (const Vec& c : D) {
    long long o = 1;
    for (size_t i = 0; i < d.size(); ++i) {
      long long oi = c[i] == 0 ? 1 : d[i] / std::gcd(d[i], c[i]);
      o = std::lcm(o, oi);
    }
    orders.push_back(o);
  }
  // recover invariant factors from order statistics (desk-scale |D|)
  long long size = static_cast<long long>(D.size());
  std::map<long long, std::vector<int>> parts;
  long long rem = size;
  for (long long q = 2; q * q <= rem; ++q)
    if (rem % q == 0) {
      parts[q] = {};
      while (rem % q == 0) rem /= q;
    }
  if (rem > 1) parts[rem] = {};
  for (auto& [q, partition] : parts) {
    std::vector<long long> cnt{1};
    for (int k = 1;; ++k) {
      long long qk = 1;
      for (int i = 0; i < k; ++i) qk *= q;
      long long c = 0;
      for (long long o : orders)
        if (qk % o == 0) ++c;
      cnt.push_back(c);
      if (c == size || (cnt.size() > 2 && c == cnt[cnt.size() - 2])) break;
    }
    std::vector<int> mk;
    for (size_t k = 1; k < cnt.size(); ++k) {
      long long ratio = cnt[k] / cnt[k - 1];
      int mm = 0;
      while (ratio > 1) {
        ratio /= q;
        ++mm;
      }
      if (mm == 0) break;
      mk.push_back(mm);
    }
    if (!mk.empty())
      for (int i = 0; i < mk[0]; ++i) {
        int part = 0;
        for (int mv : mk)
          if (mv > i) ++part;
        partition.push_back(part);
      }
  }
  size_t rank = 0;
  for (const auto& [q, partition] : parts) rank = std::max(rank, partition.size());
  std::vector<long long> inv(rank, 1);
  for (const auto& [q, partition] : parts)
    for (size_t i = 0; i < partition.size(); ++i) {
      long long pw = 1;
      for (int j = 0; j < partition[i]; ++j) pw *= q;
      inv[rank - 1 - i] *= pw;
    }
  return inv;
}

// integer kernel basis of M (k x n) via Smith-style elimination over Z
std::vector<std::vector<Int>> integer_kernel(std::vector<std::vector<Int>> M, size_t n) {
  // track column operations on the identity
  std::vector<std::vector<Int>> V(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) V[i][i] = 1;
  size_t rows = M.size();
  size_t rank = 0;
  for (size_t r = 0; r < rows && rank < n; ++r) {
    // clear row r using column ops over columns >= rank
    while (true) {
      size_t piv = n;
      Int best = 0;
      for (size_t c = rank; c < n; ++c)
        if (M[r][c] != 0 && (piv == n || abs(M[r][c]) < best)) {
          piv = c;
          best = abs(M[r][c]);
        }
      if (piv == n) break;
      for (size_t rr = 0; rr < rows; ++rr) std::swap(M[rr][piv], M[rr][rank]);
      for (size_t i = 0; i < n; ++i) std::swap(V[i][piv], V[i][rank]);
      bool cleared = true;
      for (size_t c = rank + 1; c < n; ++c) {
        if (M[r][c] == 0) continue;
        Int q = M[r][c] / M[r][rank];
        if (q != 0)
          for (size_t rr = 0; rr < rows; ++rr) M[rr][c] -= q * M[rr][rank];
        if (q != 0)
          for (size_t i = 0; i < n; ++i) V[i][c] -= q * V[i][rank];
        if (M[r][c] != 0) cleared = false;
      }
      if (cleared) {
        ++rank;
        break;
      }
    }
  }
  std::vector<std::vector<Int>> basis;
  for (size_t c = rank; c < n; ++c) {
    std::vector<Int> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = V[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace

std::string AbelianFieldRecord::type_name() const {
  std::ostringstream os;
  for (size_t i = 0; i < galois_type.size(); ++i) os << (i ? "x" : "") << "C" << galois_type[i];
  return os.str();
}

std::string AbelianFieldRecord::to_csv() const {
  std::ostringstream os;
  os << conductor << ", ";
  for (size_t i = 0; i < subgroup_gens.size(); ++i) os << (i ? " " : "") << subgroup_gens[i];
  os << ", " << type_name() << ", " << discriminant;
  return os.str();
}

std::vector<AbelianFieldRecord> abelian_fields_up_to(long long X, int degree_cap) {
  if (X < 1) throw domain_error("abelian enumeration requires X >= 1");
  if (degree_cap < 2) throw domain_error("degree cap must be at least 2");
  if (X > 10000000LL) throw resource_error("conductor range too large for the abelian enumerator");
  std::vector<AbelianFieldRecord> out;

  // smallest-prime-factor sieve for conductor factorization
  std::vector<int32_t> spf(X + 1, 0);
  for (long long i = 2; i <= X; ++i) {
    if (spf[i]) continue;
    for (long long j = i; j <= X; j += i)
      if (!spf[j]) spf[j] = static_cast<int32_t>(i);
  }

  for (long long f = 3; f <= X; ++f) {
    if (f % 4 == 2) continue;  // (Z/f)^x == (Z/(f/2))^x; such f is never an exact conductor
    std::vector<std::pair<long long, int>> fac;
    long long t = f;
    while (t > 1) {
      long long p = spf[t];
      int e = 0;
      while (t % p == 0) {
        t /= p;
        ++e;
      }
      fac.push_back({p, e});
    }
    std::vector<UnitFactor> ufs = unit_group_factors(f, fac);
    if (ufs.empty()) continue;
    std::vector<long long> d;
    for (const auto& u : ufs) d.push_back(u.order);

    for (long long m = 2; m <= degree_cap; ++m) {
      // min disc for degree m at conductor f: at least one character of
      // conductor f, the other nontrivial ones of conductor >= 3
      Int min_disc = Int(f);
      for (long long i = 0; i < m - 2; ++i) min_disc *= 3;
      if (min_disc > Int(X)) break;
      for (const auto& D : dual_subgroups_of_order(d, m)) {
        // conductor-discriminant: disc = prod over chi in D of cond(chi)
        Int disc = 1;
        long long lcm_cond = 1;
        for (const Vec& c : D) {
          // 2-adic parts combine by max (the <-1> and <5> factors are 2-powers),
          // odd local conductors multiply
          long long cond2 = 1, condodd = 1;
          for (size_t i = 0; i < ufs.size(); ++i) {
            long long lc = local_conductor(ufs[i], c[i]);
            if (ufs[i].prime == 2)
              cond2 = std::max(cond2, lc);
            else
              condodd *= lc;
          }
          long long cond = cond2 * condodd;
          disc *= cond;
          lcm_cond = std::lcm(lcm_cond, cond);
        }
        if (lcm_cond != f) continue;  // field lives at a smaller conductor
        if (disc > Int(X)) continue;

        AbelianFieldRecord rec;
        rec.conductor = f;
        rec.discriminant = disc;
        rec.galois_type = invariant_factors_of_dual(D, d);
        // totally real iff chi(-1) = 1 for all chi, i.e. -1 in ker of all
        Vec minus1(d.size(), 0);
        for (size_t i = 0; i < ufs.size(); ++i) {
          if (ufs[i].prime != 2) minus1[i] = d[i] / 2;
          else if (ufs[i].role == 0 && ufs[i].exponent == 2) minus1[i] = 1;
          else if (ufs[i].role == 1) minus1[i] = 1;
        }
        rec.totally_real = true;
        {
          long long L = 1;
          for (size_t i = 0; i < d.size(); ++i) L = std::lcm(L, d[i]);
          for (const Vec& c : D) {
            long long phase = 0;
            for (size_t i = 0; i < d.size(); ++i)
              phase = (phase + mulmod_ll(mulmod_ll(c[i] % d[i], L / d[i], L), minus1[i] % d[i], L)) % L;
            if (phase % L != 0) {
              rec.totally_real = false;
              break;
            }
          }
        }
        // kernel H of the dual subgroup D, via the integer kernel of the
        // relation matrix [C | diag(L)] restricted to generator rows
        {
          long long L = 1;
          for (long long di : d) L = std::lcm(L, di);
          const size_t tn = d.size();
          const size_t k = D.size();
          std::vector<std::vector<Int>> M;
          size_t rowi = 0;
          for (const Vec& c : D) {
            std::vector<Int> row(tn + k, 0);
            for (size_t i = 0; i < tn; ++i) row[i] = Int(c[i]) * (L / d[i]);
            row[tn + rowi] = L;
            M.push_back(std::move(row));
            ++rowi;
          }
          auto basis = integer_kernel(std::move(M), tn + k);
          std::set<long long> gens;
          for (const auto& v : basis) {
            long long residue = 1;
            bool nonzero = false;
            for (size_t i = 0; i < tn; ++i) {
              long long e = static_cast<long long>(v[i] % d[i]);
              e = ((e % d[i]) + d[i]) % d[i];
              if (e) nonzero = true;
              residue = mulmod_ll(residue, powmod_ll(ufs[i].generator, e, f), f);
            }
            if (nonzero && residue != 1) gens.insert(residue);
          }
          rec.subgroup_gens.assign(gens.begin(), gens.end());
          if (rec.subgroup_gens.empty()) rec.subgroup_gens.push_back(1);
        }
        out.push_back(std::move(rec));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const AbelianFieldRecord& a, const AbelianFieldRecord& b) {
    if (a.discriminant != b.discriminant) return a.discriminant < b.discriminant;
    if (a.conductor != b.conductor) return a.conductor < b.conductor;
    return a.galois_type < b.galois_type;
  });
  return out;
}

CountReport galois_count_Q(long long X, double cutoff_C) {
  if (X < 1) throw domain_error("galois count requires X >= 1");
  CountReport rep;
  rep.X = X;
  long cutoff = degree_cutoff(Real(X), 1, cutoff_C);
  rep.degree_cap = static_cast<int>(std::min<long>(std::max<long>(cutoff, 2), 64));
  if (X >= 3) {
    // quadratic part by the dedicated sieve (fast); higher degrees by the
    // conductor enumeration, which is exact and independent
    rep.quadratic_count = fundamental_discriminants_up_to(X);
    rep.counts_by_group["C2"] = rep.quadratic_count;
    if (rep.degree_cap >= 3) {
      for (const AbelianFieldRecord& rec : abelian_fields_up_to(X, rep.degree_cap))
        if (rec.galois_type.size() != 1 || rec.galois_type[0] != 2) ++rep.counts_by_group[rec.type_name()];
    }
  }
  rep.abelian_total = 0;
  for (const auto& [k, v] : rep.counts_by_group) rep.abelian_total += v;
  rep.main_term = six_over_pi2_times(X);
  rep.residual = Real(rep.abelian_total) - rep.main_term;
  rep.residual_over_sqrt_x = rep.residual / sqrt(Real(X));
  // nonabelian part: never enumerated; bounded through the explicit certificates
  if (cutoff >= 6) {
    rep.has_nonabelian_bound = true;
    Real log_total = Real(0);
    bool any = false;
    Real lx = log(Real(X));
    for (long n = 6; n <= cutoff; ++n) {
      Real lt = explicit_constant(Int(n), 1).log_value() + holt_group_count_log(Int(n)) +
                Real(6) / sqrt(Real(n)) * lx;
      if (!any) {
        log_total = lt;
        any = true;
      } else {
        Real hi = std::max(log_total, lt), lo = std::min(log_total, lt);
        log_total = hi + log(1 + exp(lo - hi));
      }
    }
    rep.log10_nonabelian_bound = log_total / log(Real(10));
  }
  return rep;
}

Int tau_sum(int m, long long Q) {
  if (m < 1 || Q < 1) throw domain_error("tau sum requires m >= 1 and Q >= 1");
  if (static_cast<double>(m) * std::log(static_cast<double>(Q)) > 200)
    throw resource_error("tau sum guard: m log Q too large");
  std::vector<Int> t(Q + 1, 1);
  t[0] = 0;
  for (int step = 1; step < m; ++step) {
    std::vector<Int> s(Q + 1, 0);
    for (long long dd = 1; dd <= Q; ++dd)
      for (long long mult = dd; mult <= Q; mult += dd) s[mult] += t[dd];
    t = std::move(s);
  }
  Int total = 0;
  for (long long i = 1; i <= Q; ++i) total += t[i];
  return total;
}

bool bordelles_check(int m, long long Q) {
  Int s = tau_sum(m, Q);
  Real::default_precision(60);
  Real fact = 1;
  for (int i = 2; i <= m - 1; ++i) fact *= i;
  Real rhs = Real(Q) / fact * pow(log(Real(Q)) + (m - 1), m - 1);
  return Real(s) <= rhs;
}

Rat error_exponent(int d) {
  if (d < 1) throw domain_error("error exponent requires d >= 1");
  if (d <= 3) return Rat(1, 2);
  return Rat(2, d + 1);
}

std::string CountReport::to_json() const {
  json counts;
  for (const auto& [k, v] : counts_by_group) counts[k] = v;
  json j{{"X", X},
         {"counts_by_group", counts},
         {"quadratic_count", quadratic_count},
         {"abelian_total", abelian_total},
         {"degree_cap", degree_cap},
         {"main_term", main_term.convert_to<double>()},
         {"residual", residual.convert_to<double>()},
         {"residual_over_sqrt_x", residual_over_sqrt_x.convert_to<double>()}};
  if (has_nonabelian_bound) j["log10_nonabelian_bound"] = log10_nonabelian_bound.convert_to<double>();
  return j.dump(2);
}

std::string CountReport::to_text() const {
  std::ostringstream os;
  os << "X = " << X << "\n";
  for (const auto& [k, v] : counts_by_group) os << "  " << k << ": " << v << "\n";
  os << "  abelian total (exact): " << abelian_total << "\n";
  os << "  main term 6/pi^2 X = " << main_term.convert_to<double>() << "\n";
  os << "  residual = " << residual.convert_to<double>()
     << "  residual/sqrt(X) = " << residual_over_sqrt_x.convert_to<double>() << "\n";
  if (has_nonabelian_bound)
    os << "  nonabelian contribution: separately bounded above by 10^"
       << log10_nonabelian_bound.convert_to<double>() << " (not included in any exact total)\n";
  return os.str();
}

} // namespace galcount
