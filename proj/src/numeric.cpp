#include "galcount/numeric.hpp"

#include <map>

namespace galcount {

bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.backend().data(), 40) != 0;
}

namespace {

Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  Int x = 2, y = 2, d = 1, c = 1;
  while (true) {
    x = 2; y = 2; d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      d = gcd(abs(x - y), n);
    }
    if (d != n) return d;
    ++c;
  }
}

void factor_rec(Int n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Int d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

} // namespace

std::vector<std::pair<Int, int>> factorize(Int n) {
  if (n <= 0) throw std::invalid_argument("factorize: positive input required");
  std::map<Int, int> fac;
  for (long p = 2; p < 1000000 && Int(p) * p <= n; p == 2 ? p = 3 : p += 2) {
    while (n % p == 0) {
      ++fac[p];
      n /= p;
    }
  }
  factor_rec(n, fac);
  return {fac.begin(), fac.end()};
}

std::pair<Int, Int> squarefree_decompose(const Int& n) {
  Int s = 1, m = 1;
  for (const auto& [p, e] : factorize(n)) {
    for (int i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) m *= p;
  }
  return {s, m};
}

} // namespace galcount
