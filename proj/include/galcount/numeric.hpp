#ifndef GALCOUNT_NUMERIC_HPP
#define GALCOUNT_NUMERIC_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace galcount {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;  // dynamic precision

/// Trial division up to 10^6, then Pollard rho. Returns (prime, exponent)
/// pairs sorted by prime. Desk-scale inputs only.
std::vector<std::pair<Int, int>> factorize(Int n);

/// Splits n = s^2 * m with m squarefree.
std::pair<Int, Int> squarefree_decompose(const Int& n);

bool is_probable_prime(const Int& n);

} // namespace galcount

#endif
