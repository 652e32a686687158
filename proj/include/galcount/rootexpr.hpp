#ifndef GALCOUNT_ROOTEXPR_HPP
#define GALCOUNT_ROOTEXPR_HPP

#include <string>
#include <vector>

#include "galcount/numeric.hpp"

namespace galcount {

/// Exact value of the form  rational + sum coeff_i / sqrt(radicand_i),
/// with distinct squarefree radicands > 1 in canonical sorted order.
/// Comparisons are exact: a nonzero canonical form is nonzero as a real
/// number (square roots of distinct squarefree integers are linearly
/// independent over Q), and its sign is resolved by outward-rounded
/// interval evaluation at escalating precision.
class RootExpr {
public:
  struct Term {
    Rat coeff;     // nonzero
    Int radicand;  // squarefree, > 1
  };

  RootExpr() = default;
  RootExpr(const Rat& r) : rational_(r) {}          // NOLINT(google-explicit-constructor)
  RootExpr(long v) : rational_(v) {}                // NOLINT(google-explicit-constructor)

  /// c / sqrt(n) for arbitrary positive n (canonicalized).
  static RootExpr ratio_sqrt(const Rat& c, const Int& n);
  /// c * sqrt(n).
  static RootExpr times_sqrt(const Rat& c, const Int& n);

  const Rat& rational_part() const { return rational_; }
  const std::vector<Term>& root_terms() const { return roots_; }
  bool is_rational() const { return roots_.empty(); }

  RootExpr operator+(const RootExpr& o) const;
  RootExpr operator-(const RootExpr& o) const;
  RootExpr operator-() const;
  RootExpr scaled(const Rat& c) const;       // c * (*this)
  RootExpr div_sqrt(const Int& n) const;     // (*this) / sqrt(n)
  RootExpr times_sqrt_of(const Int& n) const;  // (*this) * sqrt(n)

  int compare(const RootExpr& o) const;  // -1, 0, +1
  bool operator==(const RootExpr& o) const { return compare(o) == 0; }
  bool operator!=(const RootExpr& o) const { return compare(o) != 0; }
  bool operator<(const RootExpr& o) const { return compare(o) < 0; }
  bool operator<=(const RootExpr& o) const { return compare(o) <= 0; }
  bool operator>(const RootExpr& o) const { return compare(o) > 0; }
  bool operator>=(const RootExpr& o) const { return compare(o) >= 0; }

  Real evaluate(unsigned bits = 256) const;
  double to_double() const;
  std::string str() const;  // "p/q + (u/v)/sqrt(m)"

private:
  void normalize();
  Rat rational_ = 0;
  std::vector<Term> roots_;
};

} // namespace galcount

#endif
