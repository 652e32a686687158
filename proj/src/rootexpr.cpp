#include "galcount/rootexpr.hpp"

#include <algorithm>
#include <sstream>

#include <mpfr.h>

namespace galcount {

void RootExpr::normalize() {
  std::sort(roots_.begin(), roots_.end(), [](const Term& a, const Term& b) { return a.radicand < b.radicand; });
  std::vector<Term> merged;
  for (Term& t : roots_) {
    if (!merged.empty() && merged.back().radicand == t.radicand)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Term& t) { return t.coeff == 0; }),
               merged.end());
  roots_ = std::move(merged);
}

RootExpr RootExpr::ratio_sqrt(const Rat& c, const Int& n) {
  if (n <= 0) throw std::invalid_argument("radicand must be positive");
  auto [s, m] = squarefree_decompose(n);  // n = s^2 m
  RootExpr e;
  if (m == 1) {
    e.rational_ = c / Rat(s);
    return e;
  }
  if (c != 0) e.roots_.push_back({c / Rat(s), m});
  return e;
}

RootExpr RootExpr::times_sqrt(const Rat& c, const Int& n) {
  // c*sqrt(n) = c*n / sqrt(n)
  return ratio_sqrt(c * Rat(n), n);
}

RootExpr RootExpr::operator+(const RootExpr& o) const {
  RootExpr e;
  e.rational_ = rational_ + o.rational_;
  e.roots_ = roots_;
  e.roots_.insert(e.roots_.end(), o.roots_.begin(), o.roots_.end());
  e.normalize();
  return e;
}

RootExpr RootExpr::operator-(const RootExpr& o) const { return *this + (-o); }

RootExpr RootExpr::operator-() const {
  RootExpr e;
  e.rational_ = -rational_;
  e.roots_ = roots_;
  for (Term& t : e.roots_) t.coeff = -t.coeff;
  return e;
}

RootExpr RootExpr::scaled(const Rat& c) const {
  RootExpr e;
  e.rational_ = rational_ * c;
  if (c != 0) {
    e.roots_ = roots_;
    for (Term& t : e.roots_) t.coeff *= c;
  }
  return e;
}

RootExpr RootExpr::div_sqrt(const Int& n) const {
  RootExpr e = ratio_sqrt(rational_, n);
  for (const Term& t : roots_) e = e + ratio_sqrt(t.coeff, t.radicand * n);
  return e;
}

RootExpr RootExpr::times_sqrt_of(const Int& n) const {
  RootExpr e = times_sqrt(rational_, n);
  for (const Term& t : roots_) e = e + times_sqrt(t.coeff / Rat(t.radicand), t.radicand * n);
  return e;
}

namespace {

struct MpfrInterval {
  mpfr_t lo, hi;
  explicit MpfrInterval(unsigned bits) {
    mpfr_init2(lo, bits);
    mpfr_init2(hi, bits);
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
  }
  ~MpfrInterval() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
  MpfrInterval(const MpfrInterval&) = delete;
  MpfrInterval& operator=(const MpfrInterval&) = delete;
};

// adds c / sqrt(m) (m = 1 allowed) to the interval, outward rounded
void add_term(MpfrInterval& acc, const Rat& c, const Int& m, unsigned bits) {
  mpfr_t clo, chi, slo, shi, tlo, thi;
  mpfr_inits2(bits, clo, chi, slo, shi, tlo, thi, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(clo, c.backend().data(), MPFR_RNDD);
  mpfr_set_q(chi, c.backend().data(), MPFR_RNDU);
  mpfr_set_z(slo, Int(m).backend().data(), MPFR_RNDD);
  mpfr_set_z(shi, Int(m).backend().data(), MPFR_RNDU);
  mpfr_sqrt(slo, slo, MPFR_RNDD);
  mpfr_sqrt(shi, shi, MPFR_RNDU);
  if (c >= 0) {
    mpfr_div(tlo, clo, shi, MPFR_RNDD);
    mpfr_div(thi, chi, slo, MPFR_RNDU);
  } else {
    mpfr_div(tlo, clo, slo, MPFR_RNDD);
    mpfr_div(thi, chi, shi, MPFR_RNDU);
  }
  mpfr_add(acc.lo, acc.lo, tlo, MPFR_RNDD);
  mpfr_add(acc.hi, acc.hi, thi, MPFR_RNDU);
  mpfr_clears(clo, chi, slo, shi, tlo, thi, static_cast<mpfr_ptr>(nullptr));
}

} // namespace

int RootExpr::compare(const RootExpr& o) const {
  RootExpr diff = *this - o;
  if (diff.roots_.empty()) {
    if (diff.rational_ == 0) return 0;
    return diff.rational_ > 0 ? 1 : -1;
  }
  // nonzero by linear independence of square roots; find the sign numerically
  for (unsigned bits = 128; bits <= 32768; bits *= 2) {
    MpfrInterval acc(bits);
    add_term(acc, diff.rational_, Int(1), bits);
    for (const Term& t : diff.roots_) add_term(acc, t.coeff, t.radicand, bits);
    if (mpfr_sgn(acc.lo) > 0) return 1;
    if (mpfr_sgn(acc.hi) < 0) return -1;
  }
  throw std::runtime_error("root expression comparison did not resolve at 32768 bits");
}

Real RootExpr::evaluate(unsigned bits) const {
  Real::default_precision(static_cast<unsigned>(bits * 0.302) + 2);
  Real acc(rational_);
  for (const Term& t : roots_) acc += Real(t.coeff) / sqrt(Real(t.radicand));
  return acc;
}

double RootExpr::to_double() const { return static_cast<double>(evaluate(256)); }

std::string RootExpr::str() const {
  std::ostringstream os;
  bool printed = false;
  if (rational_ != 0 || roots_.empty()) {
    os << rational_;
    printed = true;
  }
  for (const Term& t : roots_) {
    if (printed) os << " + ";
    os << "(" << t.coeff << ")/sqrt(" << t.radicand << ")";
    printed = true;
  }
  return os.str();
}

} // namespace galcount
