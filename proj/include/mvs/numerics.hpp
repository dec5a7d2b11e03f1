// Exact rational arithmetic and certified interval enclosures.
//
// Rat     — arbitrary-precision rational, always canonical (lowest terms,
//           positive denominator); serialized as "p/q".
// Frac    — unreduced big-integer fraction used internally for deep partial
//           products, where gcd canonicalization would dominate the runtime;
//           all comparisons are cross-multiplied and exact.
// Enclosure — closed rational interval [lo, hi] with a certification flag:
//           when certified, the represented limit provably lies in [lo, hi].

#ifndef MVS_NUMERICS_HPP
#define MVS_NUMERICS_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "mvs/errors.hpp"

namespace mvs {

using Int = mpz_class;

// ---------------------------------------------------------------------------
// Rat: canonical arbitrary-precision rational.
// ---------------------------------------------------------------------------
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rat(const Int& n) : v_(n) {}
  Rat(const Int& num, const Int& den);
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  // Parses "p/q" or "p" with optional leading '-'; rejects everything else
  // (in particular decimal notation).
  static Rat parse(const std::string& text);

  // Canonical textual form: "p" when the denominator is 1, else "p/q".
  std::string str() const;

  Int num() const { return v_.get_num(); }
  Int den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sgn() const { return ::sgn(v_); }
  Rat abs() const { return Rat(mpq_class(::abs(v_))); }
  Rat reciprocal() const;

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b);
  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& b) { v_ += b.v_; return *this; }
  Rat& operator-=(const Rat& b) { v_ -= b.v_; return *this; }
  Rat& operator*=(const Rat& b) { v_ *= b.v_; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

 private:
  mpq_class v_;
};

// Largest integer <= q and least integer > q.
Int floor_of(const Rat& q);
Int least_integer_gt(const Rat& q);
// Least integer >= q (= q itself when q is an integer).
Int ceil_of(const Rat& q);

// ceil(a/b) for integers, b > 0.
Int ceil_div(const Int& a, const Int& b);

// The rational with the smallest denominator in the closed interval [lo, hi]
// (ties broken toward the smaller numerator).  Stern–Brocot / continued
// fraction walk; used to pick reproducible small-denominator beta values.
Rat simplest_rational_in(const Rat& lo, const Rat& hi);

// ---------------------------------------------------------------------------
// Frac: unreduced fraction num/den with den > 0.  No canonicalization ever
// happens; all operations are plain integer multiplications/additions.
// ---------------------------------------------------------------------------
struct Frac {
  Int num;
  Int den;  // > 0

  Frac() : num(0), den(1) {}
  Frac(Int n, Int d) : num(std::move(n)), den(std::move(d)) {}
  explicit Frac(const Rat& r) : num(r.num()), den(r.den()) {}

  // Exact comparison with another fraction / rational, cross-multiplied.
  int cmp(const Frac& o) const { return ::cmp(Int(num * o.den), Int(o.num * den)); }
  int cmp(const Rat& r) const { return cmp(Frac(r)); }
  int sgn() const { return ::sgn(num); }

  Frac mul(const Int& a, const Int& b) const { return Frac(num * a, den * b); }
  Frac sub(const Frac& o) const { return Frac(num * o.den - o.num * den, den * o.den); }

  // Canonical rational value (performs the one gcd this type otherwise avoids).
  Rat to_rat() const { return Rat(num, den); }

  std::size_t bits() const {
    return mpz_sizeinbase(num.get_mpz_t(), 2) + mpz_sizeinbase(den.get_mpz_t(), 2);
  }
};

// floor(a/b) for fractions a, b with b > 0: floor((a.num*b.den)/(a.den*b.num)).
Int floor_quotient(const Frac& a, const Frac& b);

// ---------------------------------------------------------------------------
// Enclosure
// ---------------------------------------------------------------------------
struct Enclosure {
  Rat lo;
  Rat hi;
  bool certified = false;

  Enclosure() = default;
  Enclosure(Rat l, Rat h, bool cert);

  static Enclosure exact(const Rat& v) { return Enclosure(v, v, true); }

  Rat width() const { return hi - lo; }
  bool contains(const Rat& q) const { return lo <= q && q <= hi; }
};

enum class Cmp { Less, Greater, Unknown };

// Less iff e.hi < q; Greater iff e.lo > q; Unknown otherwise.
Cmp compare(const Enclosure& e, const Rat& q);

// [P*tail.lo, P*tail.hi] where P is the exact product of terms; every term
// must lie in (0, 1]; tail must satisfy 0 <= tail.lo, tail.hi <= 1.
// Certified iff tail is certified.
Enclosure product_enclosure(const std::vector<Rat>& terms, const Enclosure& tail);

// Interval helpers (exact endpoint arithmetic).
Enclosure scale(const Enclosure& e, const Rat& positive_factor);
Enclosure add(const Enclosure& a, const Enclosure& b);
// Reciprocal of an interval with lo > 0.
Enclosure reciprocal(const Enclosure& e);
// Enclosure of t*y*lambda for exact t*y of either sign.
Enclosure scale_signed(const Enclosure& e, const Rat& factor);

}  // namespace mvs

#endif  // MVS_NUMERICS_HPP
