#include "mvs/numerics.hpp"

#include <cctype>

namespace mvs {

Rat::Rat(const Int& num, const Int& den) : v_(num, den) {
  if (den == 0) throw domain_error("rational with zero denominator");
  v_.canonicalize();
}

Rat Rat::parse(const std::string& text) {
  // Accept: [-]digits or [-]digits/digits (the sign, if any, leads the whole
  // literal).  Nothing else (no decimals, no whitespace, no exponents) — the
  // artifact's guarantees are exact.
  auto is_int = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = (allow_sign && s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_int(text, true)) throw parse_error("not a rational literal: '" + text + "'");
    return Rat(Int(text));
  }
  const std::string p = text.substr(0, slash);
  const std::string q = text.substr(slash + 1);
  if (!is_int(p, true) || !is_int(q, false))
    throw parse_error("not a rational literal: '" + text + "'");
  Int den(q);
  if (den == 0) throw parse_error("zero denominator in '" + text + "'");
  return Rat(Int(p), den);
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat Rat::reciprocal() const {
  if (v_ == 0) throw domain_error("reciprocal of zero");
  return Rat(mpq_class(1 / v_));
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.v_ == 0) throw domain_error("division by zero rational");
  return Rat(mpq_class(a.v_ / b.v_));
}

Int floor_of(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
  return r;
}

Int least_integer_gt(const Rat& q) { return floor_of(q) + 1; }

Int ceil_of(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
  return r;
}

Int ceil_div(const Int& a, const Int& b) {
  if (b <= 0) throw domain_error("ceil_div requires positive divisor");
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rat simplest_rational_in(const Rat& lo, const Rat& hi) {
  if (lo > hi) throw domain_error("simplest_rational_in: empty interval");
  // Recursive continued-fraction descent: the simplest rational in [lo, hi]
  // with 0 < lo is floor(lo)+simplest([frac part]) when floor(lo) < floor(hi)
  // splits the interval around an integer.
  if (lo.sgn() <= 0 && hi.sgn() >= 0) return Rat(0);
  if (hi.sgn() < 0) return -simplest_rational_in(-hi, -lo);
  // Now 0 < lo <= hi.
  Int fl = floor_of(lo);
  if (Rat(fl) == lo) return lo;          // lo itself is an integer
  if (Rat(Int(fl + 1)) <= hi) return Rat(Int(fl + 1));  // an integer lies inside
  // Both endpoints share the integer part fl; recurse on reciprocal of the
  // fractional parts (order swaps).
  Rat a = lo - Rat(fl);
  Rat b = hi - Rat(fl);
  Rat inner = simplest_rational_in(b.reciprocal(), a.reciprocal());
  return Rat(fl) + inner.reciprocal();
}

Int floor_quotient(const Frac& a, const Frac& b) {
  if (b.sgn() <= 0) throw domain_error("floor_quotient requires positive divisor");
  Int num = a.num * b.den;
  Int den = a.den * b.num;
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return r;
}

Enclosure::Enclosure(Rat l, Rat h, bool cert)
    : lo(std::move(l)), hi(std::move(h)), certified(cert) {
  if (lo > hi) throw domain_error("enclosure with lo > hi");
}

Cmp compare(const Enclosure& e, const Rat& q) {
  if (e.hi < q) return Cmp::Less;
  if (e.lo > q) return Cmp::Greater;
  return Cmp::Unknown;
}

Enclosure product_enclosure(const std::vector<Rat>& terms, const Enclosure& tail) {
  if (tail.lo.sgn() < 0 || tail.hi > Rat(1))
    throw precondition_error("product_enclosure: tail must lie within [0, 1]");
  Rat p(1);
  for (const Rat& t : terms) {
    if (t.sgn() <= 0 || t > Rat(1))
      throw domain_error("product_enclosure: term outside (0, 1]: " + t.str());
    p *= t;
  }
  return Enclosure(p * tail.lo, p * tail.hi, tail.certified);
}

Enclosure scale(const Enclosure& e, const Rat& positive_factor) {
  if (positive_factor.sgn() < 0) throw domain_error("scale: negative factor");
  return Enclosure(e.lo * positive_factor, e.hi * positive_factor, e.certified);
}

Enclosure add(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo + b.lo, a.hi + b.hi, a.certified && b.certified);
}

Enclosure reciprocal(const Enclosure& e) {
  if (e.lo.sgn() <= 0) throw domain_error("reciprocal: enclosure not strictly positive");
  return Enclosure(e.hi.reciprocal(), e.lo.reciprocal(), e.certified);
}

Enclosure scale_signed(const Enclosure& e, const Rat& factor) {
  Rat a = e.lo * factor;
  Rat b = e.hi * factor;
  if (a <= b) return Enclosure(a, b, e.certified);
  return Enclosure(b, a, e.certified);
}

}  // namespace mvs
