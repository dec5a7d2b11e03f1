// Local radius of comparison on K_0 classes: exact on (multiples of) the
// canonical classes [1] = (1,0), [p1] = (1/2, 1/2), [p2] = (1/2, -1/2);
// antitone comparison bounds against those classes elsewhere.

#include "mvs/k0.hpp"

namespace mvs {

namespace {

// Certified g >= k * p in the order (difference strictly inside the cone).
bool dominates(const Enclosure& lam, const K0Element& g, const Rat& px,
               const Rat& py, const Rat& k) {
  Rat dx = g.x - k * px;
  Rat dy = g.y - k * py;
  return dx > lam.hi * dy.abs();
}

}  // namespace

LrcResult lrc_eval(const TwoSeedParams& p, const K0Element& g, const Rat& eps) {
  if (eps.sgn() <= 0) throw domain_error("eps must be positive");
  OrderedGroupModel model = OrderedGroupModel::from_params(p, eps);
  ConeResult pos = cone_contains(model, g);
  if (g.x.sgn() == 0 && g.y.sgn() == 0)
    throw domain_error("lrc is defined on nonzero positive classes");
  if (pos.verdict == ConeVerdict::NotPositive)
    throw domain_error("lrc is defined on positive classes; the argument is not positive");
  if (pos.verdict == ConeVerdict::Unknown)
    throw unknown_error("positivity of the class could not be decided");

  const std::optional<Rat> k1 = p.kappa1_witness();
  const std::optional<Rat> k2 = p.kappa2_witness();
  const Rat half_h = Rat(p.h) / Rat(2);

  Enclosure rc = (k1 && k2) ? Enclosure::exact(std::max(*k1, *k2) * half_h)
                            : rc_enclosure(p.to_descriptor(), eps);

  LrcResult res;

  // Multiples of the unit class [1] = (1, 0).
  if (g.y.sgn() == 0) {
    res.kind = LrcResult::Kind::Exact;
    res.value = scale(rc, g.x.reciprocal());
    res.basis = "multiple of [1]";
    return res;
  }
  // Multiples of the corners [p1] = (1/2, 1/2) and [p2] = (1/2, -1/2).
  if (g.x == g.y || g.x == -g.y) {
    CornerRc corner = corner_rc(p, eps);
    res.kind = LrcResult::Kind::Exact;
    Rat inv2x = (Rat(2) * g.x).reciprocal();
    if (g.x == g.y) {
      res.value = scale(corner.rc_p1, inv2x);
      res.basis = "multiple of [p1]";
    } else {
      res.value = scale(corner.rc_p2, inv2x);
      res.basis = "multiple of [p2]";
    }
    return res;
  }

  // General positive class: lrc is antitone, so g <= n [1] gives a lower
  // bound rc/n and k [p] <= g gives an upper bound rc_p/k.
  res.kind = LrcResult::Kind::Bounds;
  const Rat ay = g.y.abs();
  Int n = least_integer_gt(g.x + model.lambda.hi * ay);  // n [1] >= g certified
  res.lower = rc.lo / Rat(n);
  res.basis = "g <= " + Rat(n).str() + "[1]";

  std::optional<Rat> upper;
  std::string upper_basis;
  auto consider = [&](const Rat& bound, const std::string& what) {
    if (!upper || bound < *upper) {
      upper = bound;
      upper_basis = what;
    }
  };
  // Largest multiple of [1] below g: m < x - lambda_hi |y|.
  if (Int m = least_integer_gt(g.x - model.lambda.hi * ay) - 1; m >= 1)
    consider(rc.hi / Rat(m), "g >= " + Rat(m).str() + "[1]");
  if (k1 && k2) {
    CornerRc corner = corner_rc(p, eps);
    const Rat half(1, 2);
    Int cap = floor_of(Rat(2) * g.x);
    for (Int m = cap, steps = 0; m >= 1 && steps < 10000; --m, ++steps) {
      if (dominates(model.lambda, g, half, half, Rat(m))) {
        consider(corner.rc_p1.hi / Rat(m), "g >= " + Rat(m).str() + "[p1]");
        break;
      }
    }
    for (Int m = cap, steps = 0; m >= 1 && steps < 10000; --m, ++steps) {
      if (dominates(model.lambda, g, half, -half, Rat(m))) {
        consider(corner.rc_p2.hi / Rat(m), "g >= " + Rat(m).str() + "[p2]");
        break;
      }
    }
  }
  if (upper) {
    res.upper = upper;
    res.basis += "; " + upper_basis;
  }
  return res;
}

}  // namespace mvs
