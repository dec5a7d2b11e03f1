#include "mvs/k0.hpp"

namespace mvs {

OrderedGroupModel OrderedGroupModel::from_params(const TwoSeedParams& p, const Rat& eps,
                                                 const Int& amplification) {
  if (amplification < 1) throw domain_error("amplification must be >= 1");
  OrderedGroupModel m;
  m.lambda = lambda_enclosure(p, eps);
  m.unit = K0Element{Rat(amplification), Rat(0)};
  return m;
}

K0Element GroupAutomorphism::apply(const K0Element& g) const {
  return K0Element{a * g.x + b * g.y, c * g.x + d * g.y};
}

GroupAutomorphism GroupAutomorphism::inverse() const {
  Rat dt = det();
  if (dt.sgn() == 0) throw domain_error("automorphism is not invertible");
  return GroupAutomorphism{d / dt, -b / dt, -c / dt, a / dt};
}

bool GroupAutomorphism::is_identity() const {
  return a == Rat(1) && b == Rat(0) && c == Rat(0) && d == Rat(1);
}

bool GroupAutomorphism::is_sigma() const {
  return a == Rat(1) && b == Rat(0) && c == Rat(0) && d == Rat(-1);
}

K0Element gamma_image(const TwoSeedParams& p, std::size_t n, const Int& m1,
                      const Int& m2) {
  return K0Element{Rat(m1 + m2, 2 * p.r(n)), Rat(m1 - m2, 2 * p.r_prime(n))};
}

Matrix af_transition(const TwoSeedParams& p, std::size_t n) {
  const Int& l = p.l->at(n + 1);
  const Int& c = p.c->at(n + 1);
  Int lc = l - c;
  if (lc < 0) throw descriptor_error("mu entry l - c is negative");
  return Matrix{{lc, c}, {c, lc}};
}

ConeResult cone_contains(const OrderedGroupModel& model, const K0Element& g,
                         const std::function<bool(Enclosure&)>& refine,
                         int max_refine) {
  if (g.x.sgn() == 0 && g.y.sgn() == 0) return ConeResult{ConeVerdict::Positive, Rat(0)};
  Enclosure lam = model.lambda;
  const Rat ay = g.y.abs();
  for (int round = 0;; ++round) {
    if (g.x > lam.hi * ay)
      return ConeResult{ConeVerdict::Positive, g.x - lam.hi * ay};
    if (g.x.sgn() <= 0 || g.x < lam.lo * ay)
      return ConeResult{ConeVerdict::NotPositive, lam.lo * ay - g.x};
    if (round >= max_refine || !refine || !refine(lam)) break;
  }
  // Undecided strip lambda_lo |y| <= x <= lambda_hi |y|.
  Rat gap = std::min(g.x - lam.lo * ay, lam.hi * ay - g.x);
  return ConeResult{ConeVerdict::Unknown, gap};
}

Enclosure state_eval(const OrderedGroupModel& model, const Rat& t,
                     const K0Element& g) {
  if (t.abs() > Rat(1)) throw domain_error("state parameter must lie in [-1, 1]");
  Enclosure term = scale_signed(model.lambda, t * g.y);
  return Enclosure(g.x + term.lo, g.x + term.hi, term.certified);
}

std::vector<GroupAutomorphism> canonical_automorphisms(const OrderedGroupModel& model) {
  if (!model.lambda.certified || !(model.lambda.lo > Rat(0)))
    throw precondition_error(
        "automorphism classification requires lambda certified positive");
  return {GroupAutomorphism{Rat(1), Rat(0), Rat(0), Rat(1)},
          GroupAutomorphism{Rat(1), Rat(0), Rat(0), Rat(-1)}};
}

std::optional<ConeWitness> cone_preservation_witness(
    const OrderedGroupModel& model, const GroupAutomorphism& Q,
    const std::vector<Rat>& y_grid, std::size_t n_max) {
  if (!Q.fixes_unit_direction())
    throw precondition_error("witness search requires Q to fix (1, 0)");
  if (Q.is_identity() || Q.is_sigma()) return std::nullopt;
  const GroupAutomorphism Qinv = Q.inverse();  // throws if Q is singular

  std::vector<Rat> grid = y_grid;
  if (grid.empty()) {
    // Moderate magnitudes drive the geometric-escape cases (|d| != 1); the
    // targeted values near the cone boundary 1/lambda handle involution-type
    // maps, whose only nontrivial images are (1 + b y, -y).
    grid = {Rat(1, 4), Rat(1, 2), Rat(1), Rat(2), Rat(4)};
    if (model.lambda.hi.sgn() > 0) {
      Rat L = model.lambda.hi.reciprocal();
      grid.push_back(L * Rat(1, 2));
      grid.push_back(L * Rat(3, 4));
      grid.push_back(L * Rat(7, 8));
      for (const Rat& b : {Q.b, Qinv.b}) {
        Rat ab = b.abs();
        if (ab.sgn() > 0 && model.lambda.lo + ab > model.lambda.hi) {
          // Midpoint of (1/(lambda_lo + |b|), 1/lambda_hi): start certified
          // positive, image certified outside once 1 < (lambda_lo + |b|) y.
          grid.push_back((((model.lambda.lo + ab).reciprocal()) + L) * Rat(1, 2));
        }
      }
    }
  }

  for (const Rat& y : grid) {
    if (y.sgn() < 0) throw domain_error("y grid entries must be nonnegative");
    for (int ysign : {-1, +1}) {
      K0Element start{Rat(1), ysign < 0 ? -y : y};
      if (cone_contains(model, start).verdict != ConeVerdict::Positive) continue;
      for (bool inv : {false, true}) {
        const GroupAutomorphism& M = inv ? Qinv : Q;
        K0Element w = start;
        for (std::size_t n = 1; n <= n_max; ++n) {
          w = M.apply(w);
          if (cone_contains(model, w).verdict == ConeVerdict::NotPositive)
            return ConeWitness{start, w, n, inv};
        }
      }
    }
  }
  return std::nullopt;
}

bool DivisibilityReport::all_found() const {
  for (const auto& e : entries)
    if (!e.n_r || !e.n_r_prime) return false;
  return true;
}

DivisibilityReport verify_divisibility(const TwoSeedParams& p, unsigned long K,
                                       std::size_t depth) {
  if (K < 1) throw domain_error("K must be >= 1");
  DivisibilityReport rep;
  rep.entries.resize(K);
  std::vector<Int> rm(K), rpm(K);
  for (unsigned long k = 1; k <= K; ++k) {
    rep.entries[k - 1].k = k;
    rm[k - 1] = Int(1) % Int(k);   // r(0) = 1
    rpm[k - 1] = Int(1) % Int(k);  // r'(0) = 1
    if (rm[k - 1] == 0) rep.entries[k - 1].n_r = 0;
    if (rpm[k - 1] == 0) rep.entries[k - 1].n_r_prime = 0;
  }
  std::size_t remaining = 0;
  for (const auto& e : rep.entries) remaining += (!e.n_r) + (!e.n_r_prime);

  for (std::size_t n = 1; n <= depth && remaining > 0; ++n) {
    Int ln, cn;
    try {
      ln = p.l->at(n);
      cn = p.c->at(n);
    } catch (const budget_exceeded&) {
      break;
    } catch (const descriptor_error&) {
      break;
    }
    Int lp = ln - 2 * cn;
    for (unsigned long k = 1; k <= K; ++k) {
      auto& e = rep.entries[k - 1];
      const Int kk(static_cast<long>(k));
      if (!e.n_r) {
        rm[k - 1] = (rm[k - 1] * ln) % kk;
        if (rm[k - 1] == 0) {
          e.n_r = n;
          --remaining;
        }
      }
      if (!e.n_r_prime) {
        rpm[k - 1] = (rpm[k - 1] * lp) % kk;
        if (rpm[k - 1] == 0) {
          e.n_r_prime = n;
          --remaining;
        }
      }
    }
    rep.depth_reached = n;
  }
  return rep;
}

}  // namespace mvs
