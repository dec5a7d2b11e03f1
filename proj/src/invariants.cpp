#include "mvs/invariants.hpp"

#include <algorithm>

namespace mvs {

namespace {

// True when a serialized sequence emits `v` at every index.
bool emits_constant(const nlohmann::json& j, long v) {
  if (!j.contains("tail") || !j.contains("prefix")) return false;
  const auto& tail = j.at("tail");
  if (tail.value("kind", std::string()) != "constant") return false;
  if (!tail.contains("value") || tail.at("value") != v) return false;
  for (const auto& p : j.at("prefix"))
    if (p != v) return false;
  return true;
}

Rat rat_half() { return Rat(1, 2); }

}  // namespace

// ---------------------------------------------------------------------------
// TwoSeedParams
// ---------------------------------------------------------------------------

TwoSeedParams TwoSeedParams::from_descriptor(const SystemDescriptor& desc,
                                             std::optional<Rat> beta_in) {
  desc.validate_shape();
  if (!desc.is_symmetric_two_seed())
    throw domain_error("two-seed analysis requires the symmetric two-seed mu form");
  if (desc.m != 2)
    throw domain_error("two-seed analysis requires exactly two seeds");
  if (desc.seeds[0].dim != desc.seeds[1].dim)
    throw domain_error("two-seed analysis requires seeds of equal dimension");
  if (desc.r0.size() != 2 || desc.r0[0] != 1 || desc.r0[1] != 1)
    throw domain_error("two-seed analysis requires r_1(0) = r_2(0) = 1");

  TwoSeedParams p;
  p.l = desc.mu.l;
  p.c = desc.mu.c;
  p.d1 = desc.d[0];
  p.d2 = desc.d[1];
  p.h = desc.seeds[0].dim;
  p.seeds = desc.seeds;
  p.beta = std::move(beta_in);
  if (!p.beta) {
    if (auto w = p.d2->ratio_witness();
        w && w->base->canonical_key() == p.l->canonical_key())
      p.beta = w->value;
  }
  return p;
}

SystemDescriptor TwoSeedParams::to_descriptor() const {
  SystemDescriptor desc;
  desc.m = 2;
  desc.seeds = seeds;
  if (desc.seeds.empty())
    desc.seeds = {SeedSpace{h, true, true}, SeedSpace{h, true, true}};
  desc.d = {d1, d2};
  desc.mu.kind = MuSpec::Kind::SymmetricTwoSeed;
  desc.mu.l = l;
  desc.mu.c = c;
  desc.r0 = {Int(1), Int(1)};
  desc.diagonal = true;
  return desc;
}

void TwoSeedParams::ensure_locked(std::size_t n) const {
  auto& c_ = *cache_;
  if (c_.r.empty()) {
    c_.r.emplace_back(1);
    c_.rp.emplace_back(1);
    c_.s1.emplace_back(1);
    c_.s2.emplace_back(1);
    c_.t.emplace_back(0);
  }
  while (c_.r.size() <= n) {
    const std::size_t k = c_.r.size();
    const Int& lk = l->at(k);
    const Int& ck = c->at(k);
    const Int& d1k = d1->at(k);
    const Int& d2k = d2->at(k);
    Int lp = lk - 2 * ck;
    if (lp < 1)
      throw descriptor_error("l(n) - 2c(n) must be >= 1 at n = " + std::to_string(k));
    if (d1k < 1 || d2k < 1)
      throw descriptor_error("d_j(n) must be >= 1 at n = " + std::to_string(k));
    const Int& r_prev = c_.r[k - 1];
    const Int& t_prev = c_.t[k - 1];
    c_.t.push_back(d1k * t_prev + ck * (r_prev - t_prev));
    c_.r.push_back(r_prev * lk);
    c_.rp.push_back(c_.rp[k - 1] * lp);
    c_.s1.push_back(c_.s1[k - 1] * d1k);
    c_.s2.push_back(c_.s2[k - 1] * d2k);
  }
}

const Int& TwoSeedParams::r(std::size_t n) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  ensure_locked(n);
  return cache_->r[n];
}
const Int& TwoSeedParams::r_prime(std::size_t n) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  ensure_locked(n);
  return cache_->rp[n];
}
const Int& TwoSeedParams::s1(std::size_t n) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  ensure_locked(n);
  return cache_->s1[n];
}
const Int& TwoSeedParams::s2(std::size_t n) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  ensure_locked(n);
  return cache_->s2[n];
}
const Int& TwoSeedParams::t(std::size_t n) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  ensure_locked(n);
  return cache_->t[n];
}

std::optional<Rat> TwoSeedParams::kappa1_witness() const {
  if (auto w = d1->ratio_witness();
      w && w->base->canonical_key() == l->canonical_key())
    return w->value;
  return std::nullopt;
}

std::optional<Rat> TwoSeedParams::kappa2_witness() const {
  if (beta) return beta;
  if (auto w = d2->ratio_witness();
      w && w->base->canonical_key() == l->canonical_key())
    return w->value;
  return std::nullopt;
}

bool TwoSeedParams::c_is_one() const { return emits_constant(c->to_json(), 1); }

Frac u_value(const TwoSeedParams& p, std::size_t n) {
  return Frac(p.r(n) - p.t(n), p.s1(n));
}

// ---------------------------------------------------------------------------
// kappa_j
// ---------------------------------------------------------------------------

Enclosure kappa_enclosure(const SystemDescriptor& desc, std::size_t j, const Rat& eps,
                          std::size_t max_depth) {
  desc.validate_shape();
  if (j < 1 || j > static_cast<std::size_t>(desc.m))
    throw domain_error("seed index out of range");
  if (eps.sgn() <= 0) throw domain_error("eps must be positive");

  // Exact via a ratio-product witness: in the symmetric two-seed form
  // r_j(n) = prod l(k), so prod d_j(k)/l(k) is exactly s_j(n)/r_j(n).
  if (desc.is_symmetric_two_seed()) {
    if (auto w = desc.d[j - 1]->ratio_witness();
        w && w->base->canonical_key() == desc.mu.l->canonical_key())
      return Enclosure::exact(w->value);
  }

  // Exact for a single seed with d(n) = mu_{1,1}(n) over the declared depth:
  // the ratio s/r is identically 1/r(0).
  if (desc.m == 1 && desc.mu.kind == MuSpec::Kind::Explicit) {
    bool all_equal = true;
    try {
      for (std::size_t n = 1; n <= desc.mu.tables.size(); ++n)
        if (desc.d[0]->at(n) != desc.mu.tables[n - 1][0][0]) {
          all_equal = false;
          break;
        }
    } catch (const error&) {
      all_equal = false;
    }
    if (all_equal && !desc.mu.tables.empty())
      return Enclosure::exact(Rat(Int(1), desc.r0[0]));
  }

  // Generic: the ratio s_j(n)/r_j(n) is nonincreasing, so the limit lies in
  // [0, partial]; no certified lower bound is available without a witness.
  std::size_t deepest = 0;
  for (std::size_t n = 1; n <= max_depth; ++n) {
    try {
      desc.r(n);
      desc.s(n);
    } catch (const budget_exceeded&) {
      break;
    } catch (const descriptor_error&) {
      break;
    }
    deepest = n;
    if ((n & (n - 1)) == 0) {  // geometric checkpoints to limit gcd work
      Rat ratio(desc.s(n)[j - 1], desc.r(n)[j - 1]);
      if (ratio <= eps) return Enclosure(Rat(0), ratio, false);
    }
  }
  Rat ratio(desc.s(deepest)[j - 1], desc.r(deepest)[j - 1]);
  return Enclosure(Rat(0), ratio, false);
}

// ---------------------------------------------------------------------------
// rc and drr
// ---------------------------------------------------------------------------

namespace {

Enclosure seed_weighted_max(const SystemDescriptor& desc, const Rat& eps,
                            std::size_t max_depth) {
  desc.validate_shape();
  for (const SeedSpace& s : desc.seeds)
    if (!s.solid)
      throw precondition_error(
          "radius-of-comparison formula requires all seeds solid");
  Rat lo(0), hi(0);
  bool certified = true;
  for (std::size_t j = 1; j <= static_cast<std::size_t>(desc.m); ++j) {
    const long hj = desc.seeds[j - 1].dim;
    Rat eps_j = hj > 0 ? eps / Rat(hj) : eps;
    Enclosure kj = kappa_enclosure(desc, j, eps_j, max_depth);
    lo = std::max(lo, kj.lo * Rat(hj));
    hi = std::max(hi, kj.hi * Rat(hj));
    certified = certified && kj.certified;
  }
  return Enclosure(lo, hi, certified);
}

}  // namespace

Enclosure rc_enclosure(const SystemDescriptor& desc, const Rat& eps,
                       std::size_t max_depth) {
  return scale(seed_weighted_max(desc, eps * 2, max_depth), rat_half());
}

Enclosure drr_enclosure(const SystemDescriptor& desc, std::size_t N) {
  return seed_weighted_max(desc, Rat(1, 1000000000), N);
}

// ---------------------------------------------------------------------------
// lambda
// ---------------------------------------------------------------------------

Enclosure lambda_enclosure(const TwoSeedParams& p, const Rat& eps,
                           std::size_t max_depth) {
  if (eps.sgn() <= 0) throw domain_error("eps must be positive");
  if (emits_constant(p.c->to_json(), 0)) return Enclosure::exact(Rat(1));

  const std::optional<Rat> kappa = p.l->one_minus_inv_witness();
  const bool tail_certifiable = kappa.has_value() && p.c_is_one();

  std::optional<Enclosure> best;
  Frac gamma(1, 1);          // prod (1 - 1/l(k)), maintained unreduced
  std::size_t gamma_to = 0;  // levels folded into gamma so far
  for (std::size_t n = 1; n <= max_depth; ++n) {
    try {
      p.r(n);
    } catch (const budget_exceeded&) {
      break;
    } catch (const descriptor_error&) {
      break;
    }
    Rat partial(p.r_prime(n), p.r(n));
    if (tail_certifiable) {
      // Tail bound: for l >= 3, (1 - 1/l)^3 <= 1 - 2/l, so the remaining
      // product is at least (prod_{k>n} (1 - 1/l(k)))^3 = (kappa/gamma_n)^3.
      bool l_ok = true;
      while (gamma_to < n) {
        const Int& lk = p.l->at(gamma_to + 1);
        if (lk < 3) {
          l_ok = false;
          break;
        }
        gamma = gamma.mul(lk - 1, lk);
        ++gamma_to;
      }
      if (l_ok) {
        Rat q = *kappa / gamma.to_rat();  // kappa/gamma_n in (0, 1)
        Rat tail_lo = q * q * q;
        Enclosure e(partial * tail_lo, partial, true);
        if (!best || e.width() < best->width()) best = e;
        if (e.width() <= eps) return e;
        continue;
      }
    }
    Enclosure e(Rat(0), partial, false);
    if (!best || (!best->certified && e.hi < best->hi)) best = e;
    if (!e.certified && e.hi <= eps) return e;
  }
  if (!best) throw budget_exceeded("no level of the lambda product is materializable", 0, 0);
  return *best;
}

// ---------------------------------------------------------------------------
// t and kappa_1'
// ---------------------------------------------------------------------------

std::vector<Int> t_sequence(const TwoSeedParams& p, std::size_t N) {
  std::vector<Int> out;
  out.reserve(N + 1);
  for (std::size_t n = 0; n <= N; ++n) out.push_back(p.t(n));
  return out;
}

Enclosure kappa_prime_enclosure(const TwoSeedParams& p, const Rat& eps,
                                std::size_t max_depth) {
  if (eps.sgn() <= 0) throw domain_error("eps must be positive");
  const std::optional<Rat> kappa1 = p.kappa1_witness();
  if (!kappa1)
    throw precondition_error(
        "kappa_1' tail bound requires an exact kappa_1 product witness on d_1");
  if (!(*kappa1 > rat_half()))
    throw precondition_error("kappa_1' tail bound requires kappa_1 > 1/2");
  if (!p.c_is_one())
    throw precondition_error("kappa_1' tail bound requires c = 1");

  const Rat inv_k1_minus_1 = kappa1->reciprocal() - Rat(1);  // 1/kappa_1 - 1 > 0
  std::optional<Enclosure> best;
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= max_depth; ++n) {
    try {
      p.r(n);
    } catch (const budget_exceeded&) {
      break;
    } catch (const descriptor_error&) {
      break;
    }
    // The tail bound is derived for d_1 = l - c = l - 1.
    while (checked < n) {
      ++checked;
      if (p.d1->at(checked) != p.l->at(checked) - p.c->at(checked))
        throw precondition_error("kappa_1' tail bound requires d_1 = l - c at n = " +
                                 std::to_string(checked));
    }
    // With d_1 = l - 1, gamma_n = prod (1 - 1/l) = s_1(n)/r(n) exactly.
    Rat gamma(p.s1(n), p.r(n));
    Rat u(p.r(n) - p.t(n), p.s1(n));  // u(n), nondecreasing to 1/kappa_1'
    // u(infinity) - u(n) <= 2 (gamma_n/kappa_1 - 1)(1/kappa_1 - 1).
    Rat tail = Rat(2) * (gamma / *kappa1 - Rat(1)) * inv_k1_minus_1;
    Enclosure e((u + tail).reciprocal(), u.reciprocal(), true);
    if (!best || e.width() < best->width()) best = e;
    if (e.width() <= eps) return e;
  }
  if (!best)
    throw budget_exceeded("no level of the kappa_1' sequence is materializable", 0, 0);
  return *best;
}

// ---------------------------------------------------------------------------
// Corner radii
// ---------------------------------------------------------------------------

namespace {

// kappa_1' enclosure with the corner hypothesis window
//   kappa_1 < kappa_1'  and  kappa_1' - kappa_1 <= kappa_2 <= kappa_1^2/(kappa_1' - kappa_1)
// certified; refines precision until every comparison is decided.
Enclosure certified_prime_window(const TwoSeedParams& p, const Rat& kappa1,
                                 const Rat& kappa2, const Rat& eps) {
  Rat eps_k = eps;
  for (int round = 0; round < 8; ++round, eps_k = eps_k / Rat(64)) {
    Enclosure e = kappa_prime_enclosure(p, eps_k);
    if (!(e.lo > kappa1)) {
      if (e.hi <= kappa1)
        throw precondition_error("kappa_1' <= kappa_1: corner analysis undefined");
      continue;  // undecided, refine
    }
    // Lower window edge.
    if (e.lo - kappa1 > kappa2)
      throw precondition_error("corner hypothesis violated: kappa_2 < kappa_1' - kappa_1");
    if (!(e.hi - kappa1 <= kappa2)) continue;
    // Upper window edge.
    if (kappa2 * (e.lo - kappa1) > kappa1 * kappa1)
      throw precondition_error(
          "corner hypothesis violated: kappa_2 > kappa_1^2 / (kappa_1' - kappa_1)");
    if (!(kappa2 * (e.hi - kappa1) <= kappa1 * kappa1)) continue;
    return e;
  }
  throw unknown_error(
      "corner hypothesis window could not be certified within the refinement budget");
}

// Enclosure of x/(x - kappa_1) over a kappa_1' enclosure; the map is
// decreasing in x, so the endpoints swap.
Enclosure over_gap(const Enclosure& e, const Rat& kappa1) {
  return Enclosure(e.hi / (e.hi - kappa1), e.lo / (e.lo - kappa1), e.certified);
}

}  // namespace

CornerRc corner_rc(const TwoSeedParams& p, const Rat& eps) {
  if (eps.sgn() <= 0) throw domain_error("eps must be positive");
  const std::optional<Rat> k1 = p.kappa1_witness();
  const std::optional<Rat> k2 = p.kappa2_witness();
  if (!k1 || !k2)
    throw precondition_error("corner radii require exact kappa_1 and kappa_2 witnesses");

  const Rat half_h = Rat(p.h) * rat_half();
  Rat eps_k = eps;
  for (int round = 0; round < 8; ++round, eps_k = eps_k / Rat(64)) {
    Enclosure f = over_gap(certified_prime_window(p, *k1, *k2, eps_k), *k1);
    CornerRc out;
    out.rc_p1 = scale(f, *k2 * half_h);
    out.rc_p2 = scale(f, *k1 * half_h);
    out.ratio = *k2 / *k1;
    if (out.rc_p1.width() <= eps && out.rc_p2.width() <= eps) return out;
  }
  throw unknown_error("corner radii could not be enclosed to the requested width");
}

CornerParams corner_params(const TwoSeedParams& p, CornerParams::Which which,
                           const Rat& eps) {
  if (eps.sgn() <= 0) throw domain_error("eps must be positive");
  const std::optional<Rat> k1 = p.kappa1_witness();
  const std::optional<Rat> k2 = p.kappa2_witness();
  if (!k1 || !k2)
    throw precondition_error("corner parameters require exact kappa_1 and kappa_2 witnesses");

  const Int d = p.d1->at(1);
  const Rat dr(d);
  Rat eps_k = eps;
  for (int round = 0; round < 8; ++round, eps_k = eps_k / Rat(64)) {
    Enclosure e = certified_prime_window(p, *k1, *k2, eps_k);
    Enclosure g = over_gap(e, *k1);
    CornerParams out;
    out.which = which;
    if (which == CornerParams::Which::P1) {
      out.kappa1_corner = scale(e, Rat(1) / dr);
      out.kappa2_corner = scale(g, *k2 / dr);
    } else {
      out.kappa1_corner = scale(g, *k1 / dr);
      out.kappa2_corner = scale(e, *k2 / (dr * *k1));
    }
    Int sd = d * Int(p.h);
    if (!sd.fits_slong_p())
      throw domain_error("corner seed dimension overflows");
    out.seed_dim = sd.get_si();
    if (out.kappa1_corner.width() <= eps && out.kappa2_corner.width() <= eps) return out;
  }
  throw unknown_error("corner parameters could not be enclosed to the requested width");
}

// ---------------------------------------------------------------------------
// Two-seed hypothesis verification
// ---------------------------------------------------------------------------

TwoSeedVerifyResult verify_two_seed_hypotheses(const TwoSeedParams& p, std::size_t N) {
  TwoSeedVerifyResult res;
  auto fail = [&](std::string msg, std::size_t depth) {
    res.status = TwoSeedVerifyResult::Status::False;
    res.first_failure = std::move(msg);
    res.depth_checked = depth;
    return res;
  };

  for (std::size_t n = 1; n <= N; ++n) {
    Int ln, cn, d1n, d2n;
    try {
      ln = p.l->at(n);
      cn = p.c->at(n);
      d1n = p.d1->at(n);
      d2n = p.d2->at(n);
    } catch (const budget_exceeded&) {
      break;
    } catch (const descriptor_error&) {
      break;
    }
    if (ln < 2 * cn + 1)
      return fail("l(n) >= 2c(n) + 1 fails at n = " + std::to_string(n), n);
    if (d1n != ln - cn)
      return fail("d_1(n) = l(n) - c(n) fails at n = " + std::to_string(n), n);
    if (d2n > ln - cn)
      return fail("d_2(n) <= l(n) - c(n) fails at n = " + std::to_string(n), n);
    if (n == 1) {
      if (d1n != d2n)
        return fail("d_1(1) = d_2(1) fails", 1);
      if (d1n < 2)
        return fail("d_1(1) >= 2 fails", 1);
    }
    res.depth_checked = n;
  }

  if (auto k1 = p.kappa1_witness()) {
    if (!(*k1 > rat_half()))
      return fail("kappa_1 > 1/2 fails (kappa_1 = " + k1->str() + ")",
                  res.depth_checked);
  } else {
    Enclosure e = kappa_enclosure(p.to_descriptor(), 1, Rat(1, 1000000000),
                                  std::max<std::size_t>(N, 32));
    if (e.hi <= rat_half())
      return fail("kappa_1 > 1/2 fails (kappa_1 <= " + e.hi.str() + ")",
                  res.depth_checked);
    res.status = TwoSeedVerifyResult::Status::Unknown;
    res.first_failure =
        "kappa_1 > 1/2 cannot be certified without a product witness";
  }
  return res;
}

}  // namespace mvs
