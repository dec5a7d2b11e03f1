#include "mvs/synth.hpp"

namespace mvs {

SeqPtr choose_l(const Rat& kappa, const Int& l0, std::size_t max_term_bits) {
  return std::make_shared<ChooseLSeq>(kappa, l0, max_term_bits);
}

SeqPtr choose_d(const SeqPtr& l, const Rat& target, std::optional<Int> pin_first,
                std::size_t max_term_bits) {
  if (!l) throw domain_error("choose_d requires a base sequence");
  auto kappa0 = l->one_minus_inv_witness();
  if (!kappa0)
    throw precondition_error("choose_d requires the base to carry a product witness");
  return std::make_shared<ChooseDSeq>(l, *kappa0, target, std::move(pin_first),
                                      max_term_bits);
}

std::pair<Rat, Rat> beta_interval(const TwoSeedParams& base, const Rat& eps) {
  if (eps.sgn() <= 0) throw domain_error("eps must be positive");
  auto k1 = base.kappa1_witness();
  if (!k1)
    throw precondition_error("beta interval requires an exact kappa_1 witness");
  Rat eps_k = eps;
  for (int round = 0; round < 8; ++round, eps_k = eps_k / Rat(64)) {
    Enclosure e = kappa_prime_enclosure(base, eps_k);
    Rat a = e.hi - *k1;  // conservative gap overestimate
    if (a.sgn() <= 0) continue;
    Rat b = std::min(*k1, (*k1 * *k1) / a);
    if (a < b) return {a, b};
  }
  throw unknown_error(
      "admissible beta interval is empty at the available precision; "
      "a tighter kappa_1' enclosure is needed");
}

TwoSeedParams FamilyMember::params() const {
  return TwoSeedParams::from_descriptor(descriptor, beta);
}

nlohmann::json FamilyMember::to_json() const {
  return {{"descriptor", descriptor.to_json()},
          {"beta", beta.str()},
          {"amplification", amplification.get_si()},
          {"provenance",
           {{"omega", omega.str()},
            {"h", h},
            {"kappa1", kappa1.str()},
            {"beta", beta.str()},
            {"N", amplification.get_si()}}}};
}

FamilyMember FamilyMember::from_json(const nlohmann::json& j, SequenceRegistry& reg,
                                     std::size_t max_term_bits) {
  try {
    FamilyMember m;
    m.descriptor = SystemDescriptor::from_json(j.at("descriptor"), reg, max_term_bits);
    m.beta = Rat::parse(j.at("beta").get<std::string>());
    m.amplification = Int(j.at("amplification").get<long>());
    const auto& prov = j.at("provenance");
    m.omega = Rat::parse(prov.at("omega").get<std::string>());
    m.kappa1 = Rat::parse(prov.at("kappa1").get<std::string>());
    m.h = prov.at("h").get<long>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("invalid family member: ") + e.what());
  }
}

std::vector<FamilyMember> synthesize_family(const FamilyRequest& req) {
  if (req.omega.sgn() <= 0) throw domain_error("omega must be positive");
  if (req.eps.sgn() <= 0) throw domain_error("eps must be positive");

  // Amplify past 1/2: N is the least integer with N * omega > 1/2.
  const Int N = least_integer_gt(Rat(1, 2) / req.omega);
  const Rat omega_p = Rat(N) * req.omega;

  // h = least integer > 2 omega', so kappa_1 = 2 omega'/h lies in (1/2, 1).
  const Int h_int = least_integer_gt(Rat(2) * omega_p);
  if (!h_int.fits_slong_p()) throw domain_error("seed dimension overflows");
  const long h = h_int.get_si();
  const Rat kappa1 = Rat(2) * omega_p / Rat(h_int);

  // Least admissible start value: l0 >= 3 with 1 - 1/l0 > kappa_1.
  const Int l0 = std::max(Int(3), least_integer_gt((Rat(1) - kappa1).reciprocal()));

  SeqPtr l = choose_l(kappa1, l0, req.max_term_bits);
  SeqPtr c = std::make_shared<ConstantSeq>(std::vector<Int>{}, Int(1), req.max_term_bits);
  SeqPtr d1 = std::make_shared<OffsetSeq>(l, -1, kappa1, req.max_term_bits);

  TwoSeedParams base;
  base.l = l;
  base.c = c;
  base.d1 = d1;
  base.d2 = d1;  // placeholder; kappa_1' depends only on l, c, d_1
  base.h = h;
  base.seeds = {SeedSpace{h, true, true}, SeedSpace{h, true, true}};

  const auto [a, b] = beta_interval(base, req.eps);

  std::vector<Rat> betas;
  if (!req.betas.empty()) {
    for (const Rat& beta : req.betas) {
      if (!(beta > a) || !(beta < b))
        throw domain_error("beta = " + beta.str() +
                           " lies outside the certified admissible interval (" +
                           a.str() + ", " + b.str() + ")");
      betas.push_back(beta);
    }
  } else {
    // Evenly spaced targets snapped to the simplest rational in a small
    // window around each, keeping the values distinct and reproducible.
    const std::size_t k = std::max<std::size_t>(req.count, 1);
    const Rat span = b - a;
    for (std::size_t i = 1; i <= k; ++i) {
      Rat lo = a + span * Rat(Int(4 * i - 1), Int(4 * (k + 1)));
      Rat hi = a + span * Rat(Int(4 * i + 1), Int(4 * (k + 1)));
      betas.push_back(simplest_rational_in(lo, hi));
    }
  }

  std::vector<FamilyMember> out;
  out.reserve(betas.size());
  const Int pin = l->at(1) - 1;  // d_2(1) = d_1(1) = l(1) - 1
  for (const Rat& beta : betas) {
    FamilyMember m;
    m.descriptor.m = 2;
    m.descriptor.seeds = base.seeds;
    m.descriptor.d = {d1, choose_d(l, beta, pin, req.max_term_bits)};
    m.descriptor.mu.kind = MuSpec::Kind::SymmetricTwoSeed;
    m.descriptor.mu.l = l;
    m.descriptor.mu.c = c;
    m.descriptor.r0 = {Int(1), Int(1)};
    m.descriptor.diagonal = true;
    m.beta = beta;
    m.amplification = N;
    m.omega = req.omega;
    m.kappa1 = kappa1;
    m.h = h;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace mvs
