#include "mvs/fingerprint.hpp"

#include "mvs/jsonio.hpp"
#include "mvs/k0.hpp"

namespace mvs {

nlohmann::json Fingerprint::to_json() const {
  return {{"omega", omega.str()},
          {"h", h},
          {"kappa1", kappa1.str()},
          {"beta", beta.str()},
          {"lambda", enclosure_to_json(lambda)},
          {"lrc_unit", enclosure_to_json(lrc_unit)},
          {"lrc_p1", enclosure_to_json(lrc_p1)},
          {"lrc_p2", enclosure_to_json(lrc_p2)},
          {"ratio_p1_p2", ratio_p1_p2.str()},
          {"unit", k0_to_json(unit)},
          {"stable_rank_one", stable_rank_one}};
}

Fingerprint Fingerprint::from_json(const nlohmann::json& j) {
  try {
    Fingerprint f;
    f.omega = Rat::parse(j.at("omega").get<std::string>());
    f.h = j.at("h").get<long>();
    f.kappa1 = Rat::parse(j.at("kappa1").get<std::string>());
    f.beta = Rat::parse(j.at("beta").get<std::string>());
    f.lambda = enclosure_from_json(j.at("lambda"));
    f.lrc_unit = enclosure_from_json(j.at("lrc_unit"));
    f.lrc_p1 = enclosure_from_json(j.at("lrc_p1"));
    f.lrc_p2 = enclosure_from_json(j.at("lrc_p2"));
    f.ratio_p1_p2 = Rat::parse(j.at("ratio_p1_p2").get<std::string>());
    f.unit = k0_from_json(j.at("unit"));
    f.stable_rank_one = j.value("stable_rank_one", true);
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("invalid fingerprint: ") + e.what());
  }
}

Fingerprint fingerprint(const FamilyMember& member, const Rat& eps) {
  if (eps.sgn() <= 0) throw domain_error("eps must be positive");
  TwoSeedParams params = member.params();

  // Hypothesis gate.  Depth is modest: synthesized sequences grow doubly
  // exponentially, so deep prefixes are unreachable and the per-level
  // conditions hold structurally anyway.
  const std::size_t depth = 10;
  ConstructionReport con = verify_construction(member.descriptor, depth);
  if (!con.ok())
    throw precondition_error("member rejected: " + con.violations.front().condition);
  SimplicityResult simp = verify_simplicity_hypotheses(member.descriptor, depth);
  if (!simp.ok)
    throw precondition_error("member rejected: " + simp.first_failure->condition);
  TwoSeedVerifyResult two = verify_two_seed_hypotheses(params, depth);
  if (two.status != TwoSeedVerifyResult::Status::True)
    throw precondition_error("member rejected: " + two.first_failure);

  auto k1 = params.kappa1_witness();
  auto k2 = params.kappa2_witness();
  if (!k1 || !k2)
    throw precondition_error("fingerprint requires exact kappa_1 and kappa_2 witnesses");

  Fingerprint f;
  f.omega = member.omega;
  f.h = member.h;
  f.kappa1 = *k1;
  f.beta = *k2;
  f.lambda = lambda_enclosure(params, eps);
  // rc = kappa_1 h / 2 exactly (beta < kappa_1); at the unit (N, 0) the
  // local value is rc/N = omega.
  Rat rc = *k1 * Rat(member.h) / Rat(2);
  f.lrc_unit = Enclosure::exact(rc / Rat(member.amplification));
  CornerRc corner = corner_rc(params, eps);
  f.lrc_p1 = corner.rc_p1;
  f.lrc_p2 = corner.rc_p2;
  f.ratio_p1_p2 = corner.ratio;
  f.unit = K0Element{Rat(member.amplification), Rat(0)};
  f.stable_rank_one = true;
  return f;
}

Fingerprint sigma_image(const Fingerprint& f) {
  Fingerprint g = f;
  std::swap(g.lrc_p1, g.lrc_p2);
  std::swap(g.beta, g.kappa1);
  g.ratio_p1_p2 = f.ratio_p1_p2.reciprocal();
  return g;
}

nlohmann::json DiscriminateResult::to_json() const {
  const char* v = verdict == Verdict::Distinguishable      ? "distinguishable"
                  : verdict == Verdict::NotDistinguishable ? "not_distinguishable"
                                                           : "unknown";
  nlohmann::json j = {{"verdict", v}};
  if (!witness.is_null()) j["witness"] = witness;
  return j;
}

DiscriminateResult discriminate(const Fingerprint& f1, const Fingerprint& f2,
                                const Rat& eps) {
  (void)eps;  // exact corner data always decides for well-formed fingerprints
  DiscriminateResult res;
  auto distinguish = [&](const char* field, const std::string& a, const std::string& b) {
    res.verdict = Verdict::Distinguishable;
    res.witness = {{"field", field}, {"f1", a}, {"f2", b}};
    return res;
  };

  // Global invariants first: these are shared by construction within a
  // family, so any exact mismatch separates the algebras outright.
  if (f1.omega != f2.omega)
    return distinguish("omega", f1.omega.str(), f2.omega.str());
  if (f1.h != f2.h)
    return distinguish("h", std::to_string(f1.h), std::to_string(f2.h));
  if (!(f1.unit == f2.unit))
    return distinguish("unit", f1.unit.x.str(), f2.unit.x.str());

  // Corner data under the two admissible automorphisms.  Members at a common
  // omega share the corner common factor, so the exact coefficient pairs
  // (beta, kappa1) compare directly.
  const bool id_match = f1.beta == f2.beta && f1.kappa1 == f2.kappa1;
  const bool sigma_match = f1.beta == f2.kappa1 && f1.kappa1 == f2.beta;
  if (id_match || sigma_match) {
    res.verdict = Verdict::NotDistinguishable;
    return res;
  }
  return distinguish("ratio_p1_p2", f1.ratio_p1_p2.str(), f2.ratio_p1_p2.str());
}

}  // namespace mvs
