// Command-line front end: synthesis, level tables, invariant reports, K_0
// queries, hypothesis verification, fingerprints and discrimination.
//
// All data output is canonical JSON on stdout (keys sorted, rationals as
// "p/q" strings); diagnostics go to stderr.  Exit codes: 0 success/decided,
// 2 precondition failure, 3 Unknown verdict, 4 parse error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mvs/fingerprint.hpp"
#include "mvs/jsonio.hpp"
#include "mvs/k0.hpp"
#include "mvs/synth.hpp"

namespace {

using namespace mvs;

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
}

void emit(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

std::string int_str(const Int& v) { return v.get_str(); }

nlohmann::json verify_report(const SystemDescriptor& desc, std::size_t depth,
                             bool* any_fail, bool* any_unknown) {
  nlohmann::json out;
  ConstructionReport con = verify_construction(desc, depth);
  nlohmann::json viol = nlohmann::json::array();
  for (const auto& v : con.violations)
    viol.push_back({{"condition", v.condition}, {"n", v.n}, {"j", v.j}, {"k", v.k}});
  out["construction"] = {{"ok", con.ok()},
                         {"violations", viol},
                         {"growth_witnessed", con.growth_witnessed},
                         {"depth_checked", con.depth_checked}};
  if (!con.ok()) *any_fail = true;

  SimplicityResult simp = verify_simplicity_hypotheses(desc, depth);
  nlohmann::json sj = {{"ok", simp.ok}, {"depth_checked", simp.depth_checked}};
  if (simp.first_failure) sj["first_failure"] = simp.first_failure->condition;
  out["simplicity"] = sj;
  if (!simp.ok) *any_fail = true;

  if (desc.is_symmetric_two_seed()) {
    TwoSeedVerifyResult two =
        verify_two_seed_hypotheses(TwoSeedParams::from_descriptor(desc), depth);
    const char* st = two.status == TwoSeedVerifyResult::Status::True      ? "true"
                     : two.status == TwoSeedVerifyResult::Status::False   ? "false"
                                                                          : "unknown";
    out["two_seed"] = {{"status", st},
                       {"first_failure", two.first_failure},
                       {"depth_checked", two.depth_checked}};
    if (two.status == TwoSeedVerifyResult::Status::False) *any_fail = true;
    if (two.status == TwoSeedVerifyResult::Status::Unknown) *any_unknown = true;
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"multiseed Villadsen system toolkit"};
  app.require_subcommand(1);

  std::string in_path, a_path, b_path;
  std::string omega_s, eps_s = "1/1000000000", x_s, y_s, t_s = "0", m1_s = "1", m2_s = "0";
  std::vector<std::string> beta_s;
  std::size_t count = 0, depth = 120, level = 0, kmax = 50;
  std::size_t max_bits = kDefaultMaxTermBits;

  auto* synth = app.add_subcommand("synthesize", "build a family of systems at a target rc");
  synth->add_option("--omega", omega_s, "target radius of comparison, p/q")->required();
  synth->add_option("--count", count, "number of auto-chosen beta values");
  synth->add_option("--beta", beta_s, "explicit beta values, p/q");
  synth->add_option("--depth", depth, "depth budget");
  synth->add_option("--eps", eps_s, "enclosure width target, p/q");
  synth->add_option("--max-bits", max_bits, "per-term bit budget");

  auto* levels = app.add_subcommand("levels", "exact level recursion table");
  levels->add_option("--in", in_path, "descriptor JSON file")->required();
  levels->add_option("--depth", depth, "number of levels");
  levels->add_option("--max-bits", max_bits, "per-term bit budget");

  auto* inv = app.add_subcommand("invariants", "invariant report for a descriptor");
  inv->add_option("--in", in_path, "descriptor JSON file")->required();
  inv->add_option("--eps", eps_s, "enclosure width target, p/q");
  inv->add_option("--depth", depth, "depth budget");
  inv->add_option("--max-bits", max_bits, "per-term bit budget");

  auto* k0 = app.add_subcommand("k0", "ordered K0 model queries");
  k0->require_subcommand(1);
  auto* cone = k0->add_subcommand("cone", "positive cone membership");
  cone->add_option("--in", in_path)->required();
  cone->add_option("--x", x_s)->required();
  cone->add_option("--y", y_s)->required();
  cone->add_option("--eps", eps_s);
  auto* state = k0->add_subcommand("state", "state evaluation x + t lambda y");
  state->add_option("--in", in_path)->required();
  state->add_option("--x", x_s)->required();
  state->add_option("--y", y_s)->required();
  state->add_option("--t", t_s, "state parameter in [-1, 1]");
  state->add_option("--eps", eps_s);
  auto* gamma = k0->add_subcommand("gamma", "level embedding gamma_n(m1, m2)");
  gamma->add_option("--in", in_path)->required();
  gamma->add_option("--level", level)->required();
  gamma->add_option("--m1", m1_s);
  gamma->add_option("--m2", m2_s);
  auto* autos = k0->add_subcommand("autos", "canonical automorphisms");
  autos->add_option("--in", in_path)->required();
  autos->add_option("--eps", eps_s);
  auto* divis = k0->add_subcommand("divisibility", "k | r(n), k | r'(n) search");
  divis->add_option("--in", in_path)->required();
  divis->add_option("--K", kmax, "check all k up to K");
  divis->add_option("--depth", depth)->default_val(std::size_t(400));

  auto* verify = app.add_subcommand("verify", "run all hypothesis verifiers");
  verify->add_option("--in", in_path)->required();
  verify->add_option("--depth", depth);
  verify->add_option("--max-bits", max_bits);

  auto* fp = app.add_subcommand("fingerprint", "invariant fingerprint of a member");
  fp->add_option("--in", in_path, "family member JSON file")->required();
  fp->add_option("--eps", eps_s);
  fp->add_option("--max-bits", max_bits);

  auto* disc = app.add_subcommand("discriminate", "compare two fingerprints");
  disc->add_option("--a", a_path)->required();
  disc->add_option("--b", b_path)->required();
  disc->add_option("--eps", eps_s);

  auto* trace = app.add_subcommand("trace", "plot-ready per-level partial products");
  trace->add_option("--in", in_path)->required();
  trace->add_option("--depth", depth);
  trace->add_option("--max-bits", max_bits);

  CLI11_PARSE(app, argc, argv);

  const Rat eps = Rat::parse(eps_s);
  SequenceRegistry reg;
  auto load_desc = [&] { return SystemDescriptor::from_json(read_json(in_path), reg, max_bits); };
  auto load_params = [&] { return TwoSeedParams::from_descriptor(load_desc()); };

  if (synth->parsed()) {
    FamilyRequest req;
    req.omega = Rat::parse(omega_s);
    req.count = count;
    for (const auto& b : beta_s) req.betas.push_back(Rat::parse(b));
    req.eps = eps;
    req.max_term_bits = max_bits;
    nlohmann::json out = nlohmann::json::array();
    for (const FamilyMember& m : synthesize_family(req)) out.push_back(m.to_json());
    emit(out);
    return 0;
  }

  if (levels->parsed()) {
    SystemDescriptor desc = load_desc();
    nlohmann::json out = nlohmann::json::array();
    for (const LevelData& lv : compute_levels(desc, depth)) {
      nlohmann::json row = {{"n", lv.n}};
      nlohmann::json r = nlohmann::json::array(), s = nlohmann::json::array();
      for (const Int& v : lv.r) r.push_back(int_str(v));
      for (const Int& v : lv.s) s.push_back(int_str(v));
      row["r"] = r;
      row["s"] = s;
      if (lv.r_prime) row["r_prime"] = int_str(*lv.r_prime);
      out.push_back(row);
    }
    emit({{"levels", out}});
    return 0;
  }

  if (inv->parsed()) {
    SystemDescriptor desc = load_desc();
    ConstructionReport con = verify_construction(desc, std::min<std::size_t>(depth, 10));
    if (!con.ok()) throw precondition_error(con.violations.front().condition);

    nlohmann::json out;
    nlohmann::json kap = nlohmann::json::array();
    bool certified = true;
    for (std::size_t j = 1; j <= static_cast<std::size_t>(desc.m); ++j) {
      Enclosure e = kappa_enclosure(desc, j, eps, depth);
      certified = certified && e.certified;
      kap.push_back(enclosure_to_json(e));
    }
    out["kappa"] = kap;
    Enclosure rc = rc_enclosure(desc, eps, depth);
    certified = certified && rc.certified;
    out["rc"] = enclosure_to_json(rc);

    if (desc.is_symmetric_two_seed()) {
      TwoSeedParams p = TwoSeedParams::from_descriptor(desc);
      TwoSeedVerifyResult two = verify_two_seed_hypotheses(p, std::min<std::size_t>(depth, 10));
      if (two.status == TwoSeedVerifyResult::Status::False)
        throw precondition_error(two.first_failure);
      Enclosure lam = lambda_enclosure(p, eps, depth);
      certified = certified && lam.certified;
      out["lambda"] = enclosure_to_json(lam);
      try {
        Enclosure kp = kappa_prime_enclosure(p, eps, depth);
        certified = certified && kp.certified;
        out["kappa1_prime"] = enclosure_to_json(kp);
        CornerRc corner = corner_rc(p, eps);
        out["corner_rc"] = {{"p1", enclosure_to_json(corner.rc_p1)},
                            {"p2", enclosure_to_json(corner.rc_p2)},
                            {"ratio", corner.ratio.str()}};
      } catch (const precondition_error& e) {
        std::cerr << "note: corner invariants unavailable: " << e.what() << "\n";
        certified = false;
      }
    }
    out["certified"] = certified;
    emit(out);
    return 0;
  }

  if (cone->parsed() || state->parsed() || autos->parsed()) {
    TwoSeedParams p = load_params();
    OrderedGroupModel model = OrderedGroupModel::from_params(p, eps);
    if (cone->parsed()) {
      K0Element g{Rat::parse(x_s), Rat::parse(y_s)};
      ConeResult res = cone_contains(model, g);
      const char* v = res.verdict == ConeVerdict::Positive      ? "positive"
                      : res.verdict == ConeVerdict::NotPositive ? "not_positive"
                                                                : "unknown";
      emit({{"verdict", v}, {"margin", res.margin.str()}});
      return res.verdict == ConeVerdict::Unknown ? 3 : 0;
    }
    if (state->parsed()) {
      K0Element g{Rat::parse(x_s), Rat::parse(y_s)};
      emit({{"value", enclosure_to_json(state_eval(model, Rat::parse(t_s), g))}});
      return 0;
    }
    nlohmann::json out = nlohmann::json::array();
    for (const GroupAutomorphism& q : canonical_automorphisms(model)) {
      nlohmann::json mat = nlohmann::json::array();
      mat.push_back(nlohmann::json::array({q.a.str(), q.b.str()}));
      mat.push_back(nlohmann::json::array({q.c.str(), q.d.str()}));
      out.push_back(mat);
    }
    emit({{"automorphisms", out}});
    return 0;
  }

  if (gamma->parsed()) {
    TwoSeedParams p = load_params();
    K0Element g = gamma_image(p, level, Int(Rat::parse(m1_s).num()),
                              Int(Rat::parse(m2_s).num()));
    emit(k0_to_json(g));
    return 0;
  }

  if (divis->parsed()) {
    DivisibilityReport rep = verify_divisibility(load_params(), kmax, depth);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : rep.entries) {
      nlohmann::json row = {{"k", e.k}};
      if (e.n_r) row["n_r"] = *e.n_r;
      if (e.n_r_prime) row["n_r_prime"] = *e.n_r_prime;
      out.push_back(row);
    }
    emit({{"entries", out},
          {"depth_reached", rep.depth_reached},
          {"all_found", rep.all_found()}});
    return rep.all_found() ? 0 : 3;
  }

  if (verify->parsed()) {
    bool any_fail = false, any_unknown = false;
    emit(verify_report(load_desc(), depth, &any_fail, &any_unknown));
    return any_fail ? 2 : (any_unknown ? 3 : 0);
  }

  if (fp->parsed()) {
    FamilyMember m = FamilyMember::from_json(read_json(in_path), reg, max_bits);
    emit(fingerprint(m, eps).to_json());
    return 0;
  }

  if (disc->parsed()) {
    DiscriminateResult res = discriminate(Fingerprint::from_json(read_json(a_path)),
                                          Fingerprint::from_json(read_json(b_path)), eps);
    emit(res.to_json());
    return res.verdict == Verdict::Unknown ? 3 : 0;
  }

  if (trace->parsed()) {
    SystemDescriptor desc = load_desc();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t n = 0; n <= depth; ++n) {
      try {
        desc.r(n);
      } catch (const error&) {
        break;
      }
      nlohmann::json row = {{"n", n}};
      nlohmann::json ratios = nlohmann::json::array();
      for (std::size_t j = 0; j < static_cast<std::size_t>(desc.m); ++j)
        ratios.push_back(Rat(desc.s(n)[j], desc.r(n)[j]).str());
      row["s_over_r"] = ratios;
      if (desc.is_symmetric_two_seed())
        row["r_prime_over_r"] = Rat(desc.r_prime(n), desc.r(n)[0]).str();
      rows.push_back(row);
    }
    emit({{"trace", rows}});
    return 0;
  }

  return 4;  // unreachable: a subcommand is required
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mvs::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const mvs::unknown_error& e) {
    std::cerr << "unknown: " << e.what() << "\n";
    return 3;
  } catch (const mvs::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
