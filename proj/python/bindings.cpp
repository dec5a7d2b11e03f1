// Python module exposing the main operations over a JSON-string API: every
// function takes and returns serialized JSON, so the Python side stays a thin
// dict <-> str veneer with no binding-level data modeling.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mvs/fingerprint.hpp"
#include "mvs/jsonio.hpp"
#include "mvs/k0.hpp"
#include "mvs/synth.hpp"

namespace py = pybind11;
using namespace mvs;
using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("invalid JSON");
  return j;
}

SystemDescriptor parse_desc(const std::string& text) {
  SequenceRegistry reg;
  return SystemDescriptor::from_json(parse_json(text), reg);
}

TwoSeedParams parse_params(const std::string& text) {
  return TwoSeedParams::from_descriptor(parse_desc(text));
}

std::string py_synthesize(const std::string& omega, std::size_t count,
                          const std::vector<std::string>& betas, const std::string& eps) {
  FamilyRequest req;
  req.omega = Rat::parse(omega);
  req.count = count;
  for (const auto& b : betas) req.betas.push_back(Rat::parse(b));
  req.eps = Rat::parse(eps);
  json out = json::array();
  for (const FamilyMember& m : synthesize_family(req)) out.push_back(m.to_json());
  return out.dump();
}

std::string py_invariants(const std::string& desc_text, const std::string& eps_s,
                          std::size_t depth) {
  SystemDescriptor desc = parse_desc(desc_text);
  const Rat eps = Rat::parse(eps_s);
  json out;
  json kap = json::array();
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
    } catch (const precondition_error&) {
      certified = false;
    }
  }
  out["certified"] = certified;
  return out.dump();
}

std::string py_levels(const std::string& desc_text, std::size_t depth) {
  SystemDescriptor desc = parse_desc(desc_text);
  json rows = json::array();
  for (const LevelData& lv : compute_levels(desc, depth)) {
    json row = {{"n", lv.n}};
    json r = json::array(), s = json::array();
    for (const Int& v : lv.r) r.push_back(v.get_str());
    for (const Int& v : lv.s) s.push_back(v.get_str());
    row["r"] = r;
    row["s"] = s;
    if (lv.r_prime) row["r_prime"] = lv.r_prime->get_str();
    rows.push_back(row);
  }
  return json{{"levels", rows}}.dump();
}

std::string py_verify(const std::string& desc_text, std::size_t depth) {
  SystemDescriptor desc = parse_desc(desc_text);
  json out;
  ConstructionReport con = verify_construction(desc, depth);
  json viol = json::array();
  for (const auto& v : con.violations)
    viol.push_back({{"condition", v.condition}, {"n", v.n}, {"j", v.j}, {"k", v.k}});
  out["construction"] = {{"ok", con.ok()},
                         {"violations", viol},
                         {"growth_witnessed", con.growth_witnessed},
                         {"depth_checked", con.depth_checked}};
  SimplicityResult simp = verify_simplicity_hypotheses(desc, depth);
  json sj = {{"ok", simp.ok}, {"depth_checked", simp.depth_checked}};
  if (simp.first_failure) sj["first_failure"] = simp.first_failure->condition;
  out["simplicity"] = sj;
  if (desc.is_symmetric_two_seed()) {
    TwoSeedVerifyResult two =
        verify_two_seed_hypotheses(TwoSeedParams::from_descriptor(desc), depth);
    const char* st = two.status == TwoSeedVerifyResult::Status::True      ? "true"
                     : two.status == TwoSeedVerifyResult::Status::False   ? "false"
                                                                          : "unknown";
    out["two_seed"] = {{"status", st},
                       {"first_failure", two.first_failure},
                       {"depth_checked", two.depth_checked}};
  }
  return out.dump();
}

std::string py_fingerprint(const std::string& member_text, const std::string& eps) {
  SequenceRegistry reg;
  FamilyMember m = FamilyMember::from_json(parse_json(member_text), reg);
  return fingerprint(m, Rat::parse(eps)).to_json().dump();
}

std::string py_discriminate(const std::string& a, const std::string& b,
                            const std::string& eps) {
  return discriminate(Fingerprint::from_json(parse_json(a)),
                      Fingerprint::from_json(parse_json(b)), Rat::parse(eps))
      .to_json()
      .dump();
}

std::string py_cone(const std::string& desc_text, const std::string& x,
                    const std::string& y, const std::string& eps) {
  TwoSeedParams p = parse_params(desc_text);
  OrderedGroupModel model = OrderedGroupModel::from_params(p, Rat::parse(eps));
  ConeResult res = cone_contains(model, K0Element{Rat::parse(x), Rat::parse(y)});
  const char* v = res.verdict == ConeVerdict::Positive      ? "positive"
                  : res.verdict == ConeVerdict::NotPositive ? "not_positive"
                                                            : "unknown";
  return json{{"verdict", v}, {"margin", res.margin.str()}}.dump();
}

std::string py_gamma(const std::string& desc_text, std::size_t level, long m1, long m2) {
  TwoSeedParams p = parse_params(desc_text);
  return k0_to_json(gamma_image(p, level, Int(m1), Int(m2))).dump();
}

std::string py_state(const std::string& desc_text, const std::string& x,
                     const std::string& y, const std::string& t, const std::string& eps) {
  TwoSeedParams p = parse_params(desc_text);
  OrderedGroupModel model = OrderedGroupModel::from_params(p, Rat::parse(eps));
  Enclosure e = state_eval(model, Rat::parse(t), K0Element{Rat::parse(x), Rat::parse(y)});
  return json{{"value", enclosure_to_json(e)}}.dump();
}

std::string py_divisibility(const std::string& desc_text, unsigned long K,
                            std::size_t depth) {
  DivisibilityReport rep = verify_divisibility(parse_params(desc_text), K, depth);
  json entries = json::array();
  for (const auto& e : rep.entries) {
    json row = {{"k", e.k}};
    if (e.n_r) row["n_r"] = *e.n_r;
    if (e.n_r_prime) row["n_r_prime"] = *e.n_r_prime;
    entries.push_back(row);
  }
  return json{{"entries", entries},
              {"depth_reached", rep.depth_reached},
              {"all_found", rep.all_found()}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_mvs, m) {
  m.doc() = "multiseed Villadsen system toolkit (JSON-string API)";

  static py::exception<error> exc_base(m, "Error");
  static py::exception<parse_error> exc_parse(m, "ParseError", exc_base.ptr());
  static py::exception<unknown_error> exc_unknown(m, "UnknownVerdict", exc_base.ptr());
  static py::exception<budget_exceeded> exc_budget(m, "BudgetExceeded", exc_base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const parse_error& e) {
      py::set_error(exc_parse, e.what());
    } catch (const unknown_error& e) {
      py::set_error(exc_unknown, e.what());
    } catch (const budget_exceeded& e) {
      py::set_error(exc_budget, e.what());
    } catch (const error& e) {
      py::set_error(exc_base, e.what());
    }
  });

  m.def("synthesize_family", &py_synthesize, py::arg("omega"), py::arg("count") = 1,
        py::arg("betas") = std::vector<std::string>{}, py::arg("eps") = "1/1000000000");
  m.def("invariants", &py_invariants, py::arg("descriptor"),
        py::arg("eps") = "1/1000000000", py::arg("depth") = 120);
  m.def("levels", &py_levels, py::arg("descriptor"), py::arg("depth") = 10);
  m.def("verify", &py_verify, py::arg("descriptor"), py::arg("depth") = 120);
  m.def("fingerprint", &py_fingerprint, py::arg("member"), py::arg("eps") = "1/1000000000");
  m.def("discriminate", &py_discriminate, py::arg("a"), py::arg("b"),
        py::arg("eps") = "1/1000000000");
  m.def("cone_contains", &py_cone, py::arg("descriptor"), py::arg("x"), py::arg("y"),
        py::arg("eps") = "1/1000000000");
  m.def("gamma_image", &py_gamma, py::arg("descriptor"), py::arg("level"),
        py::arg("m1"), py::arg("m2"));
  m.def("state_eval", &py_state, py::arg("descriptor"), py::arg("x"), py::arg("y"),
        py::arg("t") = "0", py::arg("eps") = "1/1000000000");
  m.def("verify_divisibility", &py_divisibility, py::arg("descriptor"),
        py::arg("K") = 50, py::arg("depth") = 400);
}
