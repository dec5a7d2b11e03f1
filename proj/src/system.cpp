#include "mvs/system.hpp"

namespace mvs {

namespace {

Int int_from_json(const nlohmann::json& j, const char* what) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Int(j.get<std::string>());
  throw parse_error(std::string(what) + " must be an integer");
}

nlohmann::json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();  // big values serialize as decimal strings
}

}  // namespace

Matrix MuSpec::at(std::size_t n, std::size_t m) const {
  if (n == 0) throw domain_error("mu(n) is defined for n >= 1");
  if (kind == Kind::SymmetricTwoSeed) {
    if (m != 2) throw descriptor_error("symmetric two-seed mu requires m = 2");
    const Int& lv = l->at(n);
    const Int& cv = c->at(n);
    Int diag = lv - cv;
    if (diag < 0)
      throw descriptor_error("mu entry l(n) - c(n) negative at n = " + std::to_string(n));
    return {{diag, cv}, {cv, diag}};
  }
  if (n > tables.size())
    throw descriptor_error("explicit mu tables are declared finite with " +
                           std::to_string(tables.size()) + " levels; level " +
                           std::to_string(n) + " requested");
  return tables[n - 1];
}

void SystemDescriptor::validate_shape() const {
  if (m < 1) throw descriptor_error("descriptor requires m >= 1");
  if (seeds.size() != static_cast<std::size_t>(m))
    throw descriptor_error("seeds list must have length m");
  if (d.size() != static_cast<std::size_t>(m))
    throw descriptor_error("d list must have length m");
  if (r0.size() != static_cast<std::size_t>(m))
    throw descriptor_error("r0 list must have length m");
  for (const Int& r : r0)
    if (r < 1) throw descriptor_error("r0 entries must be positive");
  for (const SeedSpace& s : seeds) {
    if (s.dim < 0) throw descriptor_error("seed dimension must be nonnegative");
  }
  if (mu.kind == MuSpec::Kind::SymmetricTwoSeed) {
    if (m != 2) throw descriptor_error("symmetric two-seed mu requires m = 2");
    if (!mu.l || !mu.c) throw descriptor_error("symmetric two-seed mu requires l and c");
  } else {
    for (std::size_t n = 0; n < mu.tables.size(); ++n) {
      const Matrix& t = mu.tables[n];
      if (t.size() != static_cast<std::size_t>(m))
        throw descriptor_error("mu table at level " + std::to_string(n + 1) +
                               " has wrong row count");
      for (const auto& row : t) {
        if (row.size() != static_cast<std::size_t>(m))
          throw descriptor_error("mu table at level " + std::to_string(n + 1) +
                                 " has wrong column count");
        for (const Int& e : row)
          if (e < 0) throw descriptor_error("mu entries must be nonnegative");
      }
    }
  }
}

bool SystemDescriptor::is_symmetric_two_seed() const {
  return mu.kind == MuSpec::Kind::SymmetricTwoSeed && m == 2;
}

void SystemDescriptor::ensure_levels_locked(std::size_t n) const {
  LevelCache& cc = *cache_;
  if (cc.r.empty()) {
    cc.r.push_back(r0);
    cc.s.push_back(std::vector<Int>(m, Int(1)));
    if (is_symmetric_two_seed()) cc.rp.push_back(Int(1));
  }
  while (cc.r.size() <= n) {
    const std::size_t lvl = cc.r.size();  // computing level lvl from lvl-1
    Matrix mat = mu.at(lvl, m);
    const std::vector<Int>& prev = cc.r[lvl - 1];
    std::vector<Int> rn(m, Int(0));
    for (long k = 0; k < m; ++k)
      for (long j = 0; j < m; ++j) rn[k] += mat[k][j] * prev[j];
    std::vector<Int> sn(m);
    for (long j = 0; j < m; ++j) {
      const Int& dj = d[j]->at(lvl);
      if (dj < 1)
        throw descriptor_error("d_" + std::to_string(j + 1) + "(" +
                               std::to_string(lvl) + ") must be positive");
      sn[j] = cc.s[lvl - 1][j] * dj;
    }
    if (is_symmetric_two_seed()) {
      Int step = mu.l->at(lvl) - 2 * mu.c->at(lvl);
      if (step < 1)
        throw descriptor_error("l(n) - 2c(n) must be positive for r'(n) at n = " +
                               std::to_string(lvl));
      cc.rp.push_back(cc.rp[lvl - 1] * step);
    }
    cc.r.push_back(std::move(rn));
    cc.s.push_back(std::move(sn));
  }
}

const std::vector<Int>& SystemDescriptor::r(std::size_t n) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  ensure_levels_locked(n);
  return cache_->r[n];
}

const std::vector<Int>& SystemDescriptor::s(std::size_t n) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  ensure_levels_locked(n);
  return cache_->s[n];
}

const Int& SystemDescriptor::r_prime(std::size_t n) const {
  if (!is_symmetric_two_seed())
    throw domain_error("r'(n) is defined only for symmetric two-seed descriptors");
  std::lock_guard<std::mutex> lock(cache_->mu);
  ensure_levels_locked(n);
  return cache_->rp[n];
}

std::vector<LevelData> compute_levels(const SystemDescriptor& desc, std::size_t N) {
  desc.validate_shape();
  std::vector<LevelData> out;
  out.reserve(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    LevelData ld;
    ld.n = n;
    ld.r = desc.r(n);
    ld.s = desc.s(n);
    if (desc.is_symmetric_two_seed()) ld.r_prime = desc.r_prime(n);
    out.push_back(std::move(ld));
  }
  return out;
}

ConstructionReport verify_construction(const SystemDescriptor& desc, std::size_t N) {
  desc.validate_shape();
  ConstructionReport rep;
  for (std::size_t n = 1; n <= N; ++n) {
    Matrix mat;
    try {
      mat = desc.mu.at(n, desc.m);
      for (long j = 0; j < desc.m; ++j) desc.d[j]->at(n);
    } catch (const budget_exceeded&) {
      break;  // horizon of representable terms; prefix fully checked
    } catch (const descriptor_error&) {
      break;  // declared-finite depth reached
    }
    rep.depth_checked = n;
    for (long j = 0; j < desc.m; ++j) {
      const Int& dj = desc.d[j]->at(n);
      if (dj < 1)
        rep.violations.push_back({"1 <= d_j(n)", n, static_cast<std::size_t>(j + 1), 0});
      if (dj > mat[j][j])
        rep.violations.push_back(
            {"d_j(n) <= mu_{j,j}(n)", n, static_cast<std::size_t>(j + 1),
             static_cast<std::size_t>(j + 1)});
    }
  }
  // Growth: r_j strictly increases beyond each bound within the checked
  // depth, i.e. every value r_j(n), n < M, is strictly exceeded later.
  const std::size_t M = rep.depth_checked;
  rep.growth_witnessed.assign(desc.m, M > 0);
  if (M == 0) return rep;
  std::vector<std::vector<Int>> rs;
  rs.reserve(M + 1);
  for (std::size_t n = 0; n <= M; ++n) rs.push_back(desc.r(n));
  for (long j = 0; j < desc.m; ++j) {
    Int suffix_max = rs[M][j];
    for (std::size_t n = M; n-- > 0;) {
      if (rs[n][j] >= suffix_max) {  // not strictly exceeded by any later level
        rep.growth_witnessed[j] = false;
        break;
      }
    }
  }
  return rep;
}

SimplicityResult verify_simplicity_hypotheses(const SystemDescriptor& desc, std::size_t N) {
  desc.validate_shape();
  SimplicityResult res{true, std::nullopt, 0};
  for (std::size_t n = 1; n <= N; ++n) {
    Matrix mat;
    try {
      mat = desc.mu.at(n, desc.m);
      for (long j = 0; j < desc.m; ++j) desc.d[j]->at(n);
    } catch (const budget_exceeded&) {
      break;
    } catch (const descriptor_error&) {
      break;
    }
    res.depth_checked = n;
    for (long k = 0; k < desc.m; ++k)
      for (long j = 0; j < desc.m; ++j)
        if (mat[k][j] < 1) {
          res.ok = false;
          res.first_failure = Violation{"mu_{k,j}(n) >= 1", n,
                                        static_cast<std::size_t>(j + 1),
                                        static_cast<std::size_t>(k + 1)};
          return res;
        }
    for (long j = 0; j < desc.m; ++j) {
      const Int& dj = desc.d[j]->at(n);
      if (mat[j][j] < dj) {
        res.ok = false;
        res.first_failure = Violation{"mu_{j,j}(n) >= d_j(n)", n,
                                      static_cast<std::size_t>(j + 1),
                                      static_cast<std::size_t>(j + 1)};
        return res;
      }
    }
    if (desc.m == 1 && mat[0][0] < desc.d[0]->at(n) + 1) {
      res.ok = false;
      res.first_failure = Violation{"mu_{1,1}(n) >= d_1(n) + 1 (single seed)", n, 1, 1};
      return res;
    }
  }
  return res;
}

Int rank_propagate(const std::vector<Int>& rho, const std::vector<Int>& sizes,
                   const Int& l, const std::vector<Int>& ranks) {
  if (rho.size() != sizes.size() || rho.size() != ranks.size())
    throw contract_error("rank_propagate: rho, sizes, ranks must have equal length");
  Int total(0);
  for (std::size_t j = 0; j < rho.size(); ++j) total += sizes[j] * rho[j];
  if (total != l)
    throw contract_error("rank_propagate: sum k_j rho_j = " + total.get_str() +
                         " does not match l = " + l.get_str());
  Int out(0);
  for (std::size_t j = 0; j < rho.size(); ++j) out += rho[j] * ranks[j];
  return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

nlohmann::json SystemDescriptor::to_json() const {
  nlohmann::json seeds_j = nlohmann::json::array();
  for (const SeedSpace& s : seeds)
    seeds_j.push_back({{"dim", s.dim}, {"solid", s.solid}, {"contractible", s.contractible}});
  nlohmann::json d_j = nlohmann::json::array();
  for (const SeqPtr& sq : d) d_j.push_back(sq->to_json());
  nlohmann::json mu_j;
  if (mu.kind == MuSpec::Kind::SymmetricTwoSeed) {
    mu_j = {{"kind", "symmetric_two_seed"}, {"l", mu.l->to_json()}, {"c", mu.c->to_json()}};
  } else {
    nlohmann::json tables = nlohmann::json::array();
    for (const Matrix& t : mu.tables) {
      nlohmann::json tj = nlohmann::json::array();
      for (const auto& row : t) {
        nlohmann::json rj = nlohmann::json::array();
        for (const Int& e : row) rj.push_back(int_to_json(e));
        tj.push_back(std::move(rj));
      }
      tables.push_back(std::move(tj));
    }
    mu_j = {{"kind", "explicit"}, {"tables", std::move(tables)}};
  }
  nlohmann::json r0_j = nlohmann::json::array();
  for (const Int& r : r0) r0_j.push_back(int_to_json(r));
  return {{"m", m},       {"seeds", seeds_j}, {"d", d_j},
          {"mu", mu_j},   {"r0", r0_j},       {"diagonal", diagonal}};
}

SystemDescriptor SystemDescriptor::from_json(const nlohmann::json& j,
                                             SequenceRegistry& reg,
                                             std::size_t max_term_bits) {
  if (!j.is_object()) throw parse_error("descriptor must be a JSON object");
  SystemDescriptor desc;
  try {
    desc.m = j.at("m").get<long>();
    for (const auto& s : j.at("seeds")) {
      SeedSpace seed;
      seed.dim = s.at("dim").get<long>();
      seed.solid = s.at("solid").get<bool>();
      seed.contractible = s.at("contractible").get<bool>();
      desc.seeds.push_back(seed);
    }
    for (const auto& sq : j.at("d"))
      desc.d.push_back(sequence_from_json(sq, reg, max_term_bits));
    const nlohmann::json& mu_j = j.at("mu");
    const std::string kind = mu_j.at("kind").get<std::string>();
    if (kind == "symmetric_two_seed") {
      desc.mu.kind = MuSpec::Kind::SymmetricTwoSeed;
      desc.mu.l = sequence_from_json(mu_j.at("l"), reg, max_term_bits);
      desc.mu.c = sequence_from_json(mu_j.at("c"), reg, max_term_bits);
    } else if (kind == "explicit") {
      desc.mu.kind = MuSpec::Kind::Explicit;
      for (const auto& tj : mu_j.at("tables")) {
        Matrix t;
        for (const auto& rj : tj) {
          std::vector<Int> row;
          for (const auto& e : rj) row.push_back(int_from_json(e, "mu entry"));
          t.push_back(std::move(row));
        }
        desc.mu.tables.push_back(std::move(t));
      }
    } else {
      throw parse_error("unknown mu kind '" + kind + "'");
    }
    for (const auto& r : j.at("r0")) desc.r0.push_back(int_from_json(r, "r0 entry"));
    desc.diagonal = j.value("diagonal", true);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("malformed descriptor JSON: ") + e.what());
  }
  desc.validate_shape();
  return desc;
}

}  // namespace mvs
