#include "mvs/sequence.hpp"

#include <map>

namespace mvs {

namespace {

long to_long_checked(const Int& v, const char* what) {
  if (!v.fits_slong_p())
    throw domain_error(std::string(what) + " too large for explicit serialization");
  return v.get_si();
}

nlohmann::json ints_to_json(const std::vector<Int>& xs) {
  nlohmann::json a = nlohmann::json::array();
  for (const Int& x : xs) a.push_back(to_long_checked(x, "sequence entry"));
  return a;
}

std::vector<Int> ints_from_json(const nlohmann::json& a, const char* what) {
  if (!a.is_array()) throw parse_error(std::string(what) + " must be an array");
  std::vector<Int> out;
  out.reserve(a.size());
  for (const auto& x : a) {
    if (!x.is_number_integer()) throw parse_error(std::string(what) + " must hold integers");
    out.emplace_back(static_cast<long>(x.get<long long>()));
  }
  return out;
}

}  // namespace

// --------------------------------------------------------------------------
// Sequence base
// --------------------------------------------------------------------------

const Int& Sequence::at(std::size_t n) {
  if (n == 0) throw domain_error("sequences are indexed from 1");
  std::lock_guard<std::mutex> lock(mu_);
  while (vals_.size() < n) {
    Int v = next_value();
    check_budget(v, vals_.size() + 1);
    vals_.push_back(std::move(v));
  }
  return vals_[n - 1];
}

std::size_t Sequence::materialized() const {
  std::lock_guard<std::mutex> lock(mu_);
  return vals_.size();
}

void Sequence::check_budget(const Int& v, std::size_t index) const {
  const std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
  if (bits > max_term_bits_)
    throw budget_exceeded(
        "sequence term at index " + std::to_string(index) + " needs " +
            std::to_string(bits) + " bits, exceeding the budget of " +
            std::to_string(max_term_bits_) +
            " (greedy terms double in bit size per level)",
        index - 1, bits);
}

// --------------------------------------------------------------------------
// ConstantSeq / TableSeq / OffsetSeq
// --------------------------------------------------------------------------

ConstantSeq::ConstantSeq(std::vector<Int> prefix, Int v, std::size_t max_term_bits)
    : Sequence(max_term_bits), prefix_(std::move(prefix)), v_(std::move(v)) {
  for (const Int& p : prefix_)
    if (p < 0) throw descriptor_error("sequence prefix entries must be nonnegative");
  if (v_ < 0) throw descriptor_error("constant sequence value must be nonnegative");
}

Int ConstantSeq::next_value() {
  const std::size_t n = vals_.size() + 1;
  return n <= prefix_.size() ? prefix_[n - 1] : v_;
}

nlohmann::json ConstantSeq::to_json() const {
  return {{"prefix", ints_to_json(prefix_)},
          {"tail", {{"kind", "constant"}, {"value", to_long_checked(v_, "constant value")}}}};
}

TableSeq::TableSeq(std::vector<Int> prefix, std::vector<Int> values,
                   std::size_t max_term_bits)
    : Sequence(max_term_bits), prefix_(std::move(prefix)), values_(std::move(values)) {}

std::size_t TableSeq::declared_length() const { return prefix_.size() + values_.size(); }

Int TableSeq::next_value() {
  const std::size_t n = vals_.size() + 1;
  if (n <= prefix_.size()) return prefix_[n - 1];
  const std::size_t k = n - prefix_.size();
  if (k <= values_.size()) return values_[k - 1];
  throw descriptor_error("table sequence is declared finite with " +
                         std::to_string(declared_length()) +
                         " entries; index " + std::to_string(n) + " requested");
}

nlohmann::json TableSeq::to_json() const {
  return {{"prefix", ints_to_json(prefix_)},
          {"tail", {{"kind", "table"}, {"values", ints_to_json(values_)}}}};
}

OffsetSeq::OffsetSeq(SeqPtr base, long delta, std::optional<Rat> ratio_witness,
                     std::size_t max_term_bits)
    : Sequence(max_term_bits), base_(std::move(base)), delta_(delta),
      witness_(std::move(ratio_witness)) {
  if (!base_) throw descriptor_error("offset sequence requires a base sequence");
}

Int OffsetSeq::next_value() {
  const std::size_t n = vals_.size() + 1;
  Int v = base_->at(n) + delta_;
  if (v <= 0)
    throw descriptor_error("offset sequence value at index " + std::to_string(n) +
                           " is not positive");
  return v;
}

std::optional<Sequence::RatioWitness> OffsetSeq::ratio_witness() const {
  if (!witness_) return std::nullopt;
  return RatioWitness{*witness_, base_};
}

nlohmann::json OffsetSeq::to_json() const {
  nlohmann::json tail = {{"kind", "offset"}, {"base", base_->to_json()}, {"delta", delta_}};
  if (witness_) tail["witness"] = witness_->str();
  return {{"prefix", nlohmann::json::array()}, {"tail", tail}};
}

// --------------------------------------------------------------------------
// ChooseLSeq
// --------------------------------------------------------------------------

ChooseLSeq::ChooseLSeq(Rat kappa, Int l0, std::size_t max_term_bits)
    : Sequence(max_term_bits), kappa_(std::move(kappa)), l0_(std::move(l0)) {
  if (kappa_ <= Rat(0) || kappa_ >= Rat(1))
    throw domain_error("choose_l: kappa must satisfy 0 < kappa < 1");
  if (l0_ < 3) throw domain_error("choose_l: l0 >= 3 required");
  const Rat one(1);
  const Rat g1 = Rat(l0_ - 1, l0_);  // 1 - 1/l0
  if (!(g1 > kappa_)) throw domain_error("choose_l: 1 - 1/l0 > kappa required");

  // l1: least integer exceeding l0, 1/kappa + 2, and the bound making
  // (1 - 1/l0)(1 - 1/l1) > kappa, i.e. l1 > 1 / (1 - kappa/(1 - 1/l0)).
  const Rat q = kappa_ / g1;  // < 1
  Int cand = l0_ + 1;
  Int b2 = least_integer_gt(kappa_.reciprocal() + Rat(2));
  if (b2 > cand) cand = b2;
  Int b3 = least_integer_gt((one - q).reciprocal());
  if (b3 > cand) cand = b3;
  l1_ = cand;

  // n0: largest integer with (1 - 1/l0)(1 - 1/l1)^(n0-2) > kappa.
  const Rat f = Rat(l1_ - 1, l1_);
  Rat p = g1;
  std::size_t e = 0;
  while (p * f > kappa_) {
    p *= f;
    ++e;
    if (e > 1000000)
      throw budget_exceeded("choose_l: constant stage exceeds iteration cap", 0, 0);
  }
  n0_ = e + 2;  // e >= 1 by the choice of l1, so n0 >= 3
}

void ChooseLSeq::sync_partials_locked() {
  while (gammas_.size() < vals_.size()) {
    const std::size_t k = gammas_.size() + 1;
    const Int& lk = vals_[k - 1];
    Frac g = (k == 1) ? Frac(lk - 1, lk) : gammas_[k - 2].mul(lk - 1, lk);
    if (g.cmp(kappa_) <= 0)
      throw std::logic_error("choose_l: invariant gamma_n > kappa violated");
    gammas_.push_back(std::move(g));
  }
}

Int ChooseLSeq::next_value() {
  sync_partials_locked();
  const std::size_t n = vals_.size() + 1;
  if (n == 1) return l0_;
  if (n <= n0_ - 1) return l1_;
  // Least integer m0 with 1/m0 < 1 - kappa/gamma_{n-1}, i.e.
  // m0 = floor(gamma / (gamma - kappa)) + 1, computed on the unreduced
  // partial product.
  const Frac& g = gammas_[n - 2];
  Int t = g.num * kappa_.den();
  Int diff = t - kappa_.num() * g.den;
  if (diff <= 0) throw std::logic_error("choose_l: invariant gamma_n > kappa violated");
  Int m0;
  mpz_fdiv_q(m0.get_mpz_t(), t.get_mpz_t(), diff.get_mpz_t());
  m0 += 1;
  if (n == n0_) return m0;
  // Divisibility stage: m = least integer >= m0 with m == alpha_j (mod beta_j).
  const std::size_t j = n - n0_;
  const long alpha = (j % 2 == 1) ? 0 : 2;
  const unsigned long beta = (j % 2 == 1) ? (j + 1) / 2 : j / 2;
  Int rem = (Int(alpha) - m0) % Int(beta);
  if (rem < 0) rem += Int(beta);
  return m0 + rem;
}

Frac ChooseLSeq::gamma_frac(std::size_t n) {
  if (n == 0) return Frac(1, 1);
  at(n);  // materialize values 1..n
  std::lock_guard<std::mutex> lock(mu_);
  sync_partials_locked();
  return gammas_[n - 1];
}

nlohmann::json ChooseLSeq::to_json() const {
  return {{"prefix", nlohmann::json::array()},
          {"tail", {{"kind", "choose_l"},
                    {"kappa", kappa_.str()},
                    {"l0", to_long_checked(l0_, "l0")}}}};
}

// --------------------------------------------------------------------------
// ChooseDSeq
// --------------------------------------------------------------------------

ChooseDSeq::ChooseDSeq(SeqPtr l, Rat kappa0, Rat target, std::optional<Int> pin_first,
                       std::size_t max_term_bits)
    : Sequence(max_term_bits), l_(std::move(l)), kappa0_(std::move(kappa0)),
      target_(std::move(target)), pin_first_(std::move(pin_first)) {
  if (!l_) throw domain_error("choose_d: base sequence required");
  auto w = l_->one_minus_inv_witness();
  if (!w || *w != kappa0_)
    throw domain_error(
        "choose_d: base sequence must carry the exact product witness kappa0");
  if (target_.sgn() < 0 || target_ > kappa0_)
    throw domain_error("choose_d: 0 <= target <= kappa0 required");
  if (pin_first_) {
    const Int& l1 = l_->at(1);
    if (*pin_first_ < 1 || *pin_first_ > l1 - 1)
      throw domain_error("choose_d: pin_first outside [1, l(1) - 1]");
    // Feasibility of the renormalized target against the tail product
    // rho_1 = kappa0 / (1 - 1/l(1)):  target * l(1)/v <= kappa0 * l(1)/(l(1)-1)
    // <=> target * (l(1) - 1) <= kappa0 * v.
    if (target_ * Rat(Int(l1 - 1)) > kappa0_ * Rat(*pin_first_))
      throw domain_error("choose_d: pin_first infeasible for this target");
  }
}

void ChooseDSeq::sync_partials_locked() {
  // gamma^l may run one level ahead of the materialized d values (next_value
  // needs it at level n before d(n) exists); never force it further here.
  while (gamma_l_.size() < vals_.size()) {
    const std::size_t k = gamma_l_.size() + 1;
    const Int& lk = l_->at(k);
    gamma_l_.push_back(k == 1 ? Frac(lk - 1, lk) : gamma_l_[k - 2].mul(lk - 1, lk));
  }
  while (gamma_d_.size() < vals_.size()) {
    const std::size_t k = gamma_d_.size() + 1;
    Frac g = (k == 1) ? Frac(vals_[0], l_->at(1))
                      : gamma_d_[k - 2].mul(vals_[k - 1], l_->at(k));
    gamma_d_.push_back(std::move(g));
  }
}

Int ChooseDSeq::next_value() {
  sync_partials_locked();
  const std::size_t n = vals_.size() + 1;
  const Int& ln = l_->at(n);
  if (ln < 2) throw descriptor_error("choose_d: base sequence value < 2");
  if (gamma_l_.size() < n)
    gamma_l_.push_back(n == 1 ? Frac(ln - 1, ln) : gamma_l_[n - 2].mul(ln - 1, ln));
  Int m;
  if (pin_first_ && n == 1) {
    m = *pin_first_;
  } else {
    // Least m with gamma^d_{n-1} * m * rho_n / l(n) >= target, rho_n =
    // kappa0/gamma^l_n:  m = ceil(target * l(n) * gamma^l_n / (gamma^d_{n-1} * kappa0)).
    const Frac gd = (n == 1) ? Frac(1, 1) : gamma_d_[n - 2];
    const Frac& gl = gamma_l_[n - 1];
    Int num = target_.num() * ln * gl.num * gd.den * kappa0_.den();
    Int den = target_.den() * gl.den * gd.num * kappa0_.num();
    m = ceil_div(num, den);
    if (m < 1) m = 1;
  }
  if (m > ln - 1)
    throw std::logic_error("choose_d: greedy exceeded l(n) - 1 (invalid witness?)");
  return m;
}

Frac ChooseDSeq::gamma_rho(std::size_t n) {
  if (n == 0) throw domain_error("gamma_rho is defined for n >= 1");
  at(n);
  std::lock_guard<std::mutex> lock(mu_);
  sync_partials_locked();
  const Frac& gd = gamma_d_[n - 1];
  const Frac& gl = gamma_l_[n - 1];
  Frac out(gd.num * kappa0_.num() * gl.den, gd.den * kappa0_.den() * gl.num);
  if (out.cmp(target_) < 0)
    throw std::logic_error("choose_d: invariant gamma_n * rho_n >= target violated");
  return out;
}

std::optional<Sequence::RatioWitness> ChooseDSeq::ratio_witness() const {
  return RatioWitness{target_, l_};
}

nlohmann::json ChooseDSeq::to_json() const {
  nlohmann::json tail = {{"kind", "choose_d"},
                         {"target", target_.str()},
                         {"l", l_->to_json()}};
  if (pin_first_) tail["pin_first"] = to_long_checked(*pin_first_, "pin_first");
  return {{"prefix", nlohmann::json::array()}, {"tail", tail}};
}

// --------------------------------------------------------------------------
// JSON round trip
// --------------------------------------------------------------------------

SeqPtr SequenceRegistry::intern(SeqPtr s) {
  const std::string key = s->canonical_key();
  auto it = pool_.find(key);
  if (it != pool_.end()) return it->second;
  pool_.emplace(key, s);
  return s;
}

SeqPtr sequence_from_json(const nlohmann::json& j, SequenceRegistry& reg,
                          std::size_t max_term_bits) {
  if (!j.is_object() || !j.contains("tail"))
    throw parse_error("sequence spec must be an object with a 'tail'");
  std::vector<Int> prefix;
  if (j.contains("prefix")) prefix = ints_from_json(j.at("prefix"), "sequence prefix");
  const nlohmann::json& tail = j.at("tail");
  if (!tail.is_object() || !tail.contains("kind"))
    throw parse_error("sequence tail must carry a 'kind'");
  const std::string kind = tail.at("kind").get<std::string>();

  SeqPtr out;
  if (kind == "constant") {
    if (!tail.contains("value") || !tail.at("value").is_number_integer())
      throw parse_error("constant tail requires integer 'value'");
    out = std::make_shared<ConstantSeq>(std::move(prefix),
                                        Int(static_cast<long>(tail.at("value").get<long long>())),
                                        max_term_bits);
  } else if (kind == "table") {
    out = std::make_shared<TableSeq>(std::move(prefix),
                                     ints_from_json(tail.at("values"), "table values"),
                                     max_term_bits);
  } else if (kind == "choose_l") {
    if (!prefix.empty()) throw parse_error("choose_l tail does not take a prefix");
    Rat kappa = Rat::parse(tail.at("kappa").get<std::string>());
    Int l0(static_cast<long>(tail.at("l0").get<long long>()));
    out = std::make_shared<ChooseLSeq>(std::move(kappa), std::move(l0), max_term_bits);
  } else if (kind == "choose_d") {
    if (!prefix.empty()) throw parse_error("choose_d tail does not take a prefix");
    SeqPtr base = sequence_from_json(tail.at("l"), reg, max_term_bits);
    auto w = base->one_minus_inv_witness();
    if (!w) throw parse_error("choose_d base sequence carries no product witness");
    Rat target = Rat::parse(tail.at("target").get<std::string>());
    std::optional<Int> pin;
    if (tail.contains("pin_first"))
      pin = Int(static_cast<long>(tail.at("pin_first").get<long long>()));
    out = std::make_shared<ChooseDSeq>(std::move(base), *w, std::move(target),
                                       std::move(pin), max_term_bits);
  } else if (kind == "offset") {
    if (!prefix.empty()) throw parse_error("offset tail does not take a prefix");
    SeqPtr base = sequence_from_json(tail.at("base"), reg, max_term_bits);
    const long delta = static_cast<long>(tail.at("delta").get<long long>());
    std::optional<Rat> witness;
    if (tail.contains("witness")) {
      witness = Rat::parse(tail.at("witness").get<std::string>());
    } else if (delta == -1) {
      // d(n) = l(n) - 1 has prod d/l = prod (1 - 1/l), so the base witness
      // transfers verbatim.
      if (auto w = base->one_minus_inv_witness()) witness = *w;
    }
    out = std::make_shared<OffsetSeq>(std::move(base), delta, std::move(witness),
                                      max_term_bits);
  } else {
    throw parse_error("unknown sequence tail kind '" + kind + "'");
  }
  return reg.intern(std::move(out));
}

}  // namespace mvs
