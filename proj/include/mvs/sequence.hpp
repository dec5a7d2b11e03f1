// Lazy, memoized integer sequences (the l(n), c(n), d_j(n) of a system
// descriptor), including the two greedy constructions with exact product
// witnesses.
//
// A sequence is indexed from 1.  Values are materialized on demand and cached;
// synthesized sequences grow doubly exponentially in bit size (the greedy's
// certification invariant forces l(n+1) ~ l(n)^2), so every sequence carries a
// per-term bit budget and throws budget_exceeded instead of attempting to
// build physically unrepresentable integers.

#ifndef MVS_SEQUENCE_HPP
#define MVS_SEQUENCE_HPP

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mvs/numerics.hpp"

namespace mvs {

// Default cap on the bit size of a single materialized term.  2^24 bits keeps
// the deepest reachable synthesis level near 24 with sub-second arithmetic.
inline constexpr std::size_t kDefaultMaxTermBits = std::size_t(1) << 24;

class Sequence;
using SeqPtr = std::shared_ptr<Sequence>;

class Sequence {
 public:
  virtual ~Sequence() = default;

  // 1-based access; materializes lazily.  Throws budget_exceeded when the
  // value at n would exceed the bit budget, descriptor_error when a
  // declared-finite table is exhausted.
  const Int& at(std::size_t n);

  std::size_t materialized() const;

  virtual nlohmann::json to_json() const = 0;

  // Canonical serialized form; two sequences with equal keys emit identical
  // values at every index.
  std::string canonical_key() const { return to_json().dump(); }

  // Exact value of prod_{n>=1} (1 - 1/a(n)) when carried as a witness
  // (choose_l output).
  virtual std::optional<Rat> one_minus_inv_witness() const { return std::nullopt; }

  // Exact value of prod_{n>=1} a(n)/base(n) against a base sequence, when
  // carried as a witness (choose_d output; d1 = l - 1 relative to l).
  struct RatioWitness {
    Rat value;
    SeqPtr base;
  };
  virtual std::optional<RatioWitness> ratio_witness() const { return std::nullopt; }

  std::size_t max_term_bits() const { return max_term_bits_; }

 protected:
  explicit Sequence(std::size_t max_term_bits) : max_term_bits_(max_term_bits) {}

  // Computes the value at index vals_.size() + 1.  Called under lock.
  virtual Int next_value() = 0;

  // Enforces the bit budget before a value is stored.
  void check_budget(const Int& v, std::size_t index) const;

  std::deque<Int> vals_;
  std::size_t max_term_bits_;
  mutable std::mutex mu_;
};

// --------------------------------------------------------------------------
// Plain sequences
// --------------------------------------------------------------------------

// prefix values, then v forever.
class ConstantSeq final : public Sequence {
 public:
  ConstantSeq(std::vector<Int> prefix, Int v,
              std::size_t max_term_bits = kDefaultMaxTermBits);
  nlohmann::json to_json() const override;

 protected:
  Int next_value() override;

 private:
  std::vector<Int> prefix_;
  Int v_;
};

// prefix values then table values; access past the end is a descriptor error
// (declared-finite use).
class TableSeq final : public Sequence {
 public:
  TableSeq(std::vector<Int> prefix, std::vector<Int> values,
           std::size_t max_term_bits = kDefaultMaxTermBits);
  nlohmann::json to_json() const override;
  std::size_t declared_length() const;

 protected:
  Int next_value() override;

 private:
  std::vector<Int> prefix_;
  std::vector<Int> values_;
};

// a(n) = base(n) + delta, with an optional exact ratio-product witness
// relative to base (used for d1 = l - 1 where prod d1/l = kappa1).
class OffsetSeq final : public Sequence {
 public:
  OffsetSeq(SeqPtr base, long delta, std::optional<Rat> ratio_witness,
            std::size_t max_term_bits = kDefaultMaxTermBits);
  nlohmann::json to_json() const override;
  std::optional<RatioWitness> ratio_witness() const override;

 protected:
  Int next_value() override;

 private:
  SeqPtr base_;
  long delta_;
  std::optional<Rat> witness_;
};

// --------------------------------------------------------------------------
// Greedy constructions
// --------------------------------------------------------------------------

// Nondecreasing l(n) -> infinity with exact infinite product
// prod (1 - 1/l(n)) = kappa, certification invariant 0 < gamma_N - kappa <
// 1/l(N) at every prefix, and the alternating divisibility schedule
// (beta_j | l - alpha_j with alpha in {0, 2}).
//
// Staging: l(1) = l0; l1 = least integer > max(l0, 1/kappa + 2) with
// (1 - 1/l0)(1 - 1/l1) > kappa; n0 = largest integer with
// (1 - 1/l0)(1 - 1/l1)^(n0 - 2) > kappa; l(2..n0-1) = l1; l(n0) = least l2
// with 1/l2 < 1 - kappa/gamma_{n0-1}; thereafter the least m with
// 1/m < 1 - kappa/gamma_n, rounded up to the divisibility class
// m = alpha_j (mod beta_j).
class ChooseLSeq final : public Sequence {
 public:
  ChooseLSeq(Rat kappa, Int l0, std::size_t max_term_bits = kDefaultMaxTermBits);

  nlohmann::json to_json() const override;
  std::optional<Rat> one_minus_inv_witness() const override { return kappa_; }

  const Rat& kappa() const { return kappa_; }
  // Partial product gamma_N = prod_{k<=N} (1 - 1/l(k)), unreduced.
  Frac gamma_frac(std::size_t n);
  // First index of the divisibility stage.
  std::size_t n0() const { return n0_; }

 protected:
  Int next_value() override;

 private:
  void sync_partials_locked();

  Rat kappa_;
  Int l0_, l1_;
  std::size_t n0_;
  std::deque<Frac> gammas_;  // gammas_[n-1] = gamma_n (kept in lockstep with vals_)
};

// d(n) with 1 <= d(n) <= l(n) - 1 and exact product prod d(n)/l(n) = target.
// Greedy rule: d(n) is the least m with gamma^d_{n-1} * m * rho_n / l(n) >=
// target, where rho_n = kappa0 / gamma^l_n is exact via the witness kappa0 of
// the base sequence.  pin_first fixes d(1) and runs the greedy from index 2
// (equivalently: against the target renormalized by l(1)/d(1)).
class ChooseDSeq final : public Sequence {
 public:
  ChooseDSeq(SeqPtr l, Rat kappa0, Rat target, std::optional<Int> pin_first,
             std::size_t max_term_bits = kDefaultMaxTermBits);

  nlohmann::json to_json() const override;
  std::optional<RatioWitness> ratio_witness() const override;

  const Rat& target() const { return target_; }
  // gamma^d_N * rho_N, unreduced — the greedy's two-sided invariant value,
  // provably in [target, target + 1/l(N)).
  Frac gamma_rho(std::size_t n);

 protected:
  Int next_value() override;

 private:
  void sync_partials_locked();

  SeqPtr l_;
  Rat kappa0_;
  Rat target_;
  std::optional<Int> pin_first_;
  std::deque<Frac> gamma_l_;  // prod (1 - 1/l(k))
  std::deque<Frac> gamma_d_;  // prod d(k)/l(k)
};

// --------------------------------------------------------------------------
// JSON round trip
// --------------------------------------------------------------------------

// Interning pool so that the same serialized sequence (e.g. the l-sequence
// referenced both by mu and nested inside d2's generator) shares one
// materialization cache.
class SequenceRegistry {
 public:
  SeqPtr intern(SeqPtr s);

 private:
  std::map<std::string, SeqPtr> pool_;
};

SeqPtr sequence_from_json(const nlohmann::json& j, SequenceRegistry& reg,
                          std::size_t max_term_bits = kDefaultMaxTermBits);

}  // namespace mvs

#endif  // MVS_SEQUENCE_HPP
