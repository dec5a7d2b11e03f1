// Synthesis: the greedy sequence constructions and the family generator
// producing, for a target radius of comparison omega, a one-parameter family
// of pairwise non-isomorphic systems (parameterized by the exact value
// beta = kappa_2) sharing every classical invariant.

#ifndef MVS_SYNTH_HPP
#define MVS_SYNTH_HPP

#include <optional>
#include <utility>
#include <vector>

#include "mvs/invariants.hpp"

namespace mvs {

// l(n) with exact witness prod (1 - 1/l(n)) = kappa; kappa in (0, 1),
// l0 >= 3, 1 - 1/l0 > kappa.
SeqPtr choose_l(const Rat& kappa, const Int& l0,
                std::size_t max_term_bits = kDefaultMaxTermBits);

// d(n) with 1 <= d(n) <= l(n) - 1 and exact witness prod d(n)/l(n) = target;
// l must carry a product witness kappa0 >= target; pin_first fixes d(1).
SeqPtr choose_d(const SeqPtr& l, const Rat& target, std::optional<Int> pin_first,
                std::size_t max_term_bits = kDefaultMaxTermBits);

// The certified open interval of admissible beta = kappa_2 values
//   (kappa_1'_hi - kappa_1,  min(kappa_1, kappa_1^2 / (kappa_1'_hi - kappa_1)))
// computed from a kappa_1' enclosure of width <= eps (refined internally
// until the interval is nonempty; throws unknown_error when it cannot be).
std::pair<Rat, Rat> beta_interval(const TwoSeedParams& base, const Rat& eps);

struct FamilyRequest {
  Rat omega;                     // target radius of comparison, > 0
  std::vector<Rat> betas;        // explicit beta values (validated), or
  std::size_t count = 0;         // this many auto-chosen betas (default 1)
  Rat eps = Rat(1, 1000000000);
  std::size_t max_term_bits = kDefaultMaxTermBits;
};

struct FamilyMember {
  SystemDescriptor descriptor;
  Rat beta;           // exact kappa_2
  Int amplification;  // N: the order unit is (N, 0); N = 1 when omega > 1/2
  // Derivation record.
  Rat omega;
  Rat kappa1;
  long h = 0;

  TwoSeedParams params() const;
  nlohmann::json to_json() const;
  static FamilyMember from_json(const nlohmann::json& j, SequenceRegistry& reg,
                                std::size_t max_term_bits = kDefaultMaxTermBits);
};

// Builds the family at omega: h = least integer > 2 omega', kappa_1 =
// 2 omega'/h with omega' = N omega amplified past 1/2, c = 1, d_1 = l - 1
// over the greedy l, and one member per beta with d_2 = choose_d(l, beta)
// pinned to d_2(1) = l(1) - 1.
std::vector<FamilyMember> synthesize_family(const FamilyRequest& req);

}  // namespace mvs

#endif  // MVS_SYNTH_HPP
