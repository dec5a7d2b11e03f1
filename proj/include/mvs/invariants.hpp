// Certified computation of the classification invariants: kappa_j, lambda,
// the t(n)/u(n) corner recursions, kappa_1', radius of comparison, corner
// radii, and the local radius of comparison.
//
// Exact quantities (products carried as synthesis witnesses) come out as
// zero-width certified enclosures; limits with a certified tail bound come
// out as shrinking certified enclosures; everything else is reported
// uncertified with the best-effort partial value (hi = partial, lo = 0 for
// decreasing products) — an uncertified number is never presented as
// certified.

#ifndef MVS_INVARIANTS_HPP
#define MVS_INVARIANTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "mvs/system.hpp"

namespace mvs {

// A point of Q + Q in the K_0 model (defined here because the lrc evaluator
// classifies group elements; the k0 module builds the full ordered-group
// model on top).
struct K0Element {
  Rat x;
  Rat y;
  bool operator==(const K0Element& o) const { return x == o.x && y == o.y; }
};

// Raised when a tri-state check cannot be decided within its refinement
// budget; the CLI maps it to the dedicated "Unknown" exit code.
struct unknown_error : error {
  using error::error;
};

// ---------------------------------------------------------------------------
// TwoSeedParams: the symmetric two-seed specialization on which the K0 and
// corner theory applies.  r(n) = prod l(k), r'(n) = prod (l(k) - 2c(k)),
// s_j(n) = prod d_j(k), t(n+1) = d1(n+1) t(n) + c(n+1) (r(n) - t(n)).
// ---------------------------------------------------------------------------
class TwoSeedParams {
 public:
  SeqPtr l, c, d1, d2;
  long h = 0;
  std::vector<SeedSpace> seeds;  // kept for faithful descriptor round trips
  std::optional<Rat> beta;       // exact kappa_2 witness when synthesized

  static TwoSeedParams from_descriptor(const SystemDescriptor& desc,
                                       std::optional<Rat> beta = std::nullopt);
  SystemDescriptor to_descriptor() const;

  // Exact level values (cached per instance, internally synchronized).
  const Int& r(std::size_t n) const;        // prod_{k<=n} l(k)
  const Int& r_prime(std::size_t n) const;  // prod_{k<=n} (l(k) - 2c(k))
  const Int& s1(std::size_t n) const;
  const Int& s2(std::size_t n) const;
  const Int& t(std::size_t n) const;

  // Exact kappa_1 when d1 carries a ratio-product witness against l.
  std::optional<Rat> kappa1_witness() const;
  std::optional<Rat> kappa2_witness() const;

  // True when c emits 1 at every index (constant tail, all-ones prefix).
  bool c_is_one() const;

 private:
  struct Cache {
    std::mutex mu;
    std::deque<Int> r, rp, s1, s2, t;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
  void ensure_locked(std::size_t n) const;
};

// u(n) = (r(n) - t(n)) / s1(n), the nondecreasing reciprocal sequence whose
// limit is 1/kappa_1'.
Frac u_value(const TwoSeedParams& p, std::size_t n);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Enclosure of kappa_j = lim s_j(n)/r_j(n) (j is 1-based).
Enclosure kappa_enclosure(const SystemDescriptor& desc, std::size_t j, const Rat& eps,
                          std::size_t max_depth = 120);

// Enclosure of (1/2) max_j kappa_j * h_j; requires all seeds solid and
// finite dimensional.
Enclosure rc_enclosure(const SystemDescriptor& desc, const Rat& eps,
                       std::size_t max_depth = 120);

// Enclosure of the dimension rank ratio max_j kappa_j * h_j.
Enclosure drr_enclosure(const SystemDescriptor& desc, std::size_t N);

// Enclosure of lambda = prod (1 - 2c(n)/l(n)); certified via the cube tail
// bound [(kappa/gamma_N)^3, 1] when l carries a product witness, c = 1 and
// l(n) >= 3.
Enclosure lambda_enclosure(const TwoSeedParams& p, const Rat& eps,
                           std::size_t max_depth = 120);

// Exact t(0..N).
std::vector<Int> t_sequence(const TwoSeedParams& p, std::size_t N);

// Certified enclosure of kappa_1' = lim s1(n)/(r(n) - t(n)); requires
// kappa_1 certified > 1/2.
Enclosure kappa_prime_enclosure(const TwoSeedParams& p, const Rat& eps,
                                std::size_t max_depth = 120);

struct CornerRc {
  Enclosure rc_p1;  // kappa_2 kappa_1' h / (2 (kappa_1' - kappa_1))
  Enclosure rc_p2;  // kappa_1 kappa_1' h / (2 (kappa_1' - kappa_1))
  Rat ratio;        // rc_p1 / rc_p2 = beta / kappa_1, exact
};

// Both corner radii; requires the certified window
// kappa_1' - kappa_1 <= kappa_2 <= kappa_1^2 / (kappa_1' - kappa_1).
CornerRc corner_rc(const TwoSeedParams& p, const Rat& eps);

struct CornerParams {
  enum class Which { P1, P2 };
  Which which;
  Enclosure kappa1_corner;
  Enclosure kappa2_corner;
  long seed_dim = 0;  // d * h
};

CornerParams corner_params(const TwoSeedParams& p, CornerParams::Which which,
                           const Rat& eps);

// ---------------------------------------------------------------------------
// Two-seed hypothesis verification (tri-state)
// ---------------------------------------------------------------------------

struct TwoSeedVerifyResult {
  enum class Status { True, False, Unknown };
  Status status = Status::True;
  std::string first_failure;   // empty when status == True
  std::size_t depth_checked = 0;  // how deep the per-level checks actually ran
};

TwoSeedVerifyResult verify_two_seed_hypotheses(const TwoSeedParams& p, std::size_t N);

// ---------------------------------------------------------------------------
// Local radius of comparison
// ---------------------------------------------------------------------------

struct LrcResult {
  enum class Kind { Exact, Bounds };
  Kind kind = Kind::Exact;
  Enclosure value;           // when Exact
  std::optional<Rat> lower;  // when Bounds (from monotonicity)
  std::optional<Rat> upper;  // may be absent when no canonical class fits below
  std::string basis;         // which canonical comparison produced the result
};

// Evaluates lrc on a positive K0 class: exact (enclosure) on multiples of
// [1], [p1], [p2]; monotonicity bounds elsewhere.  Defined in the k0-aware
// translation unit because positivity is checked against the cone.
LrcResult lrc_eval(const TwoSeedParams& p, const K0Element& g, const Rat& eps);

}  // namespace mvs

#endif  // MVS_INVARIANTS_HPP
