// The ordered K_0 model of a symmetric two-seed system: the group Q + Q with
// positive cone {(0,0)} ∪ {(x,y) : x > lambda |y|}, order unit (N, 0), the
// level embeddings gamma_n and AF transitions, states, automorphisms, and the
// divisibility criterion for surjectivity of the limit map.

#ifndef MVS_K0_HPP
#define MVS_K0_HPP

#include <functional>
#include <optional>
#include <vector>

#include "mvs/invariants.hpp"

namespace mvs {

struct OrderedGroupModel {
  Enclosure lambda;  // enclosure of the cone slope, subset of [0, 1]
  K0Element unit;    // (N, 0); N = 1 unamplified

  // Positivity is decidable from any enclosure except on the boundary strip.
  static OrderedGroupModel from_params(const TwoSeedParams& p, const Rat& eps,
                                       const Int& amplification = Int(1));
};

// A linear map of Q + Q, row-major [[a, b], [c, d]]; must be invertible.
struct GroupAutomorphism {
  Rat a, b, c, d;

  K0Element apply(const K0Element& g) const;
  Rat det() const { return a * d - b * c; }
  GroupAutomorphism inverse() const;  // throws domain_error when det = 0
  bool fixes_unit_direction() const { return a == Rat(1) && c == Rat(0); }
  bool is_identity() const;
  bool is_sigma() const;  // (x, y) -> (x, -y)
};

// gamma_n(m1, m2) = ((m1 + m2)/(2 r(n)), (m1 - m2)/(2 r'(n))).
K0Element gamma_image(const TwoSeedParams& p, std::size_t n, const Int& m1,
                      const Int& m2);

// The 2x2 AF transition matrix from level n to level n + 1, i.e.
// [[l - c, c], [c, l - c]] evaluated at n + 1; gamma_{n+1} composed with it
// equals gamma_n.
Matrix af_transition(const TwoSeedParams& p, std::size_t n);

enum class ConeVerdict { Positive, NotPositive, Unknown };

struct ConeResult {
  ConeVerdict verdict = ConeVerdict::Unknown;
  // Distance witness: for Positive, x - lambda_hi |y|; for NotPositive,
  // lambda_lo |y| - x; for Unknown, the undecided gap.
  Rat margin;
};

// Membership of g in the positive cone.  `refine`, when provided, is asked to
// tighten the lambda enclosure (returns false when it cannot improve);
// at most max_refine rounds.
ConeResult cone_contains(const OrderedGroupModel& model, const K0Element& g,
                         const std::function<bool(Enclosure&)>& refine = {},
                         int max_refine = 0);

// The state x + t * lambda * y at parameter t in [-1, 1], as an enclosure.
Enclosure state_eval(const OrderedGroupModel& model, const Rat& t,
                     const K0Element& g);

// {identity, sigma}; requires lambda certified with lambda.lo > 0 (at
// lambda = 0 the order is lexicographic-free and the result would differ).
std::vector<GroupAutomorphism> canonical_automorphisms(const OrderedGroupModel& model);

// Witness that a unit-preserving map other than identity/sigma fails to
// preserve the cone: a positive element whose image under some power of Q
// (or of Q^-1, mirroring the sigma-conjugation reductions) is certifiably
// not positive.
struct ConeWitness {
  K0Element start;      // certified positive
  K0Element image;      // certified not positive
  std::size_t power = 0;
  bool used_inverse = false;
};

std::optional<ConeWitness> cone_preservation_witness(
    const OrderedGroupModel& model, const GroupAutomorphism& Q,
    const std::vector<Rat>& y_grid, std::size_t n_max);

// Divisibility criterion: for each k = 1..K, the least n with k | r(n) and
// the least n with k | r'(n) (within depth); surjectivity of the limit map
// needs both for every k.
struct DivisibilityEntry {
  unsigned long k = 0;
  std::optional<std::size_t> n_r;        // least n with k | r(n)
  std::optional<std::size_t> n_r_prime;  // least n with k | r'(n)
};

struct DivisibilityReport {
  std::vector<DivisibilityEntry> entries;
  std::size_t depth_reached = 0;  // levels actually scanned
  bool all_found() const;
};

DivisibilityReport verify_divisibility(const TwoSeedParams& p, unsigned long K,
                                       std::size_t depth = 400);

}  // namespace mvs

#endif  // MVS_K0_HPP
