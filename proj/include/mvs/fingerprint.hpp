// Invariant fingerprints of family members and the discrimination procedure:
// two members are compared under the only order-unit-preserving K_0
// automorphisms (identity and the flip sigma), and distinguished exactly when
// both corner assignments are certifiably unequal.

#ifndef MVS_FINGERPRINT_HPP
#define MVS_FINGERPRINT_HPP

#include "mvs/synth.hpp"

namespace mvs {

struct Fingerprint {
  Rat omega;
  long h = 0;
  Rat kappa1;  // exact coefficient of lrc_p2 (up to the shared corner factor)
  Rat beta;    // exact coefficient of lrc_p1
  Enclosure lambda;
  Enclosure lrc_unit;  // at the order unit (N, 0): omega exactly for members
  Enclosure lrc_p1;    // at [p1] = (1/2, 1/2)
  Enclosure lrc_p2;    // at [p2] = (1/2, -1/2)
  Rat ratio_p1_p2;     // beta / kappa1, exact; < 1 for genuine members
  K0Element unit;
  bool stable_rank_one = true;  // input fact recorded, not computed

  nlohmann::json to_json() const;
  static Fingerprint from_json(const nlohmann::json& j);
};

// Builds the fingerprint; the member must pass the construction, simplicity
// and two-seed verifiers (rejected with a precondition error otherwise).
Fingerprint fingerprint(const FamilyMember& member, const Rat& eps);

// The fingerprint of the same algebra with the corner roles exchanged by the
// flip automorphism sigma.
Fingerprint sigma_image(const Fingerprint& f);

enum class Verdict { Distinguishable, NotDistinguishable, Unknown };

struct DiscriminateResult {
  Verdict verdict = Verdict::Unknown;
  nlohmann::json witness;  // the certified-unequal datum, when Distinguishable

  nlohmann::json to_json() const;
};

// Symmetric; decided by the exact corner coefficients whenever they differ
// (members built at the same omega share the corner common factor, so
// coefficient inequality is value inequality).
DiscriminateResult discriminate(const Fingerprint& f1, const Fingerprint& f2,
                                const Rat& eps);

}  // namespace mvs

#endif  // MVS_FINGERPRINT_HPP
