// Data model for multiseed Villadsen systems: seed spaces, the d_j and mu
// sequences, the exact level recursions
//
//   r_k(n+1) = sum_j mu_{k,j}(n+1) * r_j(n)        (matrix sizes)
//   s_j(n)   = prod_{k<=n} d_j(k),  s_j(0) = 1     (coordinate counts)
//   r'(n)    = prod_{k<=n} (l(k) - 2c(k))          (two-seed symmetric only)
//
// plus the hypothesis verifiers for the construction and the simplicity
// lemma, and the rank-propagation formula for diagonal partial maps.

#ifndef MVS_SYSTEM_HPP
#define MVS_SYSTEM_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mvs/sequence.hpp"

namespace mvs {

struct SeedSpace {
  long dim = 0;
  bool solid = false;
  bool contractible = false;
};

using Matrix = std::vector<std::vector<Int>>;  // row-major, m x m

// Multiplicity matrices mu(n), n >= 1: either the symmetric two-seed form
// [[l-c, c], [c, l-c]] driven by two sequences, or explicit per-level tables
// (declared-finite).
struct MuSpec {
  enum class Kind { SymmetricTwoSeed, Explicit };
  Kind kind = Kind::Explicit;
  SeqPtr l, c;                 // SymmetricTwoSeed
  std::vector<Matrix> tables;  // Explicit; tables[n-1] is mu(n)

  Matrix at(std::size_t n, std::size_t m) const;
};

class SystemDescriptor {
 public:
  long m = 0;
  std::vector<SeedSpace> seeds;
  std::vector<SeqPtr> d;
  MuSpec mu;
  std::vector<Int> r0;
  bool diagonal = true;

  // Structural validation (sizes and positivity); throws descriptor_error.
  void validate_shape() const;

  bool is_symmetric_two_seed() const;

  // Exact level values; materialize lazily and cache per descriptor instance
  // (internally synchronized).
  const std::vector<Int>& r(std::size_t n) const;
  const std::vector<Int>& s(std::size_t n) const;
  // Only for symmetric two-seed descriptors.
  const Int& r_prime(std::size_t n) const;

  nlohmann::json to_json() const;
  static SystemDescriptor from_json(const nlohmann::json& j, SequenceRegistry& reg,
                                    std::size_t max_term_bits = kDefaultMaxTermBits);

 private:
  // Level cache is shared across copies of the descriptor (the underlying
  // sequences are shared anyway) and internally synchronized.
  struct LevelCache {
    std::mutex mu;
    std::deque<std::vector<Int>> r;  // r[n] = matrix sizes at level n
    std::deque<std::vector<Int>> s;
    std::deque<Int> rp;
  };

  void ensure_levels_locked(std::size_t n) const;

  std::shared_ptr<LevelCache> cache_ = std::make_shared<LevelCache>();
};

struct LevelData {
  std::size_t n = 0;
  std::vector<Int> r;
  std::vector<Int> s;
  std::optional<Int> r_prime;
};

// Exact recursion results for levels 0..N.
std::vector<LevelData> compute_levels(const SystemDescriptor& desc, std::size_t N);

// ---------------------------------------------------------------------------
// Hypothesis verifiers
// ---------------------------------------------------------------------------

struct Violation {
  std::string condition;  // human-readable statement of the violated condition
  std::size_t n = 0;
  std::size_t j = 0;
  std::size_t k = 0;
};

struct ConstructionReport {
  std::vector<Violation> violations;
  // Growth condition (r_j(n) -> infinity) per seed: witnessed within depth N
  // means every earlier value is strictly exceeded later; otherwise the check
  // is inconclusive (it is a limit statement).
  std::vector<bool> growth_witnessed;
  // Levels actually examined; less than the requested N when the bit budget
  // or a declared-finite table cuts materialization short.
  std::size_t depth_checked = 0;
  bool ok() const { return violations.empty(); }
};

ConstructionReport verify_construction(const SystemDescriptor& desc, std::size_t N);

struct SimplicityResult {
  bool ok = true;
  std::optional<Violation> first_failure;
  std::size_t depth_checked = 0;
};

// True iff for all n <= N: every mu entry >= 1, mu_{j,j}(n) >= d_j(n), and
// for single-seed systems additionally mu_{1,1}(n) >= d_1(n) + 1.
SimplicityResult verify_simplicity_hypotheses(const SystemDescriptor& desc, std::size_t N);

// ---------------------------------------------------------------------------
// Rank propagation
// ---------------------------------------------------------------------------

// Returns sum_j rho_j * rank_j for a diagonal partial map with multiplicities
// rho_j from blocks of sizes k_j into a block of size l = sum_j k_j rho_j.
// When every rank_j lies in (alpha*k_j, beta*k_j), the result lies in
// (alpha*l, beta*l).
Int rank_propagate(const std::vector<Int>& rho, const std::vector<Int>& sizes,
                   const Int& l, const std::vector<Int>& ranks);

}  // namespace mvs

#endif  // MVS_SYSTEM_HPP
