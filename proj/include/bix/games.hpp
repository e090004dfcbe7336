#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bix/issuance.hpp"

namespace bix {

enum class GameKind { SCL, STS, MIDCHAIN };

struct GameResult {
  GameKind game;
  bool adversary_won = false;
  CertificateChain forged;
  /// Name of the check that rejected the forgery; "accepted" when the
  /// verifier let it through; "forfeit: ..." when the output broke the
  /// game's structural constraints.
  std::string outcome;
};

/// Attempts to lengthen the chain without the tail owner's secret key.
class SclStrategy {
 public:
  virtual ~SclStrategy() = default;
  virtual std::string name() const = 0;
  virtual CertificateChain forge(const CertificateChain& chain,
                                 Rng& rng) const = 0;
};

/// Attempts to alter the Subject of c_i in a chain truncated after i.
class StsStrategy {
 public:
  virtual ~StsStrategy() = default;
  virtual std::string name() const = 0;
  virtual CertificateChain forge(const CertificateChain& chain,
                                 size_t target_index, Rng& rng) const = 0;
};

std::vector<std::unique_ptr<SclStrategy>> bundled_scl_strategies();
std::vector<std::unique_ptr<StsStrategy>> bundled_sts_strategies(
    size_t collision_budget = 1u << 20);

/// Exhaustive secret-key search; only feasible against the toy curve. These
/// win, proving the referees can report a genuine break.
std::unique_ptr<SclStrategy> brute_force_scl_strategy();
std::unique_ptr<StsStrategy> brute_force_sts_strategy();

GameResult play_scl_game(const CertificateChain& chain,
                         const Certificate& trusted_root,
                         const SclStrategy& adversary, Rng& rng);

/// target_index must satisfy 1 <= i <= n-2.
GameResult play_sts_game(const CertificateChain& chain,
                         const Certificate& trusted_root, size_t target_index,
                         const StsStrategy& adversary, Rng& rng);

/// The collusion attack: members i and j (j > i+1 > i > 0) rewrite every
/// Subject strictly between them with attacker-generated keys. The result
/// passes chain verification; only a party holding the original chain can
/// notice, via detect_fork.
CertificateChain midchain_alter_attack(const CertificateChain& chain, size_t i,
                                       size_t j, const KeyPair& keys_i,
                                       const KeyPair& keys_j,
                                       const std::vector<Bytes>& new_bix_ids,
                                       Rng& rng);

struct BatchStats {
  size_t runs = 0;
  size_t wins = 0;
};

/// Independent seeded game runs; parallel across seeds when built with
/// OpenMP and `parallel` is set.
BatchStats run_scl_batch(const SclStrategy& adversary,
                         const SchemeHandle& scheme, size_t chain_len,
                         size_t runs, uint64_t seed0, bool parallel);
BatchStats run_sts_batch(const StsStrategy& adversary,
                         const SchemeHandle& scheme, size_t chain_len,
                         size_t target_index, size_t runs, uint64_t seed0,
                         bool parallel);

}  // namespace bix
