#include "bix/games.hpp"

#include <algorithm>

#include "bix/errors.hpp"
#include "bix/toy_curve.hpp"

namespace bix {

namespace {

const char* kForgeDate = "2026-01-01";

Bytes random_bix_id(Rng& rng) { return rng.bytes(kBixIdLen); }

Signature random_signature(const SchemeHandle& scheme, Rng& rng) {
  const EcGroup& g = curve_for(scheme.sig_id);
  Signature sig;
  do {
    sig.r = g.scalar_reduce(rng.bytes(g.scalar_width() + 8));
  } while (g.scalar_is_zero(sig.r));
  do {
    sig.s = g.scalar_reduce(rng.bytes(g.scalar_width() + 8));
  } while (g.scalar_is_zero(sig.s));
  return sig;
}

/// Exhaustive discrete log; only terminates for the toy curve.
KeyPair brute_force_keypair(const SchemeHandle& scheme, ByteView public_key) {
  if (scheme.sig_id != SigId::ToyF17)
    throw ParameterError("brute-force search is only feasible on the toy curve");
  const SmallCurveGroup& g = toy_curve_f17();
  Bytes pk(public_key.begin(), public_key.end());
  for (uint64_t d = 1; d < g.order(); ++d) {
    Bytes scalar = {static_cast<uint8_t>(d)};
    EcGroup::Point q = g.mul(scalar, g.base());
    if (encode_point(g, q) == pk) return KeyPair{scalar, pk};
  }
  throw ParameterError("no discrete log found for public key");
}

// --- SCL strategies -------------------------------------------------------

/// Reuses signatures already present in the chain for the two slots that
/// require the tail owner's secret key.
class SignatureCopySplice final : public SclStrategy {
 public:
  std::string name() const override { return "signature-copy-splice"; }

  CertificateChain forge(const CertificateChain& chain, Rng& rng) const override {
    const SchemeHandle& scheme = chain.scheme;
    const Certificate& tail = chain.certificates.back();
    Identity fresh = make_identity(random_bix_id(rng), scheme, rng);

    Certificate completed = tail;
    completed.next_subject = fresh.subject();
    completed.next_subject_signature =
        sign_subject(fresh.subject(), fresh.keys, scheme, rng);
    Bytes fwd_msg =
        forward_message(tail.header, tail.subject, fresh.subject(), scheme);
    CrossSignaturePair fwd;
    fwd.first = tail.backward_cross.second;  // by SK_{n-1}, but over old bytes
    fwd.second = ecdsa_sign(fwd_msg, fresh.keys, scheme, rng);
    completed.forward_cross = fwd;

    Certificate forged;
    forged.header = Header{chain.certificates.size(), tail.header.version,
                           tail.header.date};
    forged.issuer = tail.subject;
    forged.issuer_signature = tail.subject_signature;  // valid self-signature
    forged.subject = fresh.subject();
    forged.subject_signature =
        sign_subject(fresh.subject(), fresh.keys, scheme, rng);
    Bytes bwd_msg =
        backward_message(forged.header, forged.issuer, forged.subject, scheme);
    forged.backward_cross.first = tail.backward_cross.second;
    forged.backward_cross.second = ecdsa_sign(bwd_msg, fresh.keys, scheme, rng);

    CertificateChain out = chain;
    out.certificates.back() = completed;
    out.certificates.push_back(forged);
    return out;
  }
};

/// Fills the unforgeable slots with uniformly random in-range (r, s) pairs.
class RandomSignatureForgery final : public SclStrategy {
 public:
  std::string name() const override { return "random-signature-forgery"; }

  CertificateChain forge(const CertificateChain& chain, Rng& rng) const override {
    const SchemeHandle& scheme = chain.scheme;
    const Certificate& tail = chain.certificates.back();
    Identity fresh = make_identity(random_bix_id(rng), scheme, rng);

    Certificate completed = tail;
    completed.next_subject = fresh.subject();
    completed.next_subject_signature =
        sign_subject(fresh.subject(), fresh.keys, scheme, rng);
    Bytes fwd_msg =
        forward_message(tail.header, tail.subject, fresh.subject(), scheme);
    CrossSignaturePair fwd;
    fwd.first = random_signature(scheme, rng);
    fwd.second = ecdsa_sign(fwd_msg, fresh.keys, scheme, rng);
    completed.forward_cross = fwd;

    Certificate forged;
    forged.header = Header{chain.certificates.size(), tail.header.version,
                           tail.header.date};
    forged.issuer = tail.subject;
    forged.issuer_signature = tail.subject_signature;
    forged.subject = fresh.subject();
    forged.subject_signature =
        sign_subject(fresh.subject(), fresh.keys, scheme, rng);
    forged.backward_cross.first = random_signature(scheme, rng);
    Bytes bwd_msg =
        backward_message(forged.header, forged.issuer, forged.subject, scheme);
    forged.backward_cross.second = ecdsa_sign(bwd_msg, fresh.keys, scheme, rng);

    CertificateChain out = chain;
    out.certificates.back() = completed;
    out.certificates.push_back(forged);
    return out;
  }
};

/// Splices an existing member's certificate material into the new tail slot,
/// reusing that member's honest signatures wholesale.
class SubjectSwapReplay final : public SclStrategy {
 public:
  std::string name() const override { return "subject-swap-replay"; }

  CertificateChain forge(const CertificateChain& chain, Rng& rng) const override {
    (void)rng;
    const SchemeHandle& scheme = chain.scheme;
    const Certificate& tail = chain.certificates.back();
    const Certificate& donor = chain.certificates[1 % chain.certificates.size()];

    Certificate completed = tail;
    completed.next_subject = donor.subject;
    completed.next_subject_signature = donor.subject_signature;
    CrossSignaturePair fwd;
    fwd.first = tail.backward_cross.second;
    fwd.second = donor.backward_cross.second;
    completed.forward_cross = fwd;

    Certificate forged;
    forged.header = Header{chain.certificates.size(), tail.header.version,
                           tail.header.date};
    forged.issuer = tail.subject;
    forged.issuer_signature = tail.subject_signature;
    forged.subject = donor.subject;
    forged.subject_signature = donor.subject_signature;
    forged.backward_cross = donor.backward_cross;

    CertificateChain out = chain;
    out.certificates.back() = completed;
    out.certificates.push_back(forged);
    return out;
  }
};

class BruteForceScl final : public SclStrategy {
 public:
  std::string name() const override { return "brute-force-secret"; }

  CertificateChain forge(const CertificateChain& chain, Rng& rng) const override {
    const Certificate& tail = chain.certificates.back();
    KeyPair stolen =
        brute_force_keypair(chain.scheme, tail.subject.public_key);
    Identity tail_owner{tail.subject.bix_id, stolen};
    Identity fresh = make_identity(random_bix_id(rng), chain.scheme, rng);
    return grow_chain(chain, tail_owner, fresh, kForgeDate, rng);
  }
};

// --- STS strategies -------------------------------------------------------

/// Swaps the target subject's public key for one the adversary controls and
/// re-signs everything reachable without the honest secret keys.
class KeySubstitution final : public StsStrategy {
 public:
  std::string name() const override { return "key-substitution"; }

  CertificateChain forge(const CertificateChain& chain, size_t i,
                         Rng& rng) const override {
    const SchemeHandle& scheme = chain.scheme;
    CertificateChain out;
    out.scheme = scheme;
    out.certificates.assign(chain.certificates.begin(),
                            chain.certificates.begin() + i + 1);
    Identity fresh{chain.certificates[i].subject.bix_id,
                   ecdsa_keygen(scheme, rng)};
    SubjectBlock altered = fresh.subject();

    Certificate& prev = out.certificates[i - 1];
    prev.next_subject = altered;
    prev.next_subject_signature = sign_subject(altered, fresh.keys, scheme, rng);
    CrossSignaturePair fwd;
    fwd.first = chain.certificates[i - 1].forward_cross->first;  // old bytes
    fwd.second = ecdsa_sign(
        forward_message(prev.header, prev.subject, altered, scheme), fresh.keys,
        scheme, rng);
    prev.forward_cross = fwd;

    Certificate target = strip_next_fields(chain.certificates[i]);
    target.subject = altered;
    target.subject_signature = sign_subject(altered, fresh.keys, scheme, rng);
    Bytes bwd_msg =
        backward_message(target.header, target.issuer, altered, scheme);
    target.backward_cross.first = chain.certificates[i].backward_cross.first;
    target.backward_cross.second = ecdsa_sign(bwd_msg, fresh.keys, scheme, rng);
    out.certificates[i] = target;
    return out;
  }
};

/// Alters the target bix id and replays every original signature unchanged.
class CrossSignatureReplay final : public StsStrategy {
 public:
  std::string name() const override { return "cross-signature-replay"; }

  CertificateChain forge(const CertificateChain& chain, size_t i,
                         Rng& rng) const override {
    CertificateChain out;
    out.scheme = chain.scheme;
    out.certificates.assign(chain.certificates.begin(),
                            chain.certificates.begin() + i + 1);
    SubjectBlock altered = chain.certificates[i].subject;
    altered.bix_id = random_bix_id(rng);

    Certificate& prev = out.certificates[i - 1];
    prev.next_subject = altered;

    Certificate target = strip_next_fields(chain.certificates[i]);
    target.subject = altered;
    out.certificates[i] = target;
    return out;
  }
};

/// Bounded search for a second bix id whose Subject hashes to the target
/// digest; replays the original signatures if (and only if) one is found.
class CollisionSearch final : public StsStrategy {
 public:
  explicit CollisionSearch(size_t budget) : budget_(budget) {}

  std::string name() const override { return "hash-collision-search"; }

  CertificateChain forge(const CertificateChain& chain, size_t i,
                         Rng& rng) const override {
    const SchemeHandle& scheme = chain.scheme;
    const SubjectBlock& original = chain.certificates[i].subject;
    Digest want = hash(scheme.hash_id, canonical_bytes(original));
    SubjectBlock candidate = original;
    SubjectBlock best = original;
    bool found = false;
    for (size_t t = 0; t < budget_; ++t) {
      candidate.bix_id = random_bix_id(rng);
      if (candidate.bix_id == original.bix_id) continue;
      best = candidate;
      if (hash(scheme.hash_id, canonical_bytes(candidate)) == want) {
        found = true;
        break;
      }
    }
    CertificateChain out;
    out.scheme = scheme;
    out.certificates.assign(chain.certificates.begin(),
                            chain.certificates.begin() + i + 1);
    out.certificates[i - 1].next_subject = found ? candidate : best;
    Certificate target = strip_next_fields(chain.certificates[i]);
    target.subject = found ? candidate : best;
    out.certificates[i] = target;
    return out;
  }

 private:
  size_t budget_;
};

class BruteForceSts final : public StsStrategy {
 public:
  std::string name() const override { return "brute-force-secret"; }

  CertificateChain forge(const CertificateChain& chain, size_t i,
                         Rng& rng) const override {
    const SchemeHandle& scheme = chain.scheme;
    KeyPair issuer_keys =
        brute_force_keypair(scheme, chain.certificates[i].issuer.public_key);
    // Redraw until the key actually differs: on the toy curve a fresh key
    // collides with the original often enough to forfeit the game.
    Identity fresh{chain.certificates[i].subject.bix_id,
                   ecdsa_keygen(scheme, rng)};
    while (fresh.keys.public_key == chain.certificates[i].subject.public_key)
      fresh.keys = ecdsa_keygen(scheme, rng);
    SubjectBlock altered = fresh.subject();

    CertificateChain out;
    out.scheme = scheme;
    out.certificates.assign(chain.certificates.begin(),
                            chain.certificates.begin() + i + 1);

    Certificate& prev = out.certificates[i - 1];
    prev.next_subject = altered;
    prev.next_subject_signature = sign_subject(altered, fresh.keys, scheme, rng);
    Bytes fwd_msg = forward_message(prev.header, prev.subject, altered, scheme);
    CrossSignaturePair fwd;
    fwd.first = ecdsa_sign(fwd_msg, issuer_keys, scheme, rng);
    fwd.second = ecdsa_sign(fwd_msg, fresh.keys, scheme, rng);
    prev.forward_cross = fwd;

    Certificate target = strip_next_fields(chain.certificates[i]);
    target.subject = altered;
    target.subject_signature = sign_subject(altered, fresh.keys, scheme, rng);
    Bytes bwd_msg =
        backward_message(target.header, target.issuer, altered, scheme);
    target.backward_cross.first = ecdsa_sign(bwd_msg, issuer_keys, scheme, rng);
    target.backward_cross.second = ecdsa_sign(bwd_msg, fresh.keys, scheme, rng);
    out.certificates[i] = target;
    return out;
  }
};

}  // namespace

std::vector<std::unique_ptr<SclStrategy>> bundled_scl_strategies() {
  std::vector<std::unique_ptr<SclStrategy>> out;
  out.push_back(std::make_unique<SignatureCopySplice>());
  out.push_back(std::make_unique<RandomSignatureForgery>());
  out.push_back(std::make_unique<SubjectSwapReplay>());
  return out;
}

std::vector<std::unique_ptr<StsStrategy>> bundled_sts_strategies(
    size_t collision_budget) {
  std::vector<std::unique_ptr<StsStrategy>> out;
  out.push_back(std::make_unique<KeySubstitution>());
  out.push_back(std::make_unique<CrossSignatureReplay>());
  out.push_back(std::make_unique<CollisionSearch>(collision_budget));
  return out;
}

std::unique_ptr<SclStrategy> brute_force_scl_strategy() {
  return std::make_unique<BruteForceScl>();
}

std::unique_ptr<StsStrategy> brute_force_sts_strategy() {
  return std::make_unique<BruteForceSts>();
}

GameResult play_scl_game(const CertificateChain& chain,
                         const Certificate& trusted_root,
                         const SclStrategy& adversary, Rng& rng) {
  if (chain.certificates.size() < 2)
    throw ParameterError("SCL game needs a chain of length >= 2");
  GameResult result;
  result.game = GameKind::SCL;
  result.forged = adversary.forge(chain, rng);

  // Structural constraint: the forgery is CC plus one certificate, with only
  // the old tail's absent fields newly filled.
  const size_t n = chain.certificates.size();
  const SchemeHandle& scheme = chain.scheme;
  bool structural = result.forged.certificates.size() == n + 1;
  for (size_t k = 0; structural && k + 1 < n; ++k)
    structural = encode_certificate(result.forged.certificates[k], scheme) ==
                 encode_certificate(chain.certificates[k], scheme);
  if (structural)
    structural =
        encode_certificate(strip_next_fields(result.forged.certificates[n - 1]),
                           scheme) ==
        encode_certificate(chain.certificates[n - 1], scheme);
  if (!structural) {
    result.adversary_won = false;
    result.outcome = "forfeit: forgery is not a one-certificate extension";
    return result;
  }

  auto failure =
      verify_chain_explain(result.forged, trusted_root, Direction::Forward);
  result.adversary_won = !failure.has_value();
  result.outcome = failure ? failure->check : "accepted";
  return result;
}

GameResult play_sts_game(const CertificateChain& chain,
                         const Certificate& trusted_root, size_t target_index,
                         const StsStrategy& adversary, Rng& rng) {
  const size_t n = chain.certificates.size();
  if (target_index < 1 || target_index + 2 > n)
    throw ParameterError("STS target index must satisfy 1 <= i <= n-2");
  GameResult result;
  result.game = GameKind::STS;
  result.forged = adversary.forge(chain, target_index, rng);

  if (result.forged.certificates.size() != target_index + 1) {
    result.adversary_won = false;
    result.outcome = "forfeit: wrong forged chain length";
    return result;
  }
  const SchemeHandle& scheme = chain.scheme;
  if (blocks_equal(result.forged.certificates[target_index].subject,
                   chain.certificates[target_index].subject)) {
    result.adversary_won = false;
    result.outcome = "forfeit: target subject unchanged";
    return result;
  }
  (void)scheme;
  auto failure =
      verify_chain_explain(result.forged, trusted_root, Direction::Forward);
  result.adversary_won = !failure.has_value();
  result.outcome = failure ? failure->check : "accepted";
  return result;
}

CertificateChain midchain_alter_attack(const CertificateChain& chain, size_t i,
                                       size_t j, const KeyPair& keys_i,
                                       const KeyPair& keys_j,
                                       const std::vector<Bytes>& new_bix_ids,
                                       Rng& rng) {
  const size_t n = chain.certificates.size();
  if (!(j > i + 1 && i > 0))
    throw ParameterError("midchain attack requires j > i+1 > i > 0");
  if (j >= n) throw ParameterError("midchain attack index j out of range");
  if (new_bix_ids.size() != j - i - 1)
    throw ParameterError("midchain attack needs exactly j-i-1 new subjects");
  const SchemeHandle& scheme = chain.scheme;
  if (keys_i.public_key != chain.certificates[i].subject.public_key)
    throw ParameterError("keys_i does not match certificate i");
  if (keys_j.public_key != chain.certificates[j].subject.public_key)
    throw ParameterError("keys_j does not match certificate j");

  CertificateChain out = chain;
  std::vector<Identity> fresh;
  for (const Bytes& id : new_bix_ids)
    fresh.push_back(make_identity(id, scheme, rng));

  auto subject_at = [&](size_t k) -> SubjectBlock {
    if (k == i) return chain.certificates[i].subject;
    if (k == j) return chain.certificates[j].subject;
    return fresh[k - i - 1].subject();
  };
  auto keys_at = [&](size_t k) -> const KeyPair& {
    if (k == i) return keys_i;
    if (k == j) return keys_j;
    return fresh[k - i - 1].keys;
  };

  for (size_t k = i + 1; k < j; ++k) {
    const Header& header = chain.certificates[k].header;
    Certificate c;
    c.header = header;
    c.issuer = subject_at(k - 1);
    c.issuer_signature = sign_subject(c.issuer, keys_at(k - 1), scheme, rng);
    c.subject = subject_at(k);
    c.subject_signature = sign_subject(c.subject, keys_at(k), scheme, rng);
    Bytes bwd = backward_message(header, c.issuer, c.subject, scheme);
    c.backward_cross.first = ecdsa_sign(bwd, keys_at(k - 1), scheme, rng);
    c.backward_cross.second = ecdsa_sign(bwd, keys_at(k), scheme, rng);
    c.next_subject = subject_at(k + 1);
    c.next_subject_signature =
        sign_subject(*c.next_subject, keys_at(k + 1), scheme, rng);
    Bytes fwd = forward_message(header, c.subject, *c.next_subject, scheme);
    CrossSignaturePair pair;
    pair.first = ecdsa_sign(fwd, keys_at(k), scheme, rng);
    pair.second = ecdsa_sign(fwd, keys_at(k + 1), scheme, rng);
    c.forward_cross = pair;
    out.certificates[k] = c;
  }

  // Colluder i relinks forward to the first fresh subject.
  Certificate& ci = out.certificates[i];
  ci.next_subject = subject_at(i + 1);
  ci.next_subject_signature =
      sign_subject(*ci.next_subject, keys_at(i + 1), scheme, rng);
  Bytes fwd_i = forward_message(ci.header, ci.subject, *ci.next_subject, scheme);
  CrossSignaturePair pair_i;
  pair_i.first = ecdsa_sign(fwd_i, keys_i, scheme, rng);
  pair_i.second = ecdsa_sign(fwd_i, keys_at(i + 1), scheme, rng);
  ci.forward_cross = pair_i;

  // Colluder j relinks backward from the last fresh subject.
  Certificate& cj = out.certificates[j];
  cj.issuer = subject_at(j - 1);
  cj.issuer_signature = sign_subject(cj.issuer, keys_at(j - 1), scheme, rng);
  Bytes bwd_j = backward_message(cj.header, cj.issuer, cj.subject, scheme);
  cj.backward_cross.first = ecdsa_sign(bwd_j, keys_at(j - 1), scheme, rng);
  cj.backward_cross.second = ecdsa_sign(bwd_j, keys_j, scheme, rng);
  return out;
}

namespace {

template <typename PlayOne>
BatchStats run_batch(size_t runs, uint64_t seed0, bool parallel,
                     const PlayOne& play_one) {
  BatchStats stats;
  stats.runs = runs;
  size_t wins = 0;
  if (parallel) {
    long r;
    const long n = static_cast<long>(runs);
#pragma omp parallel for schedule(dynamic) reduction(+ : wins)
    for (r = 0; r < n; ++r)
      if (play_one(seed0 + static_cast<uint64_t>(r))) ++wins;
  } else {
    for (size_t r = 0; r < runs; ++r)
      if (play_one(seed0 + r)) ++wins;
  }
  stats.wins = wins;
  return stats;
}

}  // namespace

BatchStats run_scl_batch(const SclStrategy& adversary,
                         const SchemeHandle& scheme, size_t chain_len,
                         size_t runs, uint64_t seed0, bool parallel) {
  return run_batch(runs, seed0, parallel, [&](uint64_t seed) {
    HonestChain fixture = build_honest_chain(chain_len, scheme, seed);
    SeededRng rng(seed ^ 0x9e3779b97f4a7c15ull);
    GameResult result =
        play_scl_game(fixture.chain, fixture.trusted_root, adversary, rng);
    return result.adversary_won;
  });
}

BatchStats run_sts_batch(const StsStrategy& adversary,
                         const SchemeHandle& scheme, size_t chain_len,
                         size_t target_index, size_t runs, uint64_t seed0,
                         bool parallel) {
  return run_batch(runs, seed0, parallel, [&](uint64_t seed) {
    HonestChain fixture = build_honest_chain(chain_len, scheme, seed);
    SeededRng rng(seed ^ 0x9e3779b97f4a7c15ull);
    GameResult result = play_sts_game(fixture.chain, fixture.trusted_root,
                                      target_index, adversary, rng);
    return result.adversary_won;
  });
}

}  // namespace bix
