#pragma once

#include <optional>
#include <string>

#include "bix/chain.hpp"

namespace bix {

inline constexpr const char* kProtocolVersion = "1";

struct Identity {
  Bytes bix_id;
  KeyPair keys;

  SubjectBlock subject() const { return SubjectBlock{bix_id, keys.public_key}; }
};

Identity make_identity(Bytes bix_id, const SchemeHandle& scheme, Rng& rng);

/// Step 1.a payload: the newcomer's self-signed Subject.
struct CertRequest {
  SubjectBlock subject;
  Signature self_signature;
};

CertRequest make_cert_request(const Identity& newcomer,
                              const SchemeHandle& scheme, Rng& rng);

/// c_{n-1} with its next-subject fields filled and the forward cross
/// half-signed by the issuer; the newcomer's counter-signature is pending.
struct PendingTail {
  Certificate base_tail;  // the current tail, untouched
  SubjectBlock next_subject;
  Signature next_subject_signature;
  Signature forward_first;  // by SK_{n-1} over (H_{n-1} || h(S_{n-1}) || h(S_n))
};

/// Draft c_n with the backward cross half-signed by the issuer.
struct PendingNew {
  Header header;
  SubjectBlock issuer;
  Signature issuer_signature;
  SubjectBlock subject;
  Signature subject_signature;
  Signature backward_first;  // by SK_{n-1} over (H_n || h(S_{n-1}) || h(S_n))
};

/// Step 1.d inventory: the root plus the two incomplete certificates.
struct IssuerOffer {
  Certificate root;
  PendingTail tail;
  PendingNew fresh;
};

/// Steps 1.b-1.d, run by the tail owner. Returns nullopt when the request's
/// self-signature is invalid or the issuer does not own the current tail.
std::optional<IssuerOffer> process_request(const CertificateChain& chain,
                                           const Identity& issuer,
                                           const CertRequest& request,
                                           const std::string& date, Rng& rng);

struct IssuanceRound {
  Certificate completed_tail;
  Certificate new_tail;
};

/// Step 1.e: validates the offer (root against the trust anchor, both half
/// signatures, subject echo) and adds the newcomer's two counter-signatures.
/// Returns nullopt on any failed check; abort_reason names the check.
std::optional<IssuanceRound> countersign(const Identity& newcomer,
                                         const IssuerOffer& offer,
                                         const Certificate& trusted_root,
                                         const SchemeHandle& scheme, Rng& rng,
                                         std::string* abort_reason = nullptr);

CertificateChain chain_of_root(const Certificate& root,
                               const SchemeHandle& scheme);

/// One honest issuance round end to end; throws on any protocol failure.
CertificateChain grow_chain(const CertificateChain& chain,
                            const Identity& tail_owner,
                            const Identity& newcomer, const std::string& date,
                            Rng& rng);

/// Honest fixture builder: root plus (n - 1) joins with identities derived
/// from the rng. Returns the chain and every member's identity in order.
struct HonestChain {
  CertificateChain chain;
  std::vector<Identity> members;
  Certificate trusted_root;
};
HonestChain build_honest_chain(size_t n, const SchemeHandle& scheme,
                               uint64_t seed);

}  // namespace bix
