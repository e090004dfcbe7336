#include "bix/issuance.hpp"

#include "bix/errors.hpp"

namespace bix {

namespace {

const char* kFixtureDate = "2026-01-01";

bool set_reason(std::string* out, const char* reason) {
  if (out) *out = reason;
  return false;
}

}  // namespace

Identity make_identity(Bytes bix_id, const SchemeHandle& scheme, Rng& rng) {
  if (bix_id.size() != kBixIdLen)
    throw ParameterError("bix id must be exactly 20 octets");
  return Identity{std::move(bix_id), ecdsa_keygen(scheme, rng)};
}

CertRequest make_cert_request(const Identity& newcomer,
                              const SchemeHandle& scheme, Rng& rng) {
  SubjectBlock block = newcomer.subject();
  Signature sig = sign_subject(block, newcomer.keys, scheme, rng);
  return CertRequest{std::move(block), std::move(sig)};
}

std::optional<IssuerOffer> process_request(const CertificateChain& chain,
                                           const Identity& issuer,
                                           const CertRequest& request,
                                           const std::string& date, Rng& rng) {
  if (chain.certificates.empty()) return std::nullopt;
  const SchemeHandle& scheme = chain.scheme;
  const Certificate& tail = chain.certificates.back();
  // Only the current tail owner responds to requests.
  if (!blocks_equal(tail.subject, issuer.subject())) return std::nullopt;
  if (!verify_subject_signature(request.subject, request.self_signature,
                                request.subject.public_key, scheme))
    return std::nullopt;

  IssuerOffer offer;
  offer.root = chain.certificates.front();

  offer.tail.base_tail = tail;
  offer.tail.next_subject = request.subject;
  offer.tail.next_subject_signature = request.self_signature;
  Bytes fwd_msg =
      forward_message(tail.header, tail.subject, request.subject, scheme);
  offer.tail.forward_first = ecdsa_sign(fwd_msg, issuer.keys, scheme, rng);

  offer.fresh.header =
      Header{chain.certificates.size(), kProtocolVersion, date};
  offer.fresh.issuer = tail.subject;
  offer.fresh.issuer_signature =
      sign_subject(tail.subject, issuer.keys, scheme, rng);
  offer.fresh.subject = request.subject;
  offer.fresh.subject_signature = request.self_signature;
  Bytes bwd_msg = backward_message(offer.fresh.header, offer.fresh.issuer,
                                   offer.fresh.subject, scheme);
  offer.fresh.backward_first = ecdsa_sign(bwd_msg, issuer.keys, scheme, rng);
  return offer;
}

std::optional<IssuanceRound> countersign(const Identity& newcomer,
                                         const IssuerOffer& offer,
                                         const Certificate& trusted_root,
                                         const SchemeHandle& scheme, Rng& rng,
                                         std::string* abort_reason) {
  auto fail = [&](const char* reason) -> std::optional<IssuanceRound> {
    set_reason(abort_reason, reason);
    return std::nullopt;
  };
  try {
    if (encode_certificate(strip_next_fields(offer.root), scheme) !=
        encode_certificate(strip_next_fields(trusted_root), scheme))
      return fail("offer root differs from trusted root");
    if (!blocks_equal(offer.fresh.subject, newcomer.subject()))
      return fail("offer subject is not the submitted subject");
    if (!blocks_equal(offer.tail.next_subject, newcomer.subject()))
      return fail("offer next-subject is not the submitted subject");
    if (!blocks_equal(offer.fresh.issuer, offer.tail.base_tail.subject))
      return fail("offer issuer does not match the tail subject");
    if (offer.fresh.header.sequence != offer.tail.base_tail.header.sequence + 1)
      return fail("offer header sequence mismatch");
    const SubjectBlock issuer_block = offer.tail.base_tail.subject;
    Bytes fwd_msg = forward_message(offer.tail.base_tail.header, issuer_block,
                                    newcomer.subject(), scheme);
    if (!ecdsa_verify(fwd_msg, offer.tail.forward_first,
                      issuer_block.public_key, scheme))
      return fail("forward half-signature invalid");
    Bytes bwd_msg = backward_message(offer.fresh.header, issuer_block,
                                     newcomer.subject(), scheme);
    if (!ecdsa_verify(bwd_msg, offer.fresh.backward_first,
                      issuer_block.public_key, scheme))
      return fail("backward half-signature invalid");
    if (!verify_subject_signature(issuer_block, offer.fresh.issuer_signature,
                                  issuer_block.public_key, scheme))
      return fail("issuer signature invalid");

    IssuanceRound round;
    round.completed_tail = offer.tail.base_tail;
    round.completed_tail.next_subject = offer.tail.next_subject;
    round.completed_tail.next_subject_signature =
        offer.tail.next_subject_signature;
    CrossSignaturePair fwd;
    fwd.first = offer.tail.forward_first;
    fwd.second = ecdsa_sign(fwd_msg, newcomer.keys, scheme, rng);
    round.completed_tail.forward_cross = fwd;

    Certificate& fresh = round.new_tail;
    fresh.header = offer.fresh.header;
    fresh.issuer = offer.fresh.issuer;
    fresh.issuer_signature = offer.fresh.issuer_signature;
    fresh.subject = offer.fresh.subject;
    fresh.subject_signature = offer.fresh.subject_signature;
    fresh.backward_cross.first = offer.fresh.backward_first;
    fresh.backward_cross.second = ecdsa_sign(bwd_msg, newcomer.keys, scheme, rng);
    return round;
  } catch (const std::exception&) {
    return fail("malformed offer");
  }
}

CertificateChain chain_of_root(const Certificate& root,
                               const SchemeHandle& scheme) {
  CertificateChain chain;
  chain.scheme = scheme;
  chain.certificates.push_back(root);
  return chain;
}

CertificateChain grow_chain(const CertificateChain& chain,
                            const Identity& tail_owner,
                            const Identity& newcomer, const std::string& date,
                            Rng& rng) {
  CertRequest request = make_cert_request(newcomer, chain.scheme, rng);
  auto offer = process_request(chain, tail_owner, request, date, rng);
  if (!offer) throw ParameterError("grow_chain: request rejected");
  std::string reason;
  auto round = countersign(newcomer, *offer, chain.certificates.front(),
                           chain.scheme, rng, &reason);
  if (!round) throw ParameterError("grow_chain: countersign aborted: " + reason);
  return append_certificate(chain, round->completed_tail, round->new_tail);
}

HonestChain build_honest_chain(size_t n, const SchemeHandle& scheme,
                               uint64_t seed) {
  if (n == 0) throw ParameterError("chain length must be positive");
  SeededRng rng(seed);
  HonestChain out;
  auto alloc_id = [](uint64_t k) {
    Bytes id(kBixIdLen, 0);
    for (int i = 0; i < 8; ++i)
      id[kBixIdLen - 1 - i] = static_cast<uint8_t>(k >> (8 * i));
    return id;
  };
  out.members.push_back(make_identity(alloc_id(0), scheme, rng));
  out.trusted_root = make_root(out.members[0].subject(), out.members[0].keys,
                               scheme, rng, kProtocolVersion, kFixtureDate);
  out.chain = chain_of_root(out.trusted_root, scheme);
  for (size_t k = 1; k < n; ++k) {
    out.members.push_back(make_identity(alloc_id(k), scheme, rng));
    out.chain = grow_chain(out.chain, out.members[k - 1], out.members[k],
                           kFixtureDate, rng);
  }
  return out;
}

}  // namespace bix
