#include "bix/chain.hpp"

#include <set>

#include "bix/errors.hpp"

namespace bix {

namespace {

bool certs_equal(const Certificate& a, const Certificate& b,
                 const SchemeHandle& scheme) {
  return encode_certificate(a, scheme) == encode_certificate(b, scheme);
}

/// Roots are compared on their invariant part: an honest root acquires
/// next-subject fields once the second member joins.
bool root_matches(const Certificate& root, const Certificate& trusted,
                  const SchemeHandle& scheme) {
  return certs_equal(strip_next_fields(root), strip_next_fields(trusted),
                     scheme);
}

struct Checker {
  const CertificateChain& chain;
  const SchemeHandle& scheme;

  std::optional<CheckFailure> structural() const {
    const auto& certs = chain.certificates;
    if (certs.empty()) return CheckFailure{0, "empty chain"};
    std::set<Bytes> ids;
    for (size_t i = 0; i < certs.size(); ++i) {
      if (!ids.insert(certs[i].subject.bix_id).second)
        return CheckFailure{i, "duplicate subject bix id"};
    }
    return std::nullopt;
  }

  std::optional<CheckFailure> at(size_t i) const {
    const auto& certs = chain.certificates;
    const Certificate& c = certs[i];
    const size_t n = certs.size();
    if (c.header.sequence != i)
      return CheckFailure{i, "sequence number mismatch"};
    if (i == n - 1) {
      if (!c.is_tail_form()) return CheckFailure{i, "tail not in tail form"};
    } else {
      if (!c.is_complete_form())
        return CheckFailure{i, "non-tail certificate incomplete"};
    }
    if (i == 0) {
      if (!blocks_equal(c.issuer, c.subject))
        return CheckFailure{i, "root issuer differs from subject"};
    } else {
      if (c.issuer.bix_id == c.subject.bix_id)
        return CheckFailure{i, "non-root certificate self-issued"};
      if (!blocks_equal(c.issuer, certs[i - 1].subject))
        return CheckFailure{i, "issuer does not match previous subject"};
      if (!certs[i - 1].next_subject ||
          !blocks_equal(*certs[i - 1].next_subject, c.subject))
        return CheckFailure{i, "previous next-subject does not match subject"};
    }
    if (!verify_certificate(c, scheme))
      return CheckFailure{i, "certificate checks failed"};
    if (i < n - 1) {
      if (!verify_subject_signature(*c.next_subject, *c.next_subject_signature,
                                    c.next_subject->public_key, scheme))
        return CheckFailure{i, "next-subject signature invalid"};
      Bytes msg = forward_message(c.header, c.subject, *c.next_subject, scheme);
      if (!ecdsa_verify(msg, c.forward_cross->first, c.subject.public_key,
                        scheme))
        return CheckFailure{i, "forward cross first component invalid"};
      if (!ecdsa_verify(msg, c.forward_cross->second,
                        c.next_subject->public_key, scheme))
        return CheckFailure{i, "forward cross second component invalid"};
    }
    return std::nullopt;
  }
};

}  // namespace

bool verify_certificate(const Certificate& cert, const SchemeHandle& scheme) {
  try {
    if (!verify_subject_signature(cert.subject, cert.subject_signature,
                                  cert.subject.public_key, scheme))
      return false;
    if (!verify_subject_signature(cert.issuer, cert.issuer_signature,
                                  cert.issuer.public_key, scheme))
      return false;
    Bytes msg = backward_message(cert.header, cert.issuer, cert.subject, scheme);
    if (!ecdsa_verify(msg, cert.backward_cross.first, cert.issuer.public_key,
                      scheme))
      return false;
    if (!ecdsa_verify(msg, cert.backward_cross.second, cert.subject.public_key,
                      scheme))
      return false;
    return true;
  } catch (const std::exception&) {
    return false;  // the verifier never errors
  }
}

std::optional<CheckFailure> verify_chain_explain(
    const CertificateChain& chain, const Certificate& trusted_root,
    Direction direction) {
  try {
    Checker checker{chain, chain.scheme};
    if (auto f = checker.structural()) return f;
    if (!root_matches(chain.certificates.front(), trusted_root, chain.scheme))
      return CheckFailure{0, "root differs from trusted root"};
    const size_t n = chain.certificates.size();
    if (direction == Direction::Forward) {
      for (size_t i = 0; i < n; ++i)
        if (auto f = checker.at(i)) return f;
    } else {
      for (size_t i = n; i-- > 0;)
        if (auto f = checker.at(i)) return f;
    }
    return std::nullopt;
  } catch (const std::exception&) {
    return CheckFailure{0, "malformed input"};
  }
}

bool verify_chain(const CertificateChain& chain, const Certificate& trusted_root,
                  Direction direction) {
  return !verify_chain_explain(chain, trusted_root, direction).has_value();
}

bool verify_chain_parallel(const CertificateChain& chain,
                           const Certificate& trusted_root) {
  try {
    Checker checker{chain, chain.scheme};
    if (checker.structural()) return false;
    if (!root_matches(chain.certificates.front(), trusted_root, chain.scheme))
      return false;
    const long n = static_cast<long>(chain.certificates.size());
    bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
    for (long i = 0; i < n; ++i) {
      bool good;
      try {
        good = !checker.at(static_cast<size_t>(i)).has_value();
      } catch (const std::exception&) {
        good = false;
      }
      ok = ok && good;
    }
    return ok;
  } catch (const std::exception&) {
    return false;
  }
}

CertificateChain append_certificate(const CertificateChain& chain,
                                    const Certificate& completed_tail,
                                    const Certificate& new_tail) {
  if (chain.certificates.empty())
    throw EncodingError("append: chain has no tail to complete");
  const SchemeHandle& scheme = chain.scheme;
  const Certificate& old_tail = chain.certificates.back();
  if (!completed_tail.is_complete_form())
    throw EncodingError("append: completed tail is missing next-subject fields");
  if (!new_tail.is_tail_form())
    throw EncodingError("append: new tail must be in tail form");
  if (!certs_equal(strip_next_fields(completed_tail), old_tail, scheme))
    throw EncodingError("append: completed tail alters fields beyond the absent ones");
  if (new_tail.header.sequence != chain.certificates.size())
    throw EncodingError("append: new tail sequence number mismatch");
  if (!blocks_equal(new_tail.issuer, old_tail.subject))
    throw EncodingError("append: new tail issuer does not match old subject");
  if (!blocks_equal(*completed_tail.next_subject, new_tail.subject))
    throw EncodingError("append: completed tail next-subject does not match new subject");
  CertificateChain out = chain;
  out.certificates.back() = completed_tail;
  out.certificates.push_back(new_tail);
  return out;
}

std::optional<size_t> detect_fork(const CertificateChain& local,
                                  const CertificateChain& received) {
  const SchemeHandle& scheme = local.scheme;
  if (local.certificates.empty() || received.certificates.empty())
    throw ParameterError("detect_fork: empty chain");
  if (!root_matches(local.certificates.front(), received.certificates.front(),
                    scheme))
    throw ParameterError("detect_fork: chains have different roots");
  // Certificates are compared on their backward-complete part: the
  // next-subject fields describe the successor and legitimately change when
  // a chain is extended, so they never count as divergence on their own.
  const size_t common =
      std::min(local.certificates.size(), received.certificates.size());
  for (size_t i = 0; i < common; ++i) {
    if (!certs_equal(strip_next_fields(local.certificates[i]),
                     strip_next_fields(received.certificates[i]), scheme))
      return i;
  }
  return std::nullopt;
}

Bytes encode_chain(const CertificateChain& chain) {
  Bytes out = {'B', 'I', 'X', 'C', 0x01};
  out.push_back(static_cast<uint8_t>(chain.scheme.hash_id));
  out.push_back(static_cast<uint8_t>(chain.scheme.sig_id));
  if (chain.certificates.size() > 0xffffffffu)
    throw EncodingError("chain too long");
  append_u32_be(out, static_cast<uint32_t>(chain.certificates.size()));
  for (const Certificate& c : chain.certificates) {
    Bytes enc = encode_certificate(c, chain.scheme);
    append_u32_be(out, static_cast<uint32_t>(enc.size()));
    append(out, enc);
  }
  return out;
}

CertificateChain decode_chain(ByteView data) {
  if (data.size() < 11) throw DecodeError("chain file truncated");
  if (!(data[0] == 'B' && data[1] == 'I' && data[2] == 'X' && data[3] == 'C'))
    throw DecodeError("bad chain file magic");
  if (data[4] != 0x01) throw DecodeError("unsupported chain format version");
  CertificateChain chain;
  switch (data[5]) {
    case 1: chain.scheme.hash_id = HashId::Sha256; break;
    case 2: chain.scheme.hash_id = HashId::Trunc8; break;
    default: throw DecodeError("unknown hash scheme id");
  }
  switch (data[6]) {
    case 1: chain.scheme.sig_id = SigId::ToyF17; break;
    case 2: chain.scheme.sig_id = SigId::P256; break;
    default: throw DecodeError("unknown signature scheme id");
  }
  size_t pos = 7;
  auto take_u32 = [&](const char* what) {
    if (pos + 4 > data.size()) throw DecodeError(std::string("chain file truncated: ") + what);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | data[pos++];
    return v;
  };
  uint32_t count = take_u32("count");
  chain.certificates.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    uint32_t len = take_u32("certificate length");
    if (pos + len > data.size())
      throw DecodeError("chain file truncated: certificate body");
    chain.certificates.push_back(
        decode_certificate(data.subspan(pos, len), chain.scheme));
    pos += len;
  }
  if (pos != data.size()) throw DecodeError("trailing bytes in chain file");
  return chain;
}

}  // namespace bix
