#pragma once

#include <optional>
#include <vector>

#include "bix/certificate.hpp"

namespace bix {

enum class Direction { Forward, Backward };

struct CertificateChain {
  std::vector<Certificate> certificates;
  SchemeHandle scheme;

  size_t length() const { return certificates.size(); }
};

struct CheckFailure {
  size_t index;       // certificate index the check was attributed to
  std::string check;  // name of the first violated predicate
};

/// Certificate-local checks from the exchange step: subject signature,
/// issuer signature and both backward cross components, using only material
/// carried inside the certificate.
bool verify_certificate(const Certificate& cert, const SchemeHandle& scheme);

/// Whole-chain verifier V. Total: every malformed input maps to False.
/// Forward and backward directions evaluate the same predicate set in
/// opposite iteration order.
bool verify_chain(const CertificateChain& chain, const Certificate& trusted_root,
                  Direction direction = Direction::Forward);

/// Same predicate set, reporting the first failing check in iteration order;
/// nullopt means the chain verifies.
std::optional<CheckFailure> verify_chain_explain(const CertificateChain& chain,
                                                 const Certificate& trusted_root,
                                                 Direction direction = Direction::Forward);

/// OpenMP-parallel evaluation of the per-certificate predicates. Agrees with
/// verify_chain on every input; kept separate so the serial verifier stays
/// the reference.
bool verify_chain_parallel(const CertificateChain& chain,
                           const Certificate& trusted_root);

/// Persistent append of one issuance round: the tail gets its next-subject
/// fields filled and the new tail is attached. Throws EncodingError with the
/// first violated invariant on linkage mismatch.
CertificateChain append_certificate(const CertificateChain& chain,
                                    const Certificate& completed_tail,
                                    const Certificate& new_tail);

/// Smallest index where the two chains differ byte-wise; nullopt when one is
/// a prefix-extension of the other (the completed-vs-tail form of the shared
/// tail position does not count as divergence). Throws ParameterError when
/// the roots differ.
std::optional<size_t> detect_fork(const CertificateChain& local,
                                  const CertificateChain& received);

// Chain file format: "BIXC" magic, format version byte, hash id, sig id,
// 4-byte big-endian count, then length-prefixed certificate encodings.
Bytes encode_chain(const CertificateChain& chain);
CertificateChain decode_chain(ByteView data);

}  // namespace bix
