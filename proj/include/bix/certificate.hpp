#pragma once

#include <optional>
#include <string>

#include "bix/ecdsa.hpp"

namespace bix {

constexpr size_t kBixIdLen = 20;

struct Header {
  uint64_t sequence = 0;
  std::string version;
  std::string date;  // ISO-8601 day precision, carried opaquely

  bool operator==(const Header&) const = default;
};

struct SubjectBlock {
  Bytes bix_id;      // exactly kBixIdLen octets
  Bytes public_key;  // uncompressed x||y under the chain's scheme

  bool operator==(const SubjectBlock&) const = default;
};

struct CrossSignaturePair {
  Signature first;   // earlier party
  Signature second;  // later party

  bool operator==(const CrossSignaturePair&) const = default;
};

struct Certificate {
  Header header;
  SubjectBlock issuer;
  SubjectBlock subject;
  std::optional<SubjectBlock> next_subject;
  Signature issuer_signature;
  Signature subject_signature;
  std::optional<Signature> next_subject_signature;
  CrossSignaturePair backward_cross;
  std::optional<CrossSignaturePair> forward_cross;

  bool operator==(const Certificate&) const = default;

  /// Next_Subject, its signature and the forward cross are absent together.
  bool is_tail_form() const {
    return !next_subject && !next_subject_signature && !forward_cross;
  }
  bool is_complete_form() const {
    return next_subject && next_subject_signature && forward_cross;
  }
};

/// Injective length-prefixed encoding; the byte string behind every h(S_i).
Bytes canonical_bytes(const SubjectBlock& block);

Bytes encode_header(const Header& header);

/// H_i || h(S_{i-1}) || h(S_i)
Bytes backward_message(const Header& header, const SubjectBlock& issuer,
                       const SubjectBlock& subject, const SchemeHandle& scheme);

/// H_i || h(S_i) || h(S_{i+1})
Bytes forward_message(const Header& header, const SubjectBlock& subject,
                      const SubjectBlock& next_subject,
                      const SchemeHandle& scheme);

Signature sign_subject(const SubjectBlock& block, const KeyPair& key,
                       const SchemeHandle& scheme, Rng& rng);

bool verify_subject_signature(const SubjectBlock& block, const Signature& sig,
                              ByteView public_key, const SchemeHandle& scheme);

/// Self-issued certificate c_0: issuer and subject carry the same data and
/// both halves of the backward cross come from the one root key.
Certificate make_root(const SubjectBlock& subject, const KeyPair& key,
                      const SchemeHandle& scheme, Rng& rng,
                      const std::string& version, const std::string& date);

Bytes encode_certificate(const Certificate& cert, const SchemeHandle& scheme);
Certificate decode_certificate(ByteView data, const SchemeHandle& scheme);

bool blocks_equal(const SubjectBlock& a, const SubjectBlock& b);

/// Copy with the next-subject fields cleared: the backward-complete part
/// that stays fixed once a certificate is issued.
Certificate strip_next_fields(const Certificate& cert);

std::string render_certificate(const Certificate& cert,
                               const SchemeHandle& scheme);

}  // namespace bix
