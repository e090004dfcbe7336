#pragma once

#include <vector>

#include "bix/ec.hpp"
#include "bix/hash.hpp"
#include "bix/rng.hpp"

namespace bix {

enum class SigId : uint8_t {
  ToyF17 = 1,  // exhaustively breakable, for oracles and referee checks
  P256 = 2,    // the honest-run scheme
};

struct SchemeHandle {
  HashId hash_id = HashId::Sha256;
  SigId sig_id = SigId::P256;
};

struct KeyPair {
  Bytes secret;      // scalar in [1, n-1], big-endian, scalar_width bytes
  Bytes public_key;  // uncompressed x||y, 2 * coord_width bytes
};

struct Signature {
  Bytes r;
  Bytes s;
};

const EcGroup& curve_for(SigId id);

size_t signature_component_width(SigId id);
size_t public_key_width(SigId id);

Bytes encode_signature(const Signature& sig);
Signature decode_signature(SigId id, ByteView data);

KeyPair ecdsa_keygen(const SchemeHandle& scheme, Rng& rng);

/// Retries k when r = 0 or s = 0; gives up after 128 attempts.
Signature ecdsa_sign(ByteView message, const KeyPair& key,
                     const SchemeHandle& scheme, Rng& rng);

/// Total: malformed signatures and public keys yield false, never an error.
bool ecdsa_verify(ByteView message, const Signature& sig, ByteView public_key,
                  const SchemeHandle& scheme);

/// Existential-forgery referee: the forgery wins iff its message was never
/// queried and the signature verifies.
bool dss_game_referee(ByteView message, const Signature& sig,
                      const std::vector<Bytes>& queried, ByteView public_key,
                      const SchemeHandle& scheme);

}  // namespace bix
